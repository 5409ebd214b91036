// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo driver for the retrodiction game: the king measures one of his
// observables on the shared state, Alice measures the syndrome PVM, and the
// estimation function maps her outcome back to the king's result. Also
// computes the analytic joint distribution Pr(J, i, a), its conditional
// entropy H(I | J, A), and the exact success probability, so sampled runs
// can be checked against closed-form values.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "meanking/qecc.hpp"
#include "meanking/solutions.hpp"

namespace meanking {

/// SplitMix64: counter-based 64-bit generator. Cheap to seed, no warm-up,
/// and the finalizer is bijective, which makes per-round substreams safe.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Independent substream for one round. Distinct (seed, round) pairs map to
/// distinct start states through the bijective finalizer, so serial and
/// parallel execution see identical per-round randomness.
SplitMix64 round_rng(std::uint64_t seed, std::uint64_t round_index);

/// One play of the game.
struct GameConfig {
  Setup setup;
  StateVector initial_state;        // empty: first code basis vector
  std::vector<double> king_prior;   // over sorted J labels; empty: uniform
  std::uint64_t seed = 0;
  long long rounds = 1;
  bool allow_off_code = false;      // permit initial states outside the code
};

/// Outcome of a single round. `a` = 0 encodes Alice's complement outcome;
/// `guess` = 0 encodes an abstention (always counted as a failure).
struct RoundRecord {
  int j = 0;
  int i = 0;
  int a = 0;
  int guess = 0;
  bool success = false;
};

/// Analytic joint distribution Pr(J, i, a). Keys are (J, i, a) with a = 0
/// for the complement outcome; zero-probability cells are kept so outcome
/// indices stay aligned with the certificate's error list.
struct JointDistribution {
  std::map<std::tuple<int, int, int>, double> p;
};

/// Aggregate of `rounds` independent rounds.
struct ExperimentStats {
  std::map<std::tuple<int, int, int>, long long> joint_counts;
  double success_rate = 0.0;
  double conditional_entropy = 0.0;  // bits, from empirical frequencies
  std::optional<JointDistribution> exact_joint;
  std::uint64_t seed = 0;
  long long rounds = 0;
};

/// Outcome probabilities ||(I (x) op_k) state||^2. Operators may act on the
/// full space or on a right tensor factor whose dimension divides the
/// state's.
std::vector<double> born_probabilities(const StateVector& state,
                                       const std::vector<Operator>& ops);

/// Samples an outcome with the Born probabilities and returns the 1-based
/// outcome index plus the normalized post-measurement state. Throws if every
/// outcome probability is below tol.zero_eps.
std::pair<int, StateVector> born_sample(const StateVector& state,
                                        const std::vector<Operator>& ops,
                                        SplitMix64& rng, Tolerance tol = {});

/// The estimation function: the unique i with a in X^(J,i). Returns 0
/// (abstain) when a = 0 or no set contains a; throws if two sets match,
/// which signals a disjointness violation in the family.
int estimate(int j, int a, const IndexFamily& family);

/// Plays one round: samples J from the prior, the king's outcome via his
/// measurement, Alice's outcome via the syndrome PVM, then estimates.
RoundRecord play_round(const GameConfig& config, SplitMix64& rng,
                       Tolerance tol = {});

/// Runs config.rounds rounds, each on its own substream of config.seed.
/// The result is identical for any thread count.
ExperimentStats run_experiment(const GameConfig& config, int threads = 1,
                               Tolerance tol = {});

/// Analytic Pr(J, i, a) = P(J) <(I (x) M_i) phi| P_a |(I (x) M_i) phi>.
/// The initial state defaults to the first code basis vector and is not
/// required to lie in the code.
JointDistribution exact_joint(const Setup& setup,
                              const std::vector<double>& prior = {},
                              const StateVector& initial_state = StateVector(),
                              Tolerance tol = {});

/// H(I | J, A) in bits; zero-probability terms contribute zero.
double conditional_entropy(const JointDistribution& dist);

/// Probability that the estimation function returns the king's outcome.
double exact_success(const JointDistribution& dist, const IndexFamily& family);

/// Support sets X^(J,i) = {a : Pr(J, i, a) > tol.zero_eps}. Feeding the
/// result to family_disjoint checks the support-disjointness condition.
IndexFamily support_family(const JointDistribution& dist, Tolerance tol = {});

}  // namespace meanking
