// SPDX-License-Identifier: Apache-2.0

#include "meanking/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace meanking {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<int> measurement_labels(const MeasurementModel& m) {
  std::vector<int> labels;
  for (const auto& [j, ops] : m.measurements) {
    if (ops.empty())
      throw std::invalid_argument("measurement J=" + std::to_string(j) +
                                  " has no outcome operators");
    labels.push_back(j);
  }
  if (labels.empty()) throw std::invalid_argument("model has no measurements");
  return labels;
}

std::vector<double> resolve_prior(const std::vector<double>& prior,
                                  size_t measurements, const Tolerance& tol) {
  if (prior.empty())
    return std::vector<double>(measurements, 1.0 / static_cast<double>(measurements));
  if (prior.size() != measurements)
    throw std::invalid_argument("king_prior has " + std::to_string(prior.size()) +
                                " entries for " + std::to_string(measurements) +
                                " measurements");
  double total = 0.0;
  for (double q : prior) {
    if (q < 0.0) throw std::invalid_argument("king_prior has a negative entry");
    total += q;
  }
  if (std::abs(total - 1.0) > tol.abs_eps)
    throw std::invalid_argument("king_prior sums to " + std::to_string(total));
  return prior;
}

/// Everything play needs, built once per experiment.
struct Prepared {
  StateVector initial;
  std::vector<int> labels;
  std::vector<double> prior;
  SyndromePVM pvm;
};

Prepared prepare(const GameConfig& config, const Tolerance& tol) {
  const Setup& setup = config.setup;
  Prepared prep;
  prep.labels = measurement_labels(setup.model);
  prep.prior = resolve_prior(config.king_prior, prep.labels.size(), tol);
  if (setup.model.dim() != setup.code.dim_k)
    throw std::invalid_argument("measurement dimension does not match the code's king factor");

  prep.initial = config.initial_state.dim() == 0 ? setup.code.basis.at(0)
                                                 : config.initial_state;
  if (prep.initial.dim() != setup.code.ambient_dim())
    throw std::invalid_argument("initial state has dimension " +
                                std::to_string(prep.initial.dim()) + ", expected " +
                                std::to_string(setup.code.ambient_dim()));
  if (std::abs(prep.initial.norm() - 1.0) > tol.abs_eps)
    throw std::invalid_argument("initial state is not normalized");
  if (!config.allow_off_code) {
    StateVector off = prep.initial - setup.code.p.apply(prep.initial);
    if (off.norm() > tol.abs_eps)
      throw std::invalid_argument("initial state lies outside the code subspace");
  }
  prep.pvm = syndrome_pvm(setup.code, setup.ls, tol);
  return prep;
}

/// Walk the cumulative distribution; returns the 0-based cell for u drawn
/// uniformly from [0, total).
int pick_cell(const std::vector<double>& weights, double total, double u) {
  const double target = u * total;
  double acc = 0.0;
  int last_positive = -1;
  for (size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    last_positive = static_cast<int>(k);
    acc += weights[k];
    if (target < acc) return static_cast<int>(k);
  }
  return last_positive;  // u rounded onto the top edge
}

RoundRecord play_prepared(const GameConfig& config, const Prepared& prep,
                          SplitMix64& rng, const Tolerance& tol) {
  RoundRecord rec;
  double prior_total = 0.0;
  for (double q : prep.prior) prior_total += q;
  const int jcell = pick_cell(prep.prior, prior_total, rng.next_double());
  rec.j = prep.labels[static_cast<size_t>(jcell)];

  auto [i, post] = born_sample(
      prep.initial, config.setup.model.measurements.at(rec.j), rng, tol);
  rec.i = i;

  auto [slot, after] = born_sample(post, prep.pvm.projectors, rng, tol);
  (void)after;
  rec.a = prep.pvm.label_map.at(static_cast<size_t>(slot - 1));
  rec.guess = estimate(rec.j, rec.a, config.setup.family);
  rec.success = rec.guess == rec.i;
  return rec;
}

}  // namespace

SplitMix64 round_rng(std::uint64_t seed, std::uint64_t round_index) {
  return SplitMix64(mix64(seed + (round_index + 1) * 0x9E3779B97F4A7C15ULL));
}

std::vector<double> born_probabilities(const StateVector& state,
                                       const std::vector<Operator>& ops) {
  if (ops.empty()) throw std::invalid_argument("no measurement operators");
  std::vector<double> p;
  p.reserve(ops.size());
  for (const auto& op : ops) {
    if (!op.square() || op.rows() == 0 || state.dim() % op.rows() != 0)
      throw std::invalid_argument("operator dimension does not divide the state's");
    StateVector w = lift_apply(op, state, state.dim() / op.rows());
    const double n = w.norm();
    p.push_back(n * n);
  }
  return p;
}

std::pair<int, StateVector> born_sample(const StateVector& state,
                                        const std::vector<Operator>& ops,
                                        SplitMix64& rng, Tolerance tol) {
  const std::vector<double> p = born_probabilities(state, ops);
  double total = 0.0;
  for (double q : p) total += q;
  if (total <= tol.zero_eps)
    throw std::invalid_argument("every outcome probability vanishes");
  const int cell = pick_cell(p, total, rng.next_double());
  const Operator& op = ops[static_cast<size_t>(cell)];
  StateVector post =
      lift_apply(op, state, state.dim() / op.rows()).normalized();
  return {cell + 1, post};
}

int estimate(int j, int a, const IndexFamily& family) {
  if (a == 0) return 0;
  int found = 0;
  for (const auto& [ji, set] : family.sets) {
    if (ji.first != j) continue;
    if (std::find(set.begin(), set.end(), a) == set.end()) continue;
    if (found != 0)
      throw std::invalid_argument(
          "estimation is ambiguous: J=" + std::to_string(j) + ", a=" +
          std::to_string(a) + " appears in the sets of i=" +
          std::to_string(found) + " and i=" + std::to_string(ji.second));
    found = ji.second;
  }
  return found;
}

RoundRecord play_round(const GameConfig& config, SplitMix64& rng, Tolerance tol) {
  const Prepared prep = prepare(config, tol);
  return play_prepared(config, prep, rng, tol);
}

ExperimentStats run_experiment(const GameConfig& config, int threads,
                               Tolerance tol) {
  if (config.rounds < 1) throw std::invalid_argument("rounds must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be positive");
  const Prepared prep = prepare(config, tol);

  using Counts = std::map<std::tuple<int, int, int>, long long>;
  const long long rounds = config.rounds;
  const int workers =
      static_cast<int>(std::min<long long>(threads, rounds));
  std::vector<Counts> counts(static_cast<size_t>(workers));
  std::vector<long long> hits(static_cast<size_t>(workers), 0);

  auto work = [&](int w) {
    // Static block partition; every round derives its own substream, so the
    // partition cannot change any outcome.
    const long long lo = rounds * w / workers;
    const long long hi = rounds * (w + 1) / workers;
    for (long long r = lo; r < hi; ++r) {
      SplitMix64 rng = round_rng(config.seed, static_cast<std::uint64_t>(r));
      RoundRecord rec = play_prepared(config, prep, rng, tol);
      ++counts[static_cast<size_t>(w)][{rec.j, rec.i, rec.a}];
      if (rec.success) ++hits[static_cast<size_t>(w)];
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  ExperimentStats stats;
  stats.seed = config.seed;
  stats.rounds = rounds;
  long long total_hits = 0;
  for (int w = 0; w < workers; ++w) {
    total_hits += hits[static_cast<size_t>(w)];
    for (const auto& [key, n] : counts[static_cast<size_t>(w)])
      stats.joint_counts[key] += n;
  }
  stats.success_rate =
      static_cast<double>(total_hits) / static_cast<double>(rounds);

  JointDistribution empirical;
  for (const auto& [key, n] : stats.joint_counts)
    empirical.p[key] = static_cast<double>(n) / static_cast<double>(rounds);
  stats.conditional_entropy = conditional_entropy(empirical);
  stats.exact_joint =
      exact_joint(config.setup, config.king_prior, prep.initial, tol);
  return stats;
}

JointDistribution exact_joint(const Setup& setup, const std::vector<double>& prior,
                              const StateVector& initial_state, Tolerance tol) {
  const std::vector<int> labels = measurement_labels(setup.model);
  const std::vector<double> weights = resolve_prior(prior, labels.size(), tol);
  const StateVector phi =
      initial_state.dim() == 0 ? setup.code.basis.at(0) : initial_state;
  if (phi.dim() != setup.code.ambient_dim())
    throw std::invalid_argument("initial state dimension does not match the code");
  const SyndromePVM pvm = syndrome_pvm(setup.code, setup.ls, tol);

  JointDistribution dist;
  for (size_t jk = 0; jk < labels.size(); ++jk) {
    const int j = labels[jk];
    const auto& ops = setup.model.measurements.at(j);
    for (size_t ik = 0; ik < ops.size(); ++ik) {
      const Operator& m = ops[ik];
      if (!m.square() || m.rows() == 0 || phi.dim() % m.rows() != 0)
        throw std::invalid_argument("operator dimension does not divide the state's");
      StateVector w = lift_apply(m, phi, phi.dim() / m.rows());
      for (int slot = 0; slot < pvm.outcomes(); ++slot) {
        const double q = std::max(
            0.0, inner(w, pvm.projectors[static_cast<size_t>(slot)].apply(w)).real());
        const int a = pvm.label_map[static_cast<size_t>(slot)];
        dist.p[{j, static_cast<int>(ik) + 1, a}] = weights[jk] * q;
      }
    }
  }
  return dist;
}

double conditional_entropy(const JointDistribution& dist) {
  // Pr(J, a), marginalized over the king's outcome.
  std::map<std::pair<int, int>, double> marginal;
  for (const auto& [key, p] : dist.p)
    marginal[{std::get<0>(key), std::get<2>(key)}] += p;
  double h = 0.0;
  for (const auto& [key, p] : dist.p) {
    if (p <= 0.0) continue;
    const double q = marginal[{std::get<0>(key), std::get<2>(key)}];
    h -= p * std::log2(p / q);
  }
  return h;
}

double exact_success(const JointDistribution& dist, const IndexFamily& family) {
  double total = 0.0;
  for (const auto& [key, p] : dist.p) {
    if (p <= 0.0) continue;
    if (estimate(std::get<0>(key), std::get<2>(key), family) == std::get<1>(key))
      total += p;
  }
  return total;
}

IndexFamily support_family(const JointDistribution& dist, Tolerance tol) {
  IndexFamily family;
  for (const auto& [key, p] : dist.p) {
    if (p <= tol.zero_eps) continue;
    family.sets[{std::get<0>(key), std::get<1>(key)}].push_back(std::get<2>(key));
  }
  for (auto& [ji, set] : family.sets) std::sort(set.begin(), set.end());
  return family;
}

}  // namespace meanking
