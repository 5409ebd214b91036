// SPDX-License-Identifier: Apache-2.0
//
// Certification and construction of retrodiction-game solutions. A solution
// is a triple (code, measurement model, error operators + index family)
// satisfying, with respect to a Schmidt state s:
//   (c1) each measurement operator decomposes over its index set,
//        M_i^(J) = Sum_{a in X^(J,i)} f_a L_a, with equality on the code;
//   (c2) within each J the index sets are pairwise disjoint;
//   (c3) the lifted operators I (x) L_a map the code into mutually
//        orthogonal subspaces.
// Also provides the reverse derivation from a rank-1 PVM, the generative
// construction from an orthonormal basis plus Latin squares, and the
// builtin numeric fixtures.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "meanking/isomap.hpp"
#include "meanking/linalg.hpp"
#include "meanking/qecc.hpp"

namespace meanking {

/// Measurement label J -> ordered outcome operators (M_1^(J), ..., M_k^(J)).
/// Outcome index i is 1-based; position i-1 in the vector.
struct MeasurementModel {
  std::map<int, std::vector<Operator>> measurements;

  /// Operator dimension, 0 when empty.
  int dim() const;
};

struct ModelReport {
  bool ok = false;
  std::map<int, double> residuals;  // per J: ||Sum_i M_i^† M_i - I||_F
};

/// Completeness check Sum_i M_i^† M_i = I for every J.
ModelReport model_validate(const MeasurementModel& m, Tolerance tol = {});

using JI = std::pair<int, int>;

/// (J, i) -> sorted list of 1-based error operator indices a.
struct IndexFamily {
  std::map<JI, std::vector<int>> sets;
};

struct FamilyReport {
  bool disjoint = false;
  std::vector<std::string> violations;
};

/// Condition (c2): within each J, outcome index sets must be disjoint.
FamilyReport family_disjoint(const IndexFamily& family);

/// (J, i, a) -> coefficient f^(J,i)_a, stored only for nonzero entries.
struct CoefficientTable {
  std::map<std::tuple<int, int, int>, cx> values;
};

struct C1Report {
  CoefficientTable coeffs;
  std::map<JI, double> residual_on_code;  // ||(I (x) M_i^(J)) P - Sum f_a (I (x) L_a) P||_F
  std::map<JI, double> residual_global;   // ||M_i^(J) - Sum f_a L_a||_F, informational
  std::vector<std::string> diagnostics;   // unlisted overlaps, zero-coefficient members
  double max_residual = 0.0;              // worst residual_on_code
  bool ok = false;
};

/// Solves coefficients by Sc-projection, f_a = <L_a|M_i^(J)>_Sc / <L_a|L_a>_Sc,
/// and reports per-(J,i) residuals of the decomposition restricted to the
/// code. Overlaps with operators missing from X^(J,i) are surfaced as
/// diagnostics; the check fails only if a code-restricted residual does.
C1Report c1_decompose(const CodeSubspace& code, const MeasurementModel& m,
                      const std::vector<Operator>& ls, const IndexFamily& family,
                      const SchmidtState& s, Tolerance tol = {});

struct SolutionCertificate {
  C1Report c1;
  bool c2_ok = false;
  std::vector<std::string> c2_violations;
  C3Report c3;
  ModelReport model;  // informational; not part of the verdict
  std::vector<double> lambda;
  std::vector<double> sc_norms;  // <L_a|L_a>_Sc per operator
  std::optional<double> alpha;   // common Sc-norm^2 when the norms agree
  bool passed = false;           // c1 && c2 && c3
};

/// Runs all three conditions and bundles the verdict.
SolutionCertificate certify(const CodeSubspace& code, const MeasurementModel& m,
                            const std::vector<Operator>& ls, const IndexFamily& family,
                            const SchmidtState& s, Tolerance tol = {});

struct DerivedSolution {
  std::vector<Operator> ls;
  IndexFamily family;
  CoefficientTable coeffs;
  double alpha = 0.0;
  bool c2_ok = false;
  std::vector<std::string> c2_violations;
};

/// Reverse derivation from a rank-1 PVM given by an orthonormal basis of the
/// bipartite space: L_a is the operator whose (scaled) image is |p_a>, with
/// common Sc-norm^2 alpha = 1/d for maximal s and min_j eta_j^2 otherwise.
/// X^(J,i) collects the operators overlapping M_i^(J); if the PVM/model pair
/// is not a genuine solution the resulting c2 violations are reported, not
/// raised. Throws when pvm_vectors are not orthonormal or the model is not
/// a measurement.
DerivedSolution derive_from_pvm(const SchmidtState& s,
                                const std::vector<StateVector>& pvm_vectors,
                                const MeasurementModel& m, Tolerance tol = {});

/// d x d array over symbols 1..d.
struct LatinSquare {
  int d = 0;
  std::vector<std::vector<int>> entries;
};

/// True iff every row and column is a permutation of 1..d. Throws on
/// structural problems (wrong shape, out-of-range entries).
bool latin_validate(const LatinSquare& sq);

/// entries[i-1][l-1] = ((i + l - 2 + shift) mod d) + 1.
LatinSquare cyclic_square(int d, int shift = 0);

/// entries[i-1][l-1] = ((i - l) mod d) + 1.
LatinSquare anticyclic_square(int d);

/// Index family over a in {1..d^2} with the pair (j, k) flattened as
/// a = (j-1)d + k. Square number q becomes label J=q with
/// X^(q,i) = {(l, sq_q^(i)(l)) : l}; the optional row family J=0 has
/// X^(0,i) = {(i, l) : l}. Per-J disjointness follows from the Latin
/// property and is guaranteed for every output.
IndexFamily index_family_from_squares(int d, const std::vector<LatinSquare>& squares,
                                      bool include_j0);

/// L_(i,j) = (1/sqrt(d)) |f_j><f_i| for an orthonormal basis {f_i}, flattened
/// in the same (j, k) -> (j-1)d + k order. HS Gram is (1/d) I_{d^2} and
/// Sum L^† L = I.
std::vector<Operator> error_basis_from_onb(const std::vector<StateVector>& basis);

/// M_i^(J) = Sum_{a in X^(J,i)} L_a. Outcome indices per J must be the
/// contiguous range 1..k_J.
MeasurementModel measurements_from_family(const std::vector<Operator>& ls,
                                          const IndexFamily& family);

/// A complete game setup: the Schmidt state fixing the operator inner
/// product, the code, the king's model, the error operators, and the index
/// family.
struct Setup {
  std::string name;
  SchmidtState schmidt;
  CodeSubspace code;
  MeasurementModel model;
  std::vector<Operator> ls;
  IndexFamily family;
};

/// Builtin numeric fixtures: "vaa87" (qubit, three Pauli measurements),
/// "comp3" (dimension 3, computational basis construction), "code3d"
/// (three-dimensional code, four measurements), "qubit2" (qubit, two
/// measurements). Throws on unknown names.
Setup builtin_example(const std::string& name);

}  // namespace meanking
