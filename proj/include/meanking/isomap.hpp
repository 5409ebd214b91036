// SPDX-License-Identifier: Apache-2.0
//
// Schmidt states over H_A (x) H_K with dim H_A = dim H_K = d, the
// state-dependent Sc-inner product on operators, and the linear isomorphism
// between operators on H_K and bipartite vectors. The isomorphism is
// inner-product preserving: <iso(A)|iso(B)> = sc_inner(A, B).

#pragma once

#include <vector>

#include "meanking/linalg.hpp"

namespace meanking {

/// Bipartite pure state Sum_j eta_j |psi_j> (x) |phi_j> with eta_j > 0 and
/// Sum eta_j^2 = 1. basis_a spans H_A, basis_k spans H_K, both orthonormal.
struct SchmidtState {
  int d = 0;
  std::vector<double> eta;
  std::vector<StateVector> basis_a;
  std::vector<StateVector> basis_k;
  StateVector vector;  // assembled state, dim d^2

  /// True when every weight equals 1/sqrt(d) within eps.
  bool maximal(double eps = 1e-12) const;
};

/// Validates and assembles a Schmidt state. Weights must be strictly
/// positive with squares summing to 1; both bases must be orthonormal.
SchmidtState schmidt_state(const std::vector<double>& eta,
                           const std::vector<StateVector>& basis_a,
                           const std::vector<StateVector>& basis_k,
                           Tolerance tol = {});

/// Uniform weights 1/sqrt(d) over the computational basis, or over the
/// supplied basis used for both factors.
SchmidtState maximal_entangled(int d);
SchmidtState maximal_entangled(int d, const std::vector<StateVector>& basis);

/// <A|B>_Sc = d Sum_j eta_j^2 <phi_j| A^† B |phi_j>. Coincides with
/// hs_inner when s is maximal. Conjugate-linear in the first argument.
cx sc_inner(const Operator& a, const Operator& b, const SchmidtState& s);

/// L -> sqrt(d) (I (x) L) |Psi_eta>, a bipartite vector of dim d^2.
StateVector iso_forward(const Operator& l, const SchmidtState& s);

/// Unique L with iso_forward(L, s) = v. Matrix elements in the phi basis:
/// <phi_k|L|phi_j> = c_jk / (sqrt(d) eta_j) with c_jk = <psi_j (x) phi_k|v>.
Operator iso_inverse(const StateVector& v, const SchmidtState& s);

struct CompletenessReport {
  double residual = 0.0;        // ||Sum_a L_a^† L_a - Sum_j (alpha/eta_j^2)|phi_j><phi_j|||_F
  double alpha_estimate = 0.0;  // sc_inner(L_1, L_1, s), real part
  double alpha_mismatch = 0.0;  // max_a |sc_inner(L_a, L_a, s) - alpha|
};

/// Completeness relation for an Sc-orthogonal operator basis with common
/// norm^2 alpha: Sum_a L_a^† L_a = Sum_j (alpha/eta_j^2)|phi_j><phi_j|
/// (= alpha*d*I when s is maximal). Requires exactly d^2 operators, pairwise
/// Sc-orthogonal; throws naming the first failing pair otherwise. The
/// supplied alpha is cross-checked against the measured norms and any
/// discrepancy is reported, not raised.
CompletenessReport completeness_defect(const std::vector<Operator>& ls,
                                       const SchmidtState& s, double alpha,
                                       Tolerance tol = {});

}  // namespace meanking
