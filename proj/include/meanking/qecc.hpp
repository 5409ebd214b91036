// SPDX-License-Identifier: Apache-2.0
//
// Code subspaces of a bipartite space H_A (x) H_K, the Knill-Laflamme
// error-detection condition P E^† E' P = lambda P, its diagonal special case
// for lifted single-factor operators, and the syndrome measurement built
// from the orthogonal image subspaces A_a = span{(I (x) L_a) C}.

#pragma once

#include <vector>

#include "meanking/linalg.hpp"

namespace meanking {

/// Subspace C of H_A (x) H_K with an orthonormal basis and cached projector.
struct CodeSubspace {
  int dim_a = 0;
  int dim_k = 0;
  std::vector<StateVector> basis;
  Operator p;

  int dim() const { return static_cast<int>(basis.size()); }
  int ambient_dim() const { return dim_a * dim_k; }
};

/// Orthonormalizes a spanning set (dependent vectors collapse) and caches
/// the projector. Throws if the span is empty or dimensions disagree.
CodeSubspace code_subspace(int dim_a, int dim_k,
                           const std::vector<StateVector>& spanning,
                           Tolerance tol = {});

/// Result of the error-detection check P E_i^† E_j P = lambda_ij P.
struct KLReport {
  Operator lambda;            // fitted lambda matrix, one row/col per error
  double max_residual = 0.0;  // worst Frobenius residual over pairs (i, j)
  bool psd = false;           // lambda positive semidefinite within tolerance
  bool passed = false;
};

/// Errors act on the full bipartite space. lambda_ij is fitted as
/// tr(P E_i^† E_j P)/dim C; the per-pair residual is the Frobenius norm of
/// P E_i^† E_j P - lambda_ij P. Passes iff all residuals are within
/// tol.abs_eps and lambda is PSD.
KLReport kl_check(const CodeSubspace& code, const std::vector<Operator>& errors,
                  Tolerance tol = {});

/// Diagonal specialization for operators on H_K lifted as I (x) L_a:
/// P (I (x) L_a)^† (I (x) L_a') P = lambda_a delta_aa' P, lambda_a >= 0.
struct C3Report {
  std::vector<double> lambda;
  double max_residual = 0.0;
  bool passed = false;
};

C3Report c3_check(const CodeSubspace& code, const std::vector<Operator>& ls,
                  Tolerance tol = {});

/// Projective measurement (P_1, ..., P_l, P_perp). Slot a < l carries the
/// projector onto A_a = span{(I (x) L_a) C}; the last slot is the
/// complement. Zero-dimensional slots keep a zero projector and are flagged
/// unreachable so outcome indices stay aligned with the error list.
struct SyndromePVM {
  std::vector<Operator> projectors;
  std::vector<std::vector<StateVector>> bases;  // orthonormal; empty for perp
  std::vector<int> subspace_dims;
  std::vector<int> label_map;  // 1-based error index per slot; 0 for perp
  std::vector<bool> unreachable;

  int outcomes() const { return static_cast<int>(projectors.size()); }
  int ambient_dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }
};

/// Builds the syndrome PVM. Throws if c3_check fails (the image subspaces
/// would not be orthogonal). The perp slot has no stored basis.
SyndromePVM syndrome_pvm(const CodeSubspace& code, const std::vector<Operator>& ls,
                         Tolerance tol = {});

struct PvmReport {
  bool ok = false;
  double worst_residual = 0.0;
};

/// Checks Hermiticity, idempotence, mutual orthogonality, and completeness
/// to the identity. Never throws; reports the worst Frobenius residual.
PvmReport pvm_validate(const std::vector<Operator>& projectors, Tolerance tol = {});
PvmReport pvm_validate(const SyndromePVM& pvm, Tolerance tol = {});

}  // namespace meanking
