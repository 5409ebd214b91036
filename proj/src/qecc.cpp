// SPDX-License-Identifier: Apache-2.0

#include "meanking/qecc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace meanking {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Images of the code basis under one operator on the full space.
std::vector<StateVector> full_images(const CodeSubspace& code, const Operator& e) {
  std::vector<StateVector> out;
  out.reserve(code.basis.size());
  for (const auto& c : code.basis) out.push_back(e.apply(c));
  return out;
}

// Images of the code basis under I (x) L.
std::vector<StateVector> lifted_images(const CodeSubspace& code, const Operator& l) {
  std::vector<StateVector> out;
  out.reserve(code.basis.size());
  for (const auto& c : code.basis) out.push_back(lift_apply(l, c, code.dim_a));
  return out;
}

// Gram matrix G_rt = <u_r|v_t>. With an orthonormal code basis this equals
// the matrix of P E^† E' P restricted to C, so Frobenius residuals against
// lambda * I_n match the full-space residuals exactly.
Operator gram(const std::vector<StateVector>& u, const std::vector<StateVector>& v) {
  const int n = static_cast<int>(u.size());
  Operator g(n, n);
  for (int r = 0; r < n; ++r)
    for (int t = 0; t < n; ++t)
      g(r, t) = inner(u[static_cast<size_t>(r)], v[static_cast<size_t>(t)]);
  return g;
}

double residual_vs_scaled_identity(const Operator& g, cx lambda) {
  Operator diff = g;
  for (int k = 0; k < g.rows(); ++k) diff(k, k) -= lambda;
  return diff.frobenius_norm();
}

}  // namespace

CodeSubspace code_subspace(int dim_a, int dim_k,
                           const std::vector<StateVector>& spanning,
                           Tolerance tol) {
  require(dim_a >= 1 && dim_k >= 1, "code_subspace: factor dimensions must be positive");
  require(!spanning.empty(), "code_subspace: empty spanning set");
  for (const auto& v : spanning)
    require(v.dim() == dim_a * dim_k,
            "code_subspace: spanning vector dimension != dim_a * dim_k");

  CodeSubspace code;
  code.dim_a = dim_a;
  code.dim_k = dim_k;
  code.basis = orthonormalize(spanning, tol);
  require(!code.basis.empty(), "code_subspace: spanning set has zero span");
  code.p = projector(code.basis, tol);
  return code;
}

KLReport kl_check(const CodeSubspace& code, const std::vector<Operator>& errors,
                  Tolerance tol) {
  require(!errors.empty(), "kl_check: empty error list");
  const int n = code.dim();
  const int l = static_cast<int>(errors.size());
  for (const auto& e : errors)
    require(e.rows() == code.ambient_dim() && e.cols() == code.ambient_dim(),
            "kl_check: error operator must act on the full bipartite space");

  std::vector<std::vector<StateVector>> im;
  im.reserve(errors.size());
  for (const auto& e : errors) im.push_back(full_images(code, e));

  KLReport rep;
  rep.lambda = Operator(l, l);
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      Operator g = gram(im[static_cast<size_t>(i)], im[static_cast<size_t>(j)]);
      const cx lam = g.trace() / static_cast<double>(n);
      rep.lambda(i, j) = lam;
      rep.max_residual = std::max(rep.max_residual,
                                  residual_vs_scaled_identity(g, lam));
    }
  }

  const double eig_floor = std::max(tol.abs_eps, 1e-12);
  rep.psd = true;
  for (double e : hermitian_eigenvalues(rep.lambda))
    if (e < -eig_floor) rep.psd = false;
  rep.passed = rep.psd && rep.max_residual <= tol.abs_eps;
  return rep;
}

C3Report c3_check(const CodeSubspace& code, const std::vector<Operator>& ls,
                  Tolerance tol) {
  require(!ls.empty(), "c3_check: empty operator list");
  const int n = code.dim();
  for (const auto& l : ls)
    require(l.rows() == code.dim_k && l.cols() == code.dim_k,
            "c3_check: operator must act on the second factor");

  std::vector<std::vector<StateVector>> im;
  im.reserve(ls.size());
  for (const auto& l : ls) im.push_back(lifted_images(code, l));

  C3Report rep;
  rep.lambda.resize(ls.size(), 0.0);
  for (size_t a = 0; a < ls.size(); ++a) {
    for (size_t b = a; b < ls.size(); ++b) {
      Operator g = gram(im[a], im[b]);
      if (a == b) {
        const double lam = g.trace().real() / static_cast<double>(n);
        rep.lambda[a] = lam;
        rep.max_residual = std::max(rep.max_residual,
                                    residual_vs_scaled_identity(g, cx{lam}));
      } else {
        // Off-diagonal blocks must vanish entirely.
        rep.max_residual = std::max(rep.max_residual, g.frobenius_norm());
      }
    }
  }
  rep.passed = rep.max_residual <= tol.abs_eps;
  return rep;
}

SyndromePVM syndrome_pvm(const CodeSubspace& code, const std::vector<Operator>& ls,
                         Tolerance tol) {
  const C3Report c3 = c3_check(code, ls, tol);
  require(c3.passed,
          "syndrome_pvm: image subspaces are not orthogonal on the code "
          "(orthogonality residual " + std::to_string(c3.max_residual) + ")");

  const int dim = code.ambient_dim();
  SyndromePVM pvm;
  Operator sum = Operator::zero(dim, dim);
  int used = 0;
  for (size_t a = 0; a < ls.size(); ++a) {
    auto basis = orthonormalize(lifted_images(code, ls[a]), tol);
    Operator p = basis.empty() ? Operator::zero(dim, dim) : projector(basis, tol);
    sum += p;
    used += static_cast<int>(basis.size());
    pvm.subspace_dims.push_back(static_cast<int>(basis.size()));
    pvm.unreachable.push_back(basis.empty());
    pvm.label_map.push_back(static_cast<int>(a) + 1);
    pvm.bases.push_back(std::move(basis));
    pvm.projectors.push_back(std::move(p));
  }

  Operator perp = Operator::identity(dim) - sum;
  pvm.subspace_dims.push_back(dim - used);
  pvm.unreachable.push_back(dim - used == 0);
  pvm.label_map.push_back(0);
  pvm.bases.emplace_back();
  pvm.projectors.push_back(std::move(perp));
  return pvm;
}

PvmReport pvm_validate(const std::vector<Operator>& projectors, Tolerance tol) {
  PvmReport rep;
  if (projectors.empty()) return rep;
  const int dim = projectors.front().rows();
  Operator sum = Operator::zero(dim, dim);
  for (size_t i = 0; i < projectors.size(); ++i) {
    const Operator& p = projectors[i];
    if (!p.square() || p.rows() != dim) {
      rep.worst_residual = std::numeric_limits<double>::infinity();
      return rep;
    }
    rep.worst_residual = std::max(rep.worst_residual,
                                  (p - p.adjoint()).frobenius_norm());
    rep.worst_residual = std::max(rep.worst_residual,
                                  (p * p - p).frobenius_norm());
    for (size_t j = i + 1; j < projectors.size(); ++j)
      rep.worst_residual = std::max(rep.worst_residual,
                                    (p * projectors[j]).frobenius_norm());
    sum += p;
  }
  rep.worst_residual = std::max(rep.worst_residual,
                                (sum - Operator::identity(dim)).frobenius_norm());
  rep.ok = rep.worst_residual <= tol.abs_eps;
  return rep;
}

PvmReport pvm_validate(const SyndromePVM& pvm, Tolerance tol) {
  return pvm_validate(pvm.projectors, tol);
}

}  // namespace meanking
