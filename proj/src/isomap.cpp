// SPDX-License-Identifier: Apache-2.0

#include "meanking/isomap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace meanking {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_orthonormal(const std::vector<StateVector>& vs, int d,
                       double eps, const std::string& what) {
  require(static_cast<int>(vs.size()) == d, what + ": expected " +
          std::to_string(d) + " vectors, got " + std::to_string(vs.size()));
  for (int j = 0; j < d; ++j) {
    require(vs[static_cast<size_t>(j)].dim() == d,
            what + ": vector " + std::to_string(j) + " has wrong dimension");
    for (int k = j; k < d; ++k) {
      const cx g = inner(vs[static_cast<size_t>(j)], vs[static_cast<size_t>(k)]);
      const cx want = (j == k) ? cx{1.0} : cx{0.0};
      require(std::abs(g - want) <= eps,
              what + ": vectors " + std::to_string(j) + "," +
              std::to_string(k) + " are not orthonormal");
    }
  }
}

}  // namespace

bool SchmidtState::maximal(double eps) const {
  const double u = 1.0 / std::sqrt(static_cast<double>(d));
  for (double e : eta)
    if (std::abs(e - u) > eps) return false;
  return true;
}

SchmidtState schmidt_state(const std::vector<double>& eta,
                           const std::vector<StateVector>& basis_a,
                           const std::vector<StateVector>& basis_k,
                           Tolerance tol) {
  const int d = static_cast<int>(eta.size());
  require(d >= 1, "schmidt_state: empty weight list");
  double sq = 0.0;
  for (int j = 0; j < d; ++j) {
    const double e = eta[static_cast<size_t>(j)];
    require(std::isfinite(e) && e > tol.zero_eps,
            "schmidt_state: weight " + std::to_string(j) +
            " must be strictly positive");
    sq += e * e;
  }
  require(std::abs(sq - 1.0) <= tol.abs_eps,
          "schmidt_state: squared weights sum to " + std::to_string(sq) +
          ", expected 1");
  const double ortho_eps = std::max(tol.abs_eps, 1e-12);
  check_orthonormal(basis_a, d, ortho_eps, "schmidt_state: basisA");
  check_orthonormal(basis_k, d, ortho_eps, "schmidt_state: basisK");

  SchmidtState s;
  s.d = d;
  s.eta = eta;
  s.basis_a = basis_a;
  s.basis_k = basis_k;
  s.vector = StateVector(d * d);
  for (int j = 0; j < d; ++j) {
    StateVector term = tensor(basis_a[static_cast<size_t>(j)],
                              basis_k[static_cast<size_t>(j)]);
    term *= cx{eta[static_cast<size_t>(j)]};
    s.vector += term;
  }
  return s;
}

SchmidtState maximal_entangled(int d) {
  require(d >= 1, "maximal_entangled: dimension must be positive");
  std::vector<StateVector> basis;
  basis.reserve(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) basis.push_back(basis_ket(d, k));
  return maximal_entangled(d, basis);
}

SchmidtState maximal_entangled(int d, const std::vector<StateVector>& basis) {
  require(d >= 1, "maximal_entangled: dimension must be positive");
  std::vector<double> eta(static_cast<size_t>(d),
                          1.0 / std::sqrt(static_cast<double>(d)));
  return schmidt_state(eta, basis, basis);
}

cx sc_inner(const Operator& a, const Operator& b, const SchmidtState& s) {
  require(a.rows() == s.d && a.cols() == s.d && b.rows() == s.d && b.cols() == s.d,
          "sc_inner: operators must be d x d with d = " + std::to_string(s.d));
  cx acc{0.0};
  for (int j = 0; j < s.d; ++j) {
    const StateVector& phi = s.basis_k[static_cast<size_t>(j)];
    const double w = s.eta[static_cast<size_t>(j)];
    acc += w * w * inner(a.apply(phi), b.apply(phi));
  }
  return static_cast<double>(s.d) * acc;
}

StateVector iso_forward(const Operator& l, const SchmidtState& s) {
  require(l.rows() == s.d && l.cols() == s.d,
          "iso_forward: operator must be d x d with d = " + std::to_string(s.d));
  const double root_d = std::sqrt(static_cast<double>(s.d));
  StateVector out(s.d * s.d);
  for (int j = 0; j < s.d; ++j) {
    StateVector term = tensor(s.basis_a[static_cast<size_t>(j)],
                              l.apply(s.basis_k[static_cast<size_t>(j)]));
    term *= cx{root_d * s.eta[static_cast<size_t>(j)]};
    out += term;
  }
  return out;
}

Operator iso_inverse(const StateVector& v, const SchmidtState& s) {
  require(v.dim() == s.d * s.d,
          "iso_inverse: vector must have dimension d^2 = " +
          std::to_string(s.d * s.d));
  const double root_d = std::sqrt(static_cast<double>(s.d));
  Operator l = Operator::zero(s.d, s.d);
  for (int j = 0; j < s.d; ++j) {
    for (int k = 0; k < s.d; ++k) {
      const cx c = inner(tensor(s.basis_a[static_cast<size_t>(j)],
                                s.basis_k[static_cast<size_t>(k)]), v);
      const cx coeff = c / (root_d * s.eta[static_cast<size_t>(j)]);
      l += coeff * outer(s.basis_k[static_cast<size_t>(k)],
                         s.basis_k[static_cast<size_t>(j)]);
    }
  }
  return l;
}

CompletenessReport completeness_defect(const std::vector<Operator>& ls,
                                       const SchmidtState& s, double alpha,
                                       Tolerance tol) {
  const size_t n = static_cast<size_t>(s.d) * static_cast<size_t>(s.d);
  require(ls.size() == n, "completeness_defect: expected " + std::to_string(n) +
          " operators, got " + std::to_string(ls.size()));
  require(alpha > 0.0, "completeness_defect: alpha must be positive");

  CompletenessReport rep;
  for (size_t a = 0; a < ls.size(); ++a) {
    for (size_t b = a; b < ls.size(); ++b) {
      const cx g = sc_inner(ls[a], ls[b], s);
      if (a == b) {
        rep.alpha_mismatch = std::max(rep.alpha_mismatch, std::abs(g - cx{alpha}));
        if (a == 0) rep.alpha_estimate = g.real();
      } else {
        require(std::abs(g) <= std::max(tol.abs_eps, 1e-12) * 10.0,
                "completeness_defect: operators " + std::to_string(a + 1) +
                " and " + std::to_string(b + 1) + " are not Sc-orthogonal");
      }
    }
  }

  Operator sum = Operator::zero(s.d, s.d);
  for (const auto& l : ls) sum += l.adjoint() * l;
  Operator rhs = Operator::zero(s.d, s.d);
  for (int j = 0; j < s.d; ++j) {
    const double e = s.eta[static_cast<size_t>(j)];
    rhs += cx{alpha / (e * e)} * outer(s.basis_k[static_cast<size_t>(j)],
                                       s.basis_k[static_cast<size_t>(j)]);
  }
  rep.residual = (sum - rhs).frobenius_norm();
  return rep;
}

}  // namespace meanking
