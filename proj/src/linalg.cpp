// SPDX-License-Identifier: Apache-2.0

#include "meanking/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace meanking {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<cx>& xs) {
  for (const cx& x : xs) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

}  // namespace

StateVector::StateVector(int dim) {
  require(dim >= 1, "StateVector: dim must be positive");
  amps_.assign(static_cast<size_t>(dim), cx{0.0, 0.0});
}

StateVector::StateVector(std::initializer_list<cx> amps) : amps_(amps) {
  require(!amps_.empty(), "StateVector: empty amplitude list");
  require(all_finite(amps_), "StateVector: non-finite amplitude");
}

StateVector::StateVector(std::vector<cx> amps) : amps_(std::move(amps)) {
  require(!amps_.empty(), "StateVector: empty amplitude list");
  require(all_finite(amps_), "StateVector: non-finite amplitude");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cx& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  require(n > 1e-300, "StateVector: cannot normalize (near-)zero vector");
  StateVector out = *this;
  for (cx& a : out.amps_) a /= n;
  return out;
}

StateVector& StateVector::operator+=(const StateVector& o) {
  require(dim() == o.dim(), "StateVector: dimension mismatch");
  for (int k = 0; k < dim(); ++k) amps_[k] += o.amps_[k];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& o) {
  require(dim() == o.dim(), "StateVector: dimension mismatch");
  for (int k = 0; k < dim(); ++k) amps_[k] -= o.amps_[k];
  return *this;
}

StateVector& StateVector::operator*=(cx scale) {
  for (cx& a : amps_) a *= scale;
  return *this;
}

Operator::Operator(int rows, int cols) : rows_(rows), cols_(cols) {
  require(rows >= 1 && cols >= 1, "Operator: dimensions must be positive");
  ent_.assign(static_cast<size_t>(rows) * cols, cx{0.0, 0.0});
}

Operator Operator::identity(int n) {
  Operator out(n, n);
  for (int k = 0; k < n; ++k) out(k, k) = 1.0;
  return out;
}

Operator Operator::zero(int rows, int cols) { return Operator(rows, cols); }

Operator Operator::from_rows(std::initializer_list<std::initializer_list<cx>> rows) {
  const int r = static_cast<int>(rows.size());
  require(r > 0, "Operator: empty row list");
  const int c = static_cast<int>(rows.begin()->size());
  Operator out(r, c);
  int i = 0;
  for (const auto& row : rows) {
    require(static_cast<int>(row.size()) == c, "Operator: ragged rows");
    int j = 0;
    for (const cx& x : row) out(i, j++) = x;
    ++i;
  }
  require(all_finite(out.ent_), "Operator: non-finite entry");
  return out;
}

Operator Operator::adjoint() const {
  Operator out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cx Operator::trace() const {
  require(square(), "Operator: trace of non-square matrix");
  cx t{0.0, 0.0};
  for (int k = 0; k < rows_; ++k) t += (*this)(k, k);
  return t;
}

double Operator::frobenius_norm() const {
  double s = 0.0;
  for (const cx& x : ent_) s += std::norm(x);
  return std::sqrt(s);
}

StateVector Operator::apply(const StateVector& v) const {
  require(cols_ == v.dim(), "Operator: apply dimension mismatch");
  StateVector out(rows_);
  for (int r = 0; r < rows_; ++r) {
    cx acc{0.0, 0.0};
    const cx* row = ent_.data() + static_cast<size_t>(r) * cols_;
    for (int c = 0; c < cols_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

Operator& Operator::operator+=(const Operator& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "Operator: shape mismatch");
  for (size_t k = 0; k < ent_.size(); ++k) ent_[k] += o.ent_[k];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, "Operator: shape mismatch");
  for (size_t k = 0; k < ent_.size(); ++k) ent_[k] -= o.ent_[k];
  return *this;
}

Operator& Operator::operator*=(cx scale) {
  for (cx& x : ent_) x *= scale;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require(a.cols_ == b.rows_, "Operator: matmul shape mismatch");
  Operator out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int k = 0; k < a.cols_; ++k) {
      const cx av = a(r, k);
      if (av == cx{0.0, 0.0}) continue;
      for (int c = 0; c < b.cols_; ++c) out(r, c) += av * b(k, c);
    }
  }
  return out;
}

Operator outer(const StateVector& v, const StateVector& w) {
  Operator out(v.dim(), w.dim());
  for (int r = 0; r < v.dim(); ++r)
    for (int c = 0; c < w.dim(); ++c) out(r, c) = v[r] * std::conj(w[c]);
  return out;
}

cx inner(const StateVector& a, const StateVector& b) {
  require(a.dim() == b.dim(), "inner: dimension mismatch");
  cx acc{0.0, 0.0};
  for (int k = 0; k < a.dim(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

StateVector basis_ket(int dim, int k) {
  require(k >= 0 && k < dim, "basis_ket: index out of range");
  StateVector v(dim);
  v[k] = 1.0;
  return v;
}

Operator pauli_x() { return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
Operator pauli_y() { return Operator::from_rows({{0.0, cx{0.0, -1.0}}, {cx{0.0, 1.0}, 0.0}}); }
Operator pauli_z() { return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Operator tensor(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int ar = 0; ar < a.rows(); ++ar)
    for (int ac = 0; ac < a.cols(); ++ac) {
      const cx av = a(ar, ac);
      if (av == cx{0.0, 0.0}) continue;
      for (int br = 0; br < b.rows(); ++br)
        for (int bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
    }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

cx hs_inner(const Operator& a, const Operator& b) {
  require(a.square() && b.square() && a.rows() == b.rows(),
          "hs_inner: operands must share a square shape");
  cx acc{0.0, 0.0};
  for (size_t k = 0; k < a.entries().size(); ++k)
    acc += std::conj(a.entries()[k]) * b.entries()[k];
  return acc;
}

StateVector lift_apply(const Operator& l, const StateVector& v, int dim_a) {
  require(dim_a >= 1 && l.rows() >= 1, "lift_apply: empty factor");
  require(v.dim() == dim_a * l.cols(),
          "lift_apply: vector dimension must equal dim_a * cols");
  StateVector out(dim_a * l.rows());
  for (int x = 0; x < dim_a; ++x) {
    const int off_in = x * l.cols();
    const int off_out = x * l.rows();
    for (int r = 0; r < l.rows(); ++r) {
      cx acc{0.0, 0.0};
      for (int c = 0; c < l.cols(); ++c) {
        const cx& e = l(r, c);
        if (e != cx{0.0, 0.0}) acc += e * v[off_in + c];
      }
      out[off_out + r] = acc;
    }
  }
  return out;
}

std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vs, Tolerance tol) {
  std::vector<StateVector> out;
  if (vs.empty()) return out;
  const int dim = vs.front().dim();
  for (const StateVector& v : vs) {
    require(v.dim() == dim, "orthonormalize: mixed dimensions");
    StateVector w = v;
    // Two projection passes keep orthogonality loss near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const StateVector& b : out) w -= inner(b, w) * b;
    }
    const double n = w.norm();
    if (n <= tol.zero_eps) continue;
    out.push_back((cx{1.0 / n, 0.0}) * w);
  }
  return out;
}

Operator projector(const std::vector<StateVector>& basis, Tolerance tol) {
  require(!basis.empty(), "projector: empty basis");
  const int dim = basis.front().dim();
  for (size_t i = 0; i < basis.size(); ++i) {
    require(basis[i].dim() == dim, "projector: mixed dimensions");
    for (size_t j = 0; j <= i; ++j) {
      const cx g = inner(basis[i], basis[j]);
      const cx want = (i == j) ? cx{1.0, 0.0} : cx{0.0, 0.0};
      require(std::abs(g - want) <= std::max(tol.abs_eps, 1e-12) * 10,
              "projector: basis not orthonormal");
    }
  }
  Operator p(dim, dim);
  for (const StateVector& b : basis) p += outer(b, b);
  return p;
}

ApproxResult approx_equal(const Operator& a, const Operator& b, Tolerance tol) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "approx_equal: shape mismatch");
  double s = 0.0;
  for (size_t k = 0; k < a.entries().size(); ++k)
    s += std::norm(a.entries()[k] - b.entries()[k]);
  const double res = std::sqrt(s);
  return {res <= tol.abs_eps, res};
}

ApproxResult approx_equal(const StateVector& a, const StateVector& b, Tolerance tol) {
  require(a.dim() == b.dim(), "approx_equal: dimension mismatch");
  double s = 0.0;
  for (int k = 0; k < a.dim(); ++k) s += std::norm(a[k] - b[k]);
  const double res = std::sqrt(s);
  return {res <= tol.abs_eps, res};
}

std::vector<double> hermitian_eigenvalues(const Operator& a) {
  require(a.square(), "hermitian_eigenvalues: matrix must be square");
  const int n = a.rows();
  // Work on the Hermitian part.
  Operator h(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) h(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));

  double scale = h.frobenius_norm();
  if (scale == 0.0) return std::vector<double>(static_cast<size_t>(n), 0.0);
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h(p, q)));
    if (off <= stop) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cx b = h(p, q);
        const double ab = std::abs(b);
        if (ab <= stop) continue;
        // Unitary 2x2 rotation V = diag(1, e^{-i phi}) * Givens(theta)
        // chosen so that (V^† h V)_{pq} = 0.
        const cx phase = b / ab;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        const double tau = (aqq - app) / (2.0 * ab);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // V = diag(1, e^{-i phi}) * [[c, s], [-s, c]]; apply H <- V^† H V.
        for (int r = 0; r < n; ++r) {
          const cx hp = h(r, p), hq = h(r, q);
          h(r, p) = c * hp - s * std::conj(phase) * hq;
          h(r, q) = s * hp + c * std::conj(phase) * hq;
        }
        for (int r = 0; r < n; ++r) {
          const cx hp = h(p, r), hq = h(q, r);
          h(p, r) = c * hp - s * phase * hq;
          h(q, r) = s * hp + c * phase * hq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) eig[k] = h(k, k).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace meanking
