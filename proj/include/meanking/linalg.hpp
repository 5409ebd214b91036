// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra over small finite-dimensional Hilbert spaces.
// Everything here is immutable after construction and safe to share across
// threads. Dimensions stay tiny (<= ~25), so all storage is dense row-major
// and comparisons use absolute Frobenius tolerances.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace meanking {

using cx = std::complex<double>;

/// Absolute tolerances used throughout: `abs_eps` for operator/vector
/// comparisons (Frobenius / l2 norm), `zero_eps` for "is this coefficient
/// zero" decisions.
struct Tolerance {
  double abs_eps = 1e-9;
  double zero_eps = 1e-9;
};

class Operator;

/// Column vector of complex amplitudes.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int dim);
  StateVector(std::initializer_list<cx> amps);
  explicit StateVector(std::vector<cx> amps);

  int dim() const { return static_cast<int>(amps_.size()); }
  const cx& operator[](int k) const { return amps_[static_cast<size_t>(k)]; }
  cx& operator[](int k) { return amps_[static_cast<size_t>(k)]; }
  const std::vector<cx>& amplitudes() const { return amps_; }

  double norm() const;
  StateVector normalized() const;  // throws if norm below 1e-300

  StateVector& operator+=(const StateVector& o);
  StateVector& operator-=(const StateVector& o);
  StateVector& operator*=(cx scale);

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(cx s, StateVector v) { return v *= s; }

 private:
  std::vector<cx> amps_;
};

/// Dense complex matrix, row-major.
class Operator {
 public:
  Operator() = default;
  Operator(int rows, int cols);

  static Operator identity(int n);
  static Operator zero(int rows, int cols);
  static Operator from_rows(std::initializer_list<std::initializer_list<cx>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const cx& operator()(int r, int c) const { return ent_[static_cast<size_t>(r) * cols_ + c]; }
  cx& operator()(int r, int c) { return ent_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<cx>& entries() const { return ent_; }

  Operator adjoint() const;
  cx trace() const;  // requires square
  double frobenius_norm() const;
  StateVector apply(const StateVector& v) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cx scale);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(cx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);  // matmul

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cx> ent_;
};

/// |v><w| outer product.
Operator outer(const StateVector& v, const StateVector& w);

/// <a|b>, conjugate-linear in the first argument.
cx inner(const StateVector& a, const StateVector& b);

/// Computational basis ket |k> in dimension `dim`.
StateVector basis_ket(int dim, int k);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

/// Kronecker product with the left factor as the slow index.
Operator tensor(const Operator& a, const Operator& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Hilbert-Schmidt inner product tr(a^† b); both operands must be square and
/// of the same shape. Conjugate-linear in the first argument.
cx hs_inner(const Operator& a, const Operator& b);

/// Apply (I_{dim_a} (x) l) to a bipartite vector without materializing the
/// lifted operator. v must have dimension dim_a * l.cols().
StateVector lift_apply(const Operator& l, const StateVector& v, int dim_a);

/// Gram-Schmidt with a second re-orthogonalization pass. Vectors whose
/// residual norm is <= tol.zero_eps are dropped; the output is orthonormal
/// and spans the same space as the input.
std::vector<StateVector> orthonormalize(const std::vector<StateVector>& vs,
                                        Tolerance tol = {});

/// Sum_k |b_k><b_k| over an orthonormal basis. Throws if the input Gram
/// matrix deviates from the identity by more than tol.abs_eps per entry.
Operator projector(const std::vector<StateVector>& basis, Tolerance tol = {});

struct ApproxResult {
  bool equal = false;
  double residual = 0.0;  // Frobenius norm of the difference
};

/// Frobenius-norm comparison against tol.abs_eps; always reports the residual.
ApproxResult approx_equal(const Operator& a, const Operator& b, Tolerance tol = {});
ApproxResult approx_equal(const StateVector& a, const StateVector& b, Tolerance tol = {});

/// Eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi;
/// the input is symmetrized as (A + A^†)/2 before iteration, so mild
/// numerical asymmetry is tolerated.
std::vector<double> hermitian_eigenvalues(const Operator& a);

}  // namespace meanking
