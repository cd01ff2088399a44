#pragma once

// Dense complex linear algebra for the small operators that appear in
// few-qubit problems (dimension <= 64). Matrices are plain values; every
// operation returns a fresh result.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entangle {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws ValidationError if the count is not rows*cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// |u><v|
  static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);
  /// Matrix whose columns are the given vectors (all of equal length).
  static ComplexMatrix from_columns(std::span<const ComplexVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexVector column(std::size_t c) const;
  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest absolute entry.
  double max_abs() const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexVector operator*(const ComplexMatrix& lhs, std::span<const Complex> rhs);

/// Frobenius norm of lhs - rhs.
double distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

// Vector helpers.
/// <u|v>, conjugate-linear in u.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);
double distance(std::span<const Complex> u, std::span<const Complex> v);
ComplexVector kron(std::span<const Complex> u, std::span<const Complex> v);

/// Kronecker product: (A (x) B)[i*q + k, j*r + l] = A[i,j] * B[k,l] for B of size q x r.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on the subsystems listed in `keep`. Subsystem 0 is the
/// most significant digit of the row/column index. The result orders the
/// kept subsystems ascending.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // columns, same order as eigenvalues
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Sweeps over all (p, q) pairs until the off-diagonal Frobenius mass drops
/// below 1e-13 * ||H||_F, with a hard cap of 100 sweeps. Eigenvalues are
/// sorted descending, ties kept in diagonal order.
///
/// Throws ValidationError if H is not Hermitian within 1e-10 (relative to
/// max(1, max|H_ij|)), NumericalError on non-convergence.
EigenDecomposition herm_eig(const ComplexMatrix& h);

struct SingularValueDecomposition {
  ComplexMatrix u;                      // rows(A) x k, orthonormal columns
  std::vector<double> singular_values;  // descending, k = min(rows, cols)
  ComplexMatrix v;                      // cols(A) x k, orthonormal columns
};

/// Thin SVD A = U diag(s) V^dagger, computed from herm_eig(A^dagger A).
/// The first non-negligible component of every right singular vector is made
/// real positive, so the factors are reproducible.
SingularValueDecomposition svd(const ComplexMatrix& a);

}  // namespace entangle
