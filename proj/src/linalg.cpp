#include "entangle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

constexpr double kJacobiRelativeTolerance = 1e-13;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kHermitianTolerance = 1e-10;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    throw ValidationError(msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

// Applies A <- G^dagger A G and V <- V G for the unitary G acting on the
// (p, q) plane with block [[g_pp, g_pq], [g_qp, g_qq]].
void apply_plane_rotation(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q,
                          Complex g_pp, Complex g_pq, Complex g_qp, Complex g_qq) {
  const std::size_t n = a.rows();
  for (std::size_t r = 0; r < n; ++r) {
    const Complex ap = a(r, p);
    const Complex aq = a(r, q);
    a(r, p) = ap * g_pp + aq * g_qp;
    a(r, q) = ap * g_pq + aq * g_qq;
    const Complex vp = v(r, p);
    const Complex vq = v(r, q);
    v(r, p) = vp * g_pp + vq * g_qp;
    v(r, q) = vp * g_pq + vq * g_qq;
  }
  for (std::size_t c = 0; c < n; ++c) {
    const Complex ap = a(p, c);
    const Complex aq = a(q, c);
    a(p, c) = std::conj(g_pp) * ap + std::conj(g_qp) * aq;
    a(q, c) = std::conj(g_pq) * ap + std::conj(g_qq) * aq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw ValidationError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ComplexMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::from_columns(std::span<const ComplexVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  ComplexMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw ValidationError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t c) const {
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& z : m.entries_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex sum{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  return distance(adjoint() * (*this), identity(rows_)) <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw ValidationError("matrix product: inner dimensions " + std::to_string(lhs.cols()) +
                          " and " + std::to_string(rhs.rows()) + " differ");
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexVector operator*(const ComplexMatrix& lhs, std::span<const Complex> rhs) {
  if (lhs.cols() != rhs.size()) throw ValidationError("matrix-vector product: dimension mismatch");
  ComplexVector out(lhs.rows());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    Complex sum{};
    for (std::size_t j = 0; j < lhs.cols(); ++j) sum += lhs(i, j) * rhs[j];
    out[i] = sum;
  }
  return out;
}

double distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return (lhs - rhs).frobenius_norm();
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ValidationError("inner: length mismatch");
  Complex sum{};
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

double norm(std::span<const Complex> v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

double distance(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ValidationError("distance: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::norm(u[i] - v[i]);
  return std::sqrt(sum);
}

ComplexVector kron(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexVector out;
  out.reserve(u.size() * v.size());
  for (const auto& a : u) {
    for (const auto& b : v) out.push_back(a * b);
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t q = b.rows();
  const std::size_t r = b.cols();
  ComplexMatrix out(a.rows() * q, a.cols() * r);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t l = 0; l < r; ++l) out(i * q + k, j * r + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (!rho.is_square() || rho.rows() != total || dims.empty()) {
    throw ValidationError("partial_trace: operator dimension " + std::to_string(rho.rows()) +
                          " does not match subsystem dimensions product " +
                          std::to_string(total));
  }
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");

  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) throw ValidationError("partial_trace: subsystem index out of range");
    if (kept[k]) throw ValidationError("partial_trace: duplicate subsystem in keep set");
    kept[k] = true;
  }

  // Split every full index into (kept index, traced index) once.
  std::vector<std::size_t> kept_index(total);
  std::vector<std::size_t> traced_index(total);
  std::size_t kept_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (kept[s]) kept_dim *= dims[s];
  }
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t rem = full;
    std::size_t k_idx = 0, k_scale = 1, t_idx = 0, t_scale = 1;
    for (std::size_t s = dims.size(); s-- > 0;) {
      const std::size_t digit = rem % dims[s];
      rem /= dims[s];
      if (kept[s]) {
        k_idx += digit * k_scale;
        k_scale *= dims[s];
      } else {
        t_idx += digit * t_scale;
        t_scale *= dims[s];
      }
    }
    kept_index[full] = k_idx;
    traced_index[full] = t_idx;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += rho(i, j);
    }
  }
  return out;
}

EigenDecomposition herm_eig(const ComplexMatrix& h) {
  if (!h.is_square() || h.empty()) throw ValidationError("herm_eig: matrix must be square");
  if (!h.is_hermitian(kHermitianTolerance * std::max(1.0, h.max_abs()))) {
    throw ValidationError("herm_eig: matrix is not Hermitian");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize exactly so the rotations act on a Hermitian matrix.
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kJacobiRelativeTolerance * h.frobenius_norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep++ >= kJacobiMaxSweeps) {
      std::ostringstream msg;
      msg << "herm_eig: no convergence after " << kJacobiMaxSweeps
          << " sweeps, off-diagonal residual " << off_diagonal_norm(a);
      throw NumericalError(msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        const double magnitude = std::abs(b);
        if (magnitude == 0.0) continue;
        // Phase e^{-i phi} on q makes the (p, q) element real, then a real
        // Jacobi rotation annihilates it.
        const Complex phase = std::conj(b) / magnitude;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * magnitude);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        apply_plane_rotation(a, v, p, q, c, s, -s * phase, c * phase);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]).real());
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

SingularValueDecomposition svd(const ComplexMatrix& a) {
  if (a.empty()) throw ValidationError("svd: empty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);

  const EigenDecomposition gram = herm_eig(a.adjoint() * a);

  std::vector<ComplexVector> right(k);
  std::vector<ComplexVector> images(k);
  std::vector<double> values(k);
  for (std::size_t i = 0; i < k; ++i) {
    ComplexVector vec = gram.eigenvectors.column(i);
    for (auto& z : vec) {
      if (std::abs(z) > 1e-12) {
        const double magnitude = std::abs(z);
        const Complex phase = std::conj(z) / magnitude;
        for (auto& w : vec) w *= phase;
        z = magnitude;
        break;
      }
    }
    images[i] = a * std::span<const Complex>(vec);
    values[i] = norm(images[i]);
    right[i] = std::move(vec);
  }

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });

  const double largest = values[order.front()];
  const double cutoff = 1e-10 * largest;
  std::vector<ComplexVector> left;
  left.reserve(k);
  auto orthonormalize = [&left](ComplexVector vec) -> std::optional<ComplexVector> {
    for (const auto& prev : left) {
      const Complex overlap = inner(prev, vec);
      for (std::size_t r = 0; r < vec.size(); ++r) vec[r] -= overlap * prev[r];
    }
    const double len = norm(vec);
    if (len < 1e-8) return std::nullopt;
    for (auto& z : vec) z /= len;
    return vec;
  };

  SingularValueDecomposition out;
  std::vector<std::size_t> missing;
  std::vector<ComplexVector> left_slots(k);
  for (std::size_t slot = 0; slot < k; ++slot) {
    const std::size_t i = order[slot];
    out.singular_values.push_back(values[i]);
    if (values[i] > cutoff && values[i] > 0.0) {
      ComplexVector u = images[i];
      for (auto& z : u) z /= values[i];
      if (auto fixed = orthonormalize(std::move(u))) {
        left.push_back(*fixed);
        left_slots[slot] = std::move(*fixed);
        continue;
      }
    }
    missing.push_back(slot);
  }
  // Complete the left basis for (numerically) zero singular values.
  for (std::size_t slot : missing) {
    for (std::size_t e = 0; e < m; ++e) {
      ComplexVector basis(m);
      basis[e] = 1.0;
      if (auto fixed = orthonormalize(std::move(basis))) {
        left.push_back(*fixed);
        left_slots[slot] = std::move(*fixed);
        break;
      }
    }
  }

  std::vector<ComplexVector> right_sorted;
  right_sorted.reserve(k);
  for (std::size_t slot = 0; slot < k; ++slot) right_sorted.push_back(right[order[slot]]);
  out.u = ComplexMatrix::from_columns(left_slots);
  out.v = ComplexMatrix::from_columns(right_sorted);
  return out;
}

}  // namespace entangle
