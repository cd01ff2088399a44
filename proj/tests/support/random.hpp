#pragma once

// Fixed-seed generators for property tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/pauli_hs.hpp"
#include "entangle/states.hpp"

namespace testsupport {

using entangle::Complex;
using entangle::ComplexMatrix;
using entangle::ComplexVector;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  std::uint64_t bits() { return engine_(); }

  Complex complex_normal() { return {normal(), normal()}; }

  ComplexVector gaussian_vector(std::size_t dim) {
    ComplexVector v(dim);
    for (auto& z : v) z = complex_normal();
    return v;
  }

  // Unitarily invariant (Haar) pure state.
  entangle::PureState pure_state(std::size_t n_qubits) {
    return entangle::PureState::normalized(gaussian_vector(std::size_t{1} << n_qubits));
  }

  ComplexMatrix matrix(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex_normal();
    }
    return m;
  }

  ComplexMatrix hermitian(std::size_t dim) {
    const ComplexMatrix g = matrix(dim, dim);
    return 0.5 * (g + g.adjoint());
  }

  // Gram-Schmidt on Gaussian columns.
  ComplexMatrix unitary(std::size_t dim) {
    std::vector<ComplexVector> cols;
    while (cols.size() < dim) {
      ComplexVector v = gaussian_vector(dim);
      for (const auto& u : cols) {
        const Complex overlap = entangle::inner(u, v);
        for (std::size_t k = 0; k < dim; ++k) v[k] -= overlap * u[k];
      }
      const double len = entangle::norm(v);
      for (auto& z : v) z /= len;
      cols.push_back(std::move(v));
    }
    return ComplexMatrix::from_columns(cols);
  }

  // Random mixed state: normalized G G^dagger.
  entangle::DensityMatrix mixed_state(std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const ComplexMatrix g = matrix(dim, dim);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return entangle::DensityMatrix(0.5 * (rho + rho.adjoint()));
  }

  entangle::Vec3 unit_axis() {
    for (;;) {
      entangle::Vec3 v{normal(), normal(), normal()};
      const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (len > 1e-6) return {v[0] / len, v[1] / len, v[2] / len};
    }
  }

  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

  entangle::Mat3 rotation() { return entangle::so3_from_axis_angle(unit_axis(), angle()); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

}  // namespace testsupport
