#include "entangle/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "entangle/errors.hpp"

namespace entangle {

std::size_t qubits_for_dimension(std::size_t dimension) {
  for (std::size_t n = 1; n <= kMaxQubits; ++n) {
    if (dimension == (std::size_t{1} << n)) return n;
  }
  throw ValidationError("dimension " + std::to_string(dimension) + " is not 2^n for n in 1.." +
                        std::to_string(kMaxQubits));
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  n_qubits_ = qubits_for_dimension(amplitudes_.size());
  const double len = norm(amplitudes_);
  if (std::abs(len * len - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "PureState: squared norm " << len * len << " differs from 1";
    throw ValidationError(msg.str());
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double len = norm(amplitudes);
  if (len == 0.0) throw ValidationError("PureState: zero vector cannot be normalized");
  for (auto& z : amplitudes) z /= len;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t n_qubits, std::size_t index) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) throw ValidationError("basis: qubit count out of range");
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) throw ValidationError("basis: index out of range");
  ComplexVector amps(dim);
  amps[index] = 1.0;
  return PureState(std::move(amps));
}

PureState tensor(const PureState& psi, const PureState& phi) {
  return PureState::normalized(kron(psi.amplitudes(), phi.amplitudes()));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) throw ValidationError("DensityMatrix: matrix is not square");
  n_qubits_ = qubits_for_dimension(matrix_.rows());
  if (!matrix_.is_hermitian(kNormTolerance)) {
    throw ValidationError("DensityMatrix: matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "DensityMatrix: trace " << tr.real() << " differs from 1";
    throw ValidationError(msg.str());
  }
  const auto eig = herm_eig(matrix_);
  if (eig.eigenvalues.back() < -kPsdTolerance) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << eig.eigenvalues.back();
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw ValidationError("maximally_mixed: qubit count out of range");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

PureState state17(Complex c1, Complex c2) {
  const double total = std::norm(c1) + std::norm(c2);
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state17: |C1|^2 + |C2|^2 = " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
  // index 1 = |1>_a |2>_b, index 2 = |2>_a |1>_b
  return PureState(ComplexVector{0.0, c1, c2, 0.0});
}

PureState state17_polar(double theta, double phase) {
  return state17(std::cos(theta), std::polar(std::sin(theta), phase));
}

PureState singlet() {
  const double h = 1.0 / std::numbers::sqrt2;
  return state17(h, -h);
}

PureState triplet_m0() {
  const double h = 1.0 / std::numbers::sqrt2;
  return state17(h, h);
}

PureState ghz(std::size_t n_qubits) {
  if (n_qubits < 2 || n_qubits > kMaxQubits) {
    throw ValidationError("ghz: qubit count " + std::to_string(n_qubits) + " outside 2.." +
                          std::to_string(kMaxQubits));
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  ComplexVector amps(dim);
  amps.front() = 1.0 / std::numbers::sqrt2;
  amps.back() = 1.0 / std::numbers::sqrt2;
  return PureState(std::move(amps));
}

PureState make_named_state(NamedState name, const NamedStateParams& params) {
  switch (name) {
    case NamedState::kState17:
      return state17(params.c1, params.c2);
    case NamedState::kSinglet:
      return singlet();
    case NamedState::kTripletM0:
      return triplet_m0();
    case NamedState::kGhz:
      return ghz(params.ghz_qubits);
  }
  throw ValidationError("make_named_state: unknown state");
}

DensityMatrix density_from_pure(const PureState& psi) {
  return DensityMatrix(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

PurityReport purity_report(const ComplexMatrix& rho, double pure_threshold) {
  const ComplexMatrix square = rho * rho;
  PurityReport report;
  report.purity = square.trace().real();
  report.pure_defect = distance(square, rho);
  report.is_pure = report.pure_defect <= pure_threshold;
  return report;
}

PurityReport purity_report(const DensityMatrix& rho, double pure_threshold) {
  return purity_report(rho.matrix(), pure_threshold);
}

Complex trace_product(const DensityMatrix& rho, const ComplexMatrix& a) {
  const auto& m = rho.matrix();
  if (a.rows() != m.rows() || a.cols() != m.cols()) {
    throw ValidationError("expectation: operator dimension " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " does not match state dimension " +
                          std::to_string(m.rows()));
  }
  // Tr(rho A) = sum_ij rho_ij A_ji
  Complex sum{};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j) * a(j, i);
  }
  return sum;
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& a) {
  if (!a.is_hermitian(kNormTolerance * std::max(1.0, a.max_abs()))) {
    throw ValidationError("expectation: observable is not Hermitian");
  }
  const Complex value = trace_product(rho, a);
  if (std::abs(value.imag()) > kNormTolerance) {
    throw ValidationError("expectation: imaginary residue exceeds tolerance");
  }
  return value.real();
}

double fidelity(const PureState& psi, const ComplexMatrix& rho) {
  const ComplexVector image = rho * psi.amplitudes();
  return inner(psi.amplitudes(), image).real();
}

}  // namespace entangle
