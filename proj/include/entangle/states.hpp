#pragma once

// Pure and mixed states of a few qubits.
//
// Basis convention: level |1> is index 0 and |2> is index 1, with
// sigma_3 |1> = +|1>. In a multi-qubit index subsystem a is the most
// significant digit, so the tensor order is a (x) b (x) c.

#include <cstddef>
#include <span>

#include "entangle/linalg.hpp"

namespace entangle {

inline constexpr std::size_t kMaxQubits = 5;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

class PureState {
 public:
  /// Throws ValidationError unless the length is 2^n for 1 <= n <= kMaxQubits
  /// and the norm is 1 within 1e-10.
  explicit PureState(ComplexVector amplitudes);
  /// Normalizes first; throws if the norm is zero.
  static PureState normalized(ComplexVector amplitudes);
  /// Computational basis state |index> on n qubits.
  static PureState basis(std::size_t n_qubits, std::size_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::size_t n_qubits_ = 0;
  ComplexVector amplitudes_;
};

/// psi (x) phi, with psi on the leading subsystems.
PureState tensor(const PureState& psi, const PureState& phi);

class DensityMatrix {
 public:
  /// Throws ValidationError unless the matrix is 2^n x 2^n, Hermitian and of
  /// unit trace within 1e-10, with every eigenvalue >= -1e-9.
  explicit DensityMatrix(ComplexMatrix matrix);
  static DensityMatrix maximally_mixed(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  std::size_t n_qubits_ = 0;
  ComplexMatrix matrix_;
};

/// Number of qubits for a dimension 2^n; throws for anything else.
std::size_t qubits_for_dimension(std::size_t dimension);

enum class NamedState { kState17, kSinglet, kTripletM0, kGhz };

struct NamedStateParams {
  Complex c1{1.0, 0.0};
  Complex c2{0.0, 0.0};
  std::size_t ghz_qubits = 3;
};

/// C1 |1>_a |2>_b + C2 |2>_a |1>_b. Requires |C1|^2 + |C2|^2 = 1 within 1e-10.
PureState state17(Complex c1, Complex c2);
/// The same family with the two real parameters left after normalization and
/// global phase: cos(theta) |1 2> + e^{i phase} sin(theta) |2 1>.
PureState state17_polar(double theta, double phase);
PureState singlet();
PureState triplet_m0();
/// (|1...1> + |2...2>) / sqrt(2), n in 2..5.
PureState ghz(std::size_t n_qubits);
PureState make_named_state(NamedState name, const NamedStateParams& params = {});

DensityMatrix density_from_pure(const PureState& psi);

struct PurityReport {
  double purity = 0.0;       // Tr rho^2
  double pure_defect = 0.0;  // ||rho^2 - rho||_F
  bool is_pure = false;      // pure_defect <= threshold
};

inline constexpr double kDefaultPureThreshold = 1e-6;

PurityReport purity_report(const ComplexMatrix& rho, double pure_threshold = kDefaultPureThreshold);
PurityReport purity_report(const DensityMatrix& rho, double pure_threshold = kDefaultPureThreshold);

/// Tr(rho A) for any square A of matching dimension.
Complex trace_product(const DensityMatrix& rho, const ComplexMatrix& a);

/// <A> = Tr(rho A) for Hermitian A. Throws ValidationError if A is not
/// Hermitian or the imaginary residue exceeds 1e-10.
double expectation(const DensityMatrix& rho, const ComplexMatrix& a);

/// <psi|rho|psi>
double fidelity(const PureState& psi, const ComplexMatrix& rho);

}  // namespace entangle
