#pragma once

// Pauli strings and the Hilbert-Schmidt expansion
//
//   rho = 2^-n sum_w c_w P_w,   c_w = Tr(rho P_w),
//
// over all 4^n words w in {I, s1, s2, s3}^n. The full coefficient tensor is
// stored, zeros included; the named blocks (r, s, p, t, o, p_ij, R) are views
// onto it.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

class PauliString {
 public:
  PauliString() = default;
  /// Letters 0 = I, 1 = sigma_1, 2 = sigma_2, 3 = sigma_3, one per qubit.
  explicit PauliString(std::vector<std::uint8_t> letters);
  /// Parses a digit string such as "122".
  static PauliString parse(std::string_view digits);
  /// Word number `index` in base 4, subsystem a most significant.
  static PauliString from_index(std::size_t n_qubits, std::size_t index);

  std::size_t size() const { return letters_.size(); }
  std::uint8_t operator[](std::size_t k) const { return letters_[k]; }
  std::span<const std::uint8_t> letters() const { return letters_; }
  std::size_t index() const;
  /// Number of non-identity letters.
  std::size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  std::string to_string() const;

  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::vector<std::uint8_t> letters_;
};

/// Single-site 2x2 operator for letter 0..3.
const ComplexMatrix& pauli(std::uint8_t letter);

/// Kronecker product of the per-site operators in subsystem order a, b, c, ...
ComplexMatrix pauli_matrix(const PauliString& word);

class HSTensor {
 public:
  HSTensor(std::size_t n_qubits, std::vector<double> coeffs);
  /// Identity coefficient 1, everything else 0.
  static HSTensor maximally_mixed(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](std::size_t word_index) const { return coeffs_[word_index]; }
  double coeff(const PauliString& word) const;
  void set(const PauliString& word, double value);
  /// sum_w c_w^2, equal to 2^n Tr rho^2.
  double square_sum() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<double> coeffs_;
};

HSTensor hs_decompose(const DensityMatrix& rho);

struct Composition {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;
  /// True when the matrix satisfies every DensityMatrix invariant.
  bool is_valid_state = false;

  /// Throws ValidationError when !is_valid_state.
  DensityMatrix state() const;
};

/// rho = 2^-n sum_w c_w P_w. A tensor that does not describe a positive
/// operator still yields its matrix, flagged through is_valid_state.
Composition hs_compose(const HSTensor& tensor);

/// Two-qubit blocks: c(n,0) = r_n, c(0,m) = s_m, c(n,m) = T[n][m].
struct TwoQubitParameters {
  static constexpr std::size_t kCount = 15;
  Vec3 r{};
  Vec3 s{};
  Mat3 t{};
};

/// Three-qubit blocks, placed on the subsystems as
///   r: a, s: b, p: c, t: (b,c), o: (a,c), p_pair: (a,b), R: (a,b,c).
/// Array index 0 holds Pauli axis 1.
struct ThreeQubitParameters {
  static constexpr std::size_t kCount = 63;
  Vec3 r{};
  Vec3 s{};
  Vec3 p{};
  Mat3 t{};
  Mat3 o{};
  Mat3 p_pair{};
  std::array<Mat3, 3> big_r{};
};

using NamedParameters = std::variant<TwoQubitParameters, ThreeQubitParameters>;

/// Throws ValidationError unless the tensor has 2 or 3 qubits.
NamedParameters named_params(const HSTensor& tensor);
TwoQubitParameters two_qubit_params(const HSTensor& tensor);
ThreeQubitParameters three_qubit_params(const HSTensor& tensor);

/// Rodrigues rotation about a unit axis. Throws for a zero axis or one whose
/// norm differs from 1 by more than 1e-10.
Mat3 so3_from_axis_angle(const Vec3& axis, double angle);

Mat3 transpose(const Mat3& m);
Mat3 multiply(const Mat3& a, const Mat3& b);
Vec3 multiply(const Mat3& m, const Vec3& v);
double determinant(const Mat3& m);

/// One proper rotation per subsystem, acting on that subsystem's Pauli vector.
class LocalRotation {
 public:
  /// Throws ValidationError unless every matrix satisfies O^T O = I and
  /// det O = +1 within 1e-10.
  explicit LocalRotation(std::vector<Mat3> per_subsystem);
  static LocalRotation common(std::size_t n_qubits, const Mat3& rotation);

  std::size_t size() const { return rotations_.size(); }
  const Mat3& operator[](std::size_t k) const { return rotations_[k]; }

 private:
  std::vector<Mat3> rotations_;
};

/// Coefficients after rotating each subsystem's measurement axes:
/// every non-identity index on subsystem k is contracted with O_k,
/// e.g. r' = O_a r and T' = O_a T O_b^T.
HSTensor rotate_frame(const HSTensor& tensor, const LocalRotation& rotation);

}  // namespace entangle
