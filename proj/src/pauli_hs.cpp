#include "entangle/pauli_hs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

constexpr double kCoeffTolerance = 1e-9;
constexpr double kRotationTolerance = 1e-10;

std::size_t word_count(std::size_t n_qubits) { return std::size_t{1} << (2 * n_qubits); }

// P_w |j> = phase * |target>. Every Pauli string is a phased permutation.
struct PauliAction {
  std::size_t flip_mask = 0;
  std::vector<std::uint8_t> letters;

  explicit PauliAction(const PauliString& word) : letters(word.letters().begin(), word.letters().end()) {
    const std::size_t n = letters.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (letters[k] == 1 || letters[k] == 2) flip_mask |= std::size_t{1} << (n - 1 - k);
    }
  }

  Complex phase(std::size_t j) const {
    const std::size_t n = letters.size();
    Complex ph{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      const bool bit = (j >> (n - 1 - k)) & 1U;
      switch (letters[k]) {
        case 2:
          ph *= bit ? -kI : kI;
          break;
        case 3:
          if (bit) ph = -ph;
          break;
        default:
          break;
      }
    }
    return ph;
  }
};

void check_rotation(const Mat3& m, std::size_t k) {
  const Mat3 gram = multiply(transpose(m), m);
  double err = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)));
  }
  if (err > kRotationTolerance) {
    throw ValidationError("LocalRotation: matrix for subsystem " + std::to_string(k) +
                          " is not orthogonal");
  }
  if (std::abs(determinant(m) - 1.0) > kRotationTolerance) {
    throw ValidationError("LocalRotation: matrix for subsystem " + std::to_string(k) +
                          " is not a proper rotation (det != +1)");
  }
}

}  // namespace

PauliString::PauliString(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw ValidationError("PauliString: empty word");
  for (auto l : letters_) {
    if (l > 3) throw ValidationError("PauliString: letter " + std::to_string(l) + " outside 0..3");
  }
}

PauliString PauliString::parse(std::string_view digits) {
  std::vector<std::uint8_t> letters;
  for (char ch : digits) {
    if (ch < '0' || ch > '3') {
      throw ValidationError("PauliString: invalid letter '" + std::string(1, ch) + "'");
    }
    letters.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return PauliString(std::move(letters));
}

PauliString PauliString::from_index(std::size_t n_qubits, std::size_t index) {
  if (n_qubits == 0) throw ValidationError("PauliString: zero length");
  if (index >= word_count(n_qubits)) throw ValidationError("PauliString: index out of range");
  std::vector<std::uint8_t> letters(n_qubits);
  for (std::size_t k = n_qubits; k-- > 0;) {
    letters[k] = static_cast<std::uint8_t>(index & 3U);
    index >>= 2;
  }
  return PauliString(std::move(letters));
}

std::size_t PauliString::index() const {
  std::size_t idx = 0;
  for (auto l : letters_) idx = idx * 4 + l;
  return idx;
}

std::size_t PauliString::weight() const {
  return static_cast<std::size_t>(std::count_if(letters_.begin(), letters_.end(),
                                                [](std::uint8_t l) { return l != 0; }));
}

std::string PauliString::to_string() const {
  std::string out;
  for (auto l : letters_) out.push_back(static_cast<char>('0' + l));
  return out;
}

const ComplexMatrix& pauli(std::uint8_t letter) {
  static const std::array<ComplexMatrix, 4> kPaulis = {
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
      ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
      ComplexMatrix{{0.0, -kI}, {kI, 0.0}},
      ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (letter > 3) throw ValidationError("pauli: letter outside 0..3");
  return kPaulis[letter];
}

ComplexMatrix pauli_matrix(const PauliString& word) {
  if (word.size() == 0) throw ValidationError("pauli_matrix: empty word");
  ComplexMatrix out = pauli(word[0]);
  for (std::size_t k = 1; k < word.size(); ++k) out = kron(out, pauli(word[k]));
  return out;
}

HSTensor::HSTensor(std::size_t n_qubits, std::vector<double> coeffs)
    : n_qubits_(n_qubits), coeffs_(std::move(coeffs)) {
  if (n_qubits_ == 0 || n_qubits_ > kMaxQubits) {
    throw ValidationError("HSTensor: qubit count out of range");
  }
  if (coeffs_.size() != word_count(n_qubits_)) {
    throw ValidationError("HSTensor: expected " + std::to_string(word_count(n_qubits_)) +
                          " coefficients, got " + std::to_string(coeffs_.size()));
  }
  if (std::abs(coeffs_[0] - 1.0) > kNormTolerance) {
    throw ValidationError("HSTensor: identity coefficient must be 1");
  }
  for (std::size_t w = 0; w < coeffs_.size(); ++w) {
    if (!(std::abs(coeffs_[w]) <= 1.0 + kCoeffTolerance)) {
      std::ostringstream msg;
      msg << "HSTensor: coefficient " << PauliString::from_index(n_qubits_, w).to_string() << " = "
          << coeffs_[w] << " outside [-1, 1]";
      throw ValidationError(msg.str());
    }
  }
}

HSTensor HSTensor::maximally_mixed(std::size_t n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits) {
    throw ValidationError("HSTensor: qubit count out of range");
  }
  std::vector<double> coeffs(word_count(n_qubits), 0.0);
  coeffs[0] = 1.0;
  return HSTensor(n_qubits, std::move(coeffs));
}

double HSTensor::coeff(const PauliString& word) const {
  if (word.size() != n_qubits_) throw ValidationError("HSTensor: word length mismatch");
  return coeffs_[word.index()];
}

void HSTensor::set(const PauliString& word, double value) {
  if (word.size() != n_qubits_) throw ValidationError("HSTensor: word length mismatch");
  if (word.is_identity() ? std::abs(value - 1.0) > kNormTolerance
                         : !(std::abs(value) <= 1.0 + kCoeffTolerance)) {
    throw ValidationError("HSTensor: coefficient " + word.to_string() + " out of range");
  }
  coeffs_[word.index()] = value;
}

double HSTensor::square_sum() const {
  double sum = 0.0;
  for (double c : coeffs_) sum += c * c;
  return sum;
}

HSTensor hs_decompose(const DensityMatrix& rho) {
  const std::size_t n = rho.n_qubits();
  const std::size_t dim = rho.dimension();
  const auto& m = rho.matrix();
  std::vector<double> coeffs(word_count(n));
  for (std::size_t w = 0; w < coeffs.size(); ++w) {
    const PauliAction action(PauliString::from_index(n, w));
    // P|j> = phase(j) |j ^ mask>, so Tr(rho P) = sum_j rho[j, j ^ mask] * phase(j)
    Complex sum{};
    for (std::size_t j = 0; j < dim; ++j) sum += m(j, j ^ action.flip_mask) * action.phase(j);
    coeffs[w] = sum.real();
  }
  return HSTensor(n, std::move(coeffs));
}

DensityMatrix Composition::state() const {
  if (!is_valid_state) {
    std::ostringstream msg;
    msg << "composed matrix is not a density matrix (min eigenvalue " << min_eigenvalue << ")";
    throw ValidationError(msg.str());
  }
  return DensityMatrix(matrix);
}

Composition hs_compose(const HSTensor& tensor) {
  const std::size_t n = tensor.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const double scale = 1.0 / static_cast<double>(dim);
  ComplexMatrix m(dim, dim);
  for (std::size_t w = 0; w < word_count(n); ++w) {
    const double c = tensor[w];
    if (c == 0.0) continue;
    const PauliAction action(PauliString::from_index(n, w));
    for (std::size_t j = 0; j < dim; ++j) m(j ^ action.flip_mask, j) += c * scale * action.phase(j);
  }

  Composition out;
  out.min_eigenvalue = herm_eig(m).eigenvalues.back();
  out.matrix = std::move(m);
  out.is_valid_state = out.min_eigenvalue >= -kPsdTolerance;
  return out;
}

TwoQubitParameters two_qubit_params(const HSTensor& tensor) {
  if (tensor.n_qubits() != 2) {
    throw ValidationError("named parameters: expected 2 qubits, got " +
                          std::to_string(tensor.n_qubits()));
  }
  auto c = [&](std::size_t a, std::size_t b) { return tensor[a * 4 + b]; };
  TwoQubitParameters p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.r[i] = c(i + 1, 0);
    p.s[i] = c(0, i + 1);
    for (std::size_t j = 0; j < 3; ++j) p.t[i][j] = c(i + 1, j + 1);
  }
  return p;
}

ThreeQubitParameters three_qubit_params(const HSTensor& tensor) {
  if (tensor.n_qubits() != 3) {
    throw ValidationError("named parameters: expected 3 qubits, got " +
                          std::to_string(tensor.n_qubits()));
  }
  auto c = [&](std::size_t a, std::size_t b, std::size_t d) { return tensor[(a * 4 + b) * 4 + d]; };
  ThreeQubitParameters p;
  for (std::size_t i = 0; i < 3; ++i) {
    p.r[i] = c(i + 1, 0, 0);
    p.s[i] = c(0, i + 1, 0);
    p.p[i] = c(0, 0, i + 1);
    for (std::size_t j = 0; j < 3; ++j) {
      p.t[i][j] = c(0, i + 1, j + 1);
      p.o[i][j] = c(i + 1, 0, j + 1);
      p.p_pair[i][j] = c(i + 1, j + 1, 0);
      for (std::size_t k = 0; k < 3; ++k) p.big_r[i][j][k] = c(i + 1, j + 1, k + 1);
    }
  }
  return p;
}

NamedParameters named_params(const HSTensor& tensor) {
  switch (tensor.n_qubits()) {
    case 2:
      return two_qubit_params(tensor);
    case 3:
      return three_qubit_params(tensor);
    default:
      throw ValidationError("named parameters exist for 2 or 3 qubits, got " +
                            std::to_string(tensor.n_qubits()));
  }
}

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  }
  return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

Vec3 multiply(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

double determinant(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 so3_from_axis_angle(const Vec3& axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (len == 0.0) throw ValidationError("so3_from_axis_angle: zero axis");
  if (std::abs(len - 1.0) > kRotationTolerance) {
    throw ValidationError("so3_from_axis_angle: axis is not a unit vector");
  }
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const auto [x, y, z] = axis;
  return Mat3{{
      {c + x * x * (1 - c), x * y * (1 - c) - z * s, x * z * (1 - c) + y * s},
      {y * x * (1 - c) + z * s, c + y * y * (1 - c), y * z * (1 - c) - x * s},
      {z * x * (1 - c) - y * s, z * y * (1 - c) + x * s, c + z * z * (1 - c)},
  }};
}

LocalRotation::LocalRotation(std::vector<Mat3> per_subsystem) : rotations_(std::move(per_subsystem)) {
  if (rotations_.empty()) throw ValidationError("LocalRotation: no subsystems");
  for (std::size_t k = 0; k < rotations_.size(); ++k) check_rotation(rotations_[k], k);
}

LocalRotation LocalRotation::common(std::size_t n_qubits, const Mat3& rotation) {
  return LocalRotation(std::vector<Mat3>(n_qubits, rotation));
}

HSTensor rotate_frame(const HSTensor& tensor, const LocalRotation& rotation) {
  const std::size_t n = tensor.n_qubits();
  if (rotation.size() != n) {
    throw ValidationError("rotate_frame: " + std::to_string(rotation.size()) +
                          " rotations for " + std::to_string(n) + " subsystems");
  }
  std::vector<double> coeffs(tensor.coeffs().begin(), tensor.coeffs().end());
  std::vector<double> next(coeffs.size());
  // Contract digit k of every word with diag(1, O_k).
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t stride = std::size_t{1} << (2 * (n - 1 - k));
    const Mat3& o = rotation[k];
    for (std::size_t w = 0; w < coeffs.size(); ++w) {
      const std::size_t digit = (w / stride) % 4;
      if (digit == 0) {
        next[w] = coeffs[w];
        continue;
      }
      const std::size_t base = w - digit * stride;
      double sum = 0.0;
      for (std::size_t b = 1; b <= 3; ++b) sum += o[digit - 1][b - 1] * coeffs[base + b * stride];
      next[w] = sum;
    }
    coeffs.swap(next);
  }
  coeffs[0] = 1.0;
  return HSTensor(n, std::move(coeffs));
}

}  // namespace entangle
