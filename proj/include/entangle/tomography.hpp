#pragma once

// Pauli tomography: measure every qubit along one of the three Pauli axes
// (3^n settings), estimate all 4^n - 1 non-identity correlators from the
// outcome counts, and invert the Hilbert-Schmidt expansion.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/pauli_hs.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// One Pauli axis (1, 2 or 3) per qubit.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(std::vector<std::uint8_t> axes);
  /// Setting number `index` in base 3, qubit a most significant, digit d
  /// meaning axis d + 1.
  static MeasurementSetting from_index(std::size_t n_qubits, std::size_t index);
  static MeasurementSetting parse(std::string_view digits);

  std::size_t size() const { return axes_.size(); }
  std::uint8_t operator[](std::size_t k) const { return axes_[k]; }
  std::size_t index() const;
  std::string to_string() const;

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;

 private:
  std::vector<std::uint8_t> axes_;
};

std::size_t setting_count(std::size_t n_qubits);

/// Outcome bit k = 0 means eigenvalue +1 of the Pauli on qubit k.
/// Born probabilities for every outcome tuple under `setting`.
std::vector<double> born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting);

struct SettingRecord {
  MeasurementSetting setting;
  std::vector<std::uint64_t> counts;  // 2^n outcome tuples
};

class TomographyDataset {
 public:
  /// Throws ValidationError unless every one of the 3^n settings appears
  /// exactly once (any order) with counts summing to shots_per_setting.
  TomographyDataset(std::size_t n_qubits, std::uint64_t shots_per_setting,
                    std::vector<SettingRecord> records);

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t shots_per_setting() const { return shots_; }
  /// Records ordered by setting index.
  const std::vector<SettingRecord>& records() const { return records_; }

 private:
  std::size_t n_qubits_ = 0;
  std::uint64_t shots_ = 0;
  std::vector<SettingRecord> records_;
};

using ExpectationMap = std::map<PauliString, double>;

/// Tr(rho P_w) for all 4^n - 1 non-identity words.
ExpectationMap exact_expectations(const DensityMatrix& rho);

/// Samples shots_per_setting outcomes for every setting from the Born
/// distribution. Each setting draws from its own generator seeded by
/// (seed, setting index), so records do not depend on evaluation order.
TomographyDataset simulate_dataset(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed);

/// Relative outcome frequencies per setting, indexed by setting index.
using SettingFrequencies = std::vector<std::vector<double>>;

SettingFrequencies frequencies(const TomographyDataset& data);

/// Correlator estimates: for word w, the mean of (-1)^(parity of the outcome
/// bits on w's support), averaged with equal weights over every setting that
/// agrees with w on its support.
ExpectationMap estimate_expectations(std::size_t n_qubits, const SettingFrequencies& freqs);
ExpectationMap estimate_expectations(const TomographyDataset& data);

struct Reconstruction {
  ComplexMatrix raw;       // 2^-n (I + sum_w c_w P_w)
  ComplexMatrix estimate;  // repaired copy when repair ran, otherwise raw
  bool repaired = false;
  double raw_min_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;  // of estimate
  double purity = 0.0;          // Tr estimate^2
  double pure_defect = 0.0;     // ||estimate^2 - estimate||_F

  /// The estimate as a DensityMatrix; throws ValidationError if it is not one.
  DensityMatrix state() const;
};

/// Linear inversion. With `repair`, a raw matrix with negative eigenvalues is
/// replaced by the nearest density matrix in Frobenius norm.
/// Throws ValidationError unless the map holds exactly the 4^n - 1
/// non-identity words of one register size.
Reconstruction reconstruct(const ExpectationMap& expectations, bool repair);

/// Nearest density matrix in Frobenius norm: the spectrum is shifted by a
/// common offset and clipped at 0 so that it sums to 1.
ComplexMatrix psd_repair(const ComplexMatrix& m);

using DVector = std::array<double, 3>;

/// (<s1>, <s2>, -<s3>) of a single qubit.
DVector dvector(const DensityMatrix& rho);
DVector dvector(const PureState& psi);

}  // namespace entangle
