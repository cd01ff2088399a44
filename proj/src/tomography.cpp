#include "entangle/tomography.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

std::size_t pow_size(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// Columns: +1 eigenvector, then -1 eigenvector.
const ComplexMatrix& axis_eigenbasis(std::uint8_t axis) {
  const double h = 1.0 / std::numbers::sqrt2;
  static const std::array<ComplexMatrix, 3> kBases = {
      ComplexMatrix{{h, h}, {h, -h}},
      ComplexMatrix{{h, h}, {kI * h, -kI * h}},
      ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
  };
  return kBases.at(axis - 1);
}

std::size_t support_mask(const PauliString& word) {
  const std::size_t n = word.size();
  std::size_t mask = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (word[k] != 0) mask |= std::size_t{1} << (n - 1 - k);
  }
  return mask;
}

std::vector<std::uint64_t> sample_counts(std::span<const double> probs, std::uint64_t shots,
                                         std::mt19937_64& rng) {
  // Multinomial draw as a chain of conditional binomials.
  std::vector<std::uint64_t> counts(probs.size(), 0);
  std::uint64_t remaining = shots;
  double remaining_mass = 1.0;
  for (std::size_t k = 0; k + 1 < probs.size() && remaining > 0; ++k) {
    const double p = std::max(probs[k], 0.0);
    const double q = remaining_mass > 0.0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::uint64_t> draw(remaining, q);
    counts[k] = draw(rng);
    remaining -= counts[k];
    remaining_mass -= p;
  }
  counts.back() += remaining;
  return counts;
}

}  // namespace

MeasurementSetting::MeasurementSetting(std::vector<std::uint8_t> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || axes_.size() > kMaxQubits) {
    throw ValidationError("MeasurementSetting: length must be 1.." + std::to_string(kMaxQubits));
  }
  for (auto a : axes_) {
    if (a < 1 || a > 3) throw ValidationError("MeasurementSetting: axis must be 1, 2 or 3");
  }
}

MeasurementSetting MeasurementSetting::from_index(std::size_t n_qubits, std::size_t index) {
  if (index >= setting_count(n_qubits)) throw ValidationError("MeasurementSetting: index out of range");
  std::vector<std::uint8_t> axes(n_qubits);
  for (std::size_t k = n_qubits; k-- > 0;) {
    axes[k] = static_cast<std::uint8_t>(index % 3 + 1);
    index /= 3;
  }
  return MeasurementSetting(std::move(axes));
}

MeasurementSetting MeasurementSetting::parse(std::string_view digits) {
  std::vector<std::uint8_t> axes;
  for (char ch : digits) {
    if (ch < '1' || ch > '3') {
      throw ValidationError("MeasurementSetting: invalid axis '" + std::string(1, ch) + "'");
    }
    axes.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return MeasurementSetting(std::move(axes));
}

std::size_t MeasurementSetting::index() const {
  std::size_t idx = 0;
  for (auto a : axes_) idx = idx * 3 + (a - 1);
  return idx;
}

std::string MeasurementSetting::to_string() const {
  std::string out;
  for (auto a : axes_) out.push_back(static_cast<char>('0' + a));
  return out;
}

std::size_t setting_count(std::size_t n_qubits) { return pow_size(3, n_qubits); }

std::vector<double> born_probabilities(const DensityMatrix& rho, const MeasurementSetting& setting) {
  if (setting.size() != rho.n_qubits()) {
    throw ValidationError("born_probabilities: setting length does not match qubit count");
  }
  ComplexMatrix u = axis_eigenbasis(setting[0]);
  for (std::size_t k = 1; k < setting.size(); ++k) u = kron(u, axis_eigenbasis(setting[k]));
  const ComplexMatrix rotated = u.adjoint() * rho.matrix() * u;
  std::vector<double> probs(rotated.rows());
  for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::max(rotated(i, i).real(), 0.0);
  return probs;
}

TomographyDataset::TomographyDataset(std::size_t n_qubits, std::uint64_t shots_per_setting,
                                     std::vector<SettingRecord> records)
    : n_qubits_(n_qubits), shots_(shots_per_setting) {
  if (n_qubits_ == 0 || n_qubits_ > kMaxQubits) {
    throw ValidationError("TomographyDataset: qubit count out of range");
  }
  if (shots_ == 0) throw ValidationError("TomographyDataset: shots_per_setting must be positive");
  const std::size_t expected = setting_count(n_qubits_);
  if (records.size() != expected) {
    throw ValidationError("TomographyDataset: expected " + std::to_string(expected) +
                          " settings, got " + std::to_string(records.size()));
  }
  std::vector<bool> seen(expected, false);
  const std::size_t outcomes = std::size_t{1} << n_qubits_;
  for (const auto& rec : records) {
    if (rec.setting.size() != n_qubits_) {
      throw ValidationError("TomographyDataset: setting " + rec.setting.to_string() +
                            " has the wrong length");
    }
    const std::size_t idx = rec.setting.index();
    if (seen[idx]) {
      throw ValidationError("TomographyDataset: setting " + rec.setting.to_string() + " repeated");
    }
    seen[idx] = true;
    if (rec.counts.size() != outcomes) {
      throw ValidationError("TomographyDataset: setting " + rec.setting.to_string() + " has " +
                            std::to_string(rec.counts.size()) + " outcome counts, expected " +
                            std::to_string(outcomes));
    }
    std::uint64_t total = 0;
    for (auto c : rec.counts) total += c;
    if (total != shots_) {
      throw ValidationError("TomographyDataset: counts for setting " + rec.setting.to_string() +
                            " sum to " + std::to_string(total) + ", expected " +
                            std::to_string(shots_));
    }
  }
  std::sort(records.begin(), records.end(), [](const SettingRecord& x, const SettingRecord& y) {
    return x.setting.index() < y.setting.index();
  });
  records_ = std::move(records);
}

ExpectationMap exact_expectations(const DensityMatrix& rho) {
  const HSTensor tensor = hs_decompose(rho);
  ExpectationMap out;
  for (std::size_t w = 1; w < tensor.coeffs().size(); ++w) {
    out.emplace(PauliString::from_index(rho.n_qubits(), w), tensor[w]);
  }
  return out;
}

TomographyDataset simulate_dataset(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw ValidationError("simulate_dataset: shots must be positive");
  const std::size_t n = rho.n_qubits();
  std::vector<SettingRecord> records;
  for (std::size_t s = 0; s < setting_count(n); ++s) {
    auto setting = MeasurementSetting::from_index(n, s);
    const auto probs = born_probabilities(rho, setting);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    records.push_back({std::move(setting), sample_counts(probs, shots, rng)});
  }
  return TomographyDataset(n, shots, std::move(records));
}

SettingFrequencies frequencies(const TomographyDataset& data) {
  SettingFrequencies out;
  const double shots = static_cast<double>(data.shots_per_setting());
  for (const auto& rec : data.records()) {
    std::vector<double> f(rec.counts.size());
    for (std::size_t o = 0; o < f.size(); ++o) f[o] = static_cast<double>(rec.counts[o]) / shots;
    out.push_back(std::move(f));
  }
  return out;
}

ExpectationMap estimate_expectations(std::size_t n_qubits, const SettingFrequencies& freqs) {
  const std::size_t settings = setting_count(n_qubits);
  const std::size_t outcomes = std::size_t{1} << n_qubits;
  if (freqs.size() != settings) {
    throw ValidationError("estimate_expectations: expected " + std::to_string(settings) +
                          " settings");
  }
  for (const auto& f : freqs) {
    if (f.size() != outcomes) throw ValidationError("estimate_expectations: wrong outcome count");
  }

  ExpectationMap out;
  for (std::size_t w = 1; w < pow_size(4, n_qubits); ++w) {
    const auto word = PauliString::from_index(n_qubits, w);
    const std::size_t mask = support_mask(word);
    double sum = 0.0;
    std::size_t compatible = 0;
    for (std::size_t s = 0; s < settings; ++s) {
      const auto setting = MeasurementSetting::from_index(n_qubits, s);
      bool matches = true;
      for (std::size_t k = 0; k < n_qubits && matches; ++k) {
        matches = word[k] == 0 || word[k] == setting[k];
      }
      if (!matches) continue;
      double mean = 0.0;
      for (std::size_t o = 0; o < outcomes; ++o) {
        mean += (std::popcount(o & mask) % 2 == 0 ? 1.0 : -1.0) * freqs[s][o];
      }
      sum += mean;
      ++compatible;
    }
    out.emplace(word, sum / static_cast<double>(compatible));
  }
  return out;
}

ExpectationMap estimate_expectations(const TomographyDataset& data) {
  return estimate_expectations(data.n_qubits(), frequencies(data));
}

ComplexMatrix psd_repair(const ComplexMatrix& m) {
  const auto eig = herm_eig(m);
  // Euclidean projection of the spectrum onto the probability simplex.
  // Eigenvalues arrive in descending order.
  const auto& u = eig.eigenvalues;
  double prefix = 0.0, shift = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    prefix += u[k];
    const double candidate = (prefix - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) shift = candidate;
  }
  std::vector<double> clipped;
  for (double lambda : u) clipped.push_back(std::max(lambda - shift, 0.0));
  const auto& v = eig.eigenvectors;
  ComplexMatrix out = v * ComplexMatrix::diagonal(std::span<const double>(clipped)) * v.adjoint();
  // Exact Hermitian symmetry.
  for (std::size_t r = 0; r < out.rows(); ++r) {
    out(r, r) = out(r, r).real();
    for (std::size_t c = r + 1; c < out.cols(); ++c) {
      const Complex avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out(r, c) = avg;
      out(c, r) = std::conj(avg);
    }
  }
  return out;
}

DensityMatrix Reconstruction::state() const { return DensityMatrix(estimate); }

Reconstruction reconstruct(const ExpectationMap& expectations, bool repair) {
  if (expectations.empty()) throw ValidationError("reconstruct: empty expectation map");
  const std::size_t n = expectations.begin()->first.size();
  const std::size_t words = pow_size(4, n);
  if (n == 0 || n > kMaxQubits) throw ValidationError("reconstruct: qubit count out of range");
  std::vector<double> coeffs(words, 0.0);
  std::vector<bool> present(words, false);
  coeffs[0] = 1.0;
  present[0] = true;
  for (const auto& [word, value] : expectations) {
    if (word.size() != n) throw ValidationError("reconstruct: words of different lengths");
    if (word.is_identity()) throw ValidationError("reconstruct: identity word in expectation map");
    coeffs[word.index()] = value;
    present[word.index()] = true;
  }
  const auto missing = std::find(present.begin(), present.end(), false);
  if (missing != present.end()) {
    const auto word = PauliString::from_index(n, static_cast<std::size_t>(missing - present.begin()));
    throw ValidationError("reconstruct: incomplete expectation map, missing " + word.to_string());
  }

  const Composition composed = hs_compose(HSTensor(n, std::move(coeffs)));
  Reconstruction out;
  out.raw = composed.matrix;
  out.raw_min_eigenvalue = composed.min_eigenvalue;
  out.repaired = repair && composed.min_eigenvalue < 0.0;
  out.estimate = out.repaired ? psd_repair(out.raw) : out.raw;
  out.min_eigenvalue = out.repaired ? herm_eig(out.estimate).eigenvalues.back() : out.raw_min_eigenvalue;
  const auto report = purity_report(out.estimate);
  out.purity = report.purity;
  out.pure_defect = report.pure_defect;
  return out;
}

DVector dvector(const DensityMatrix& rho) {
  if (rho.n_qubits() != 1) {
    throw ValidationError("dvector: expected a single qubit, got " + std::to_string(rho.n_qubits()));
  }
  return {expectation(rho, pauli(1)), expectation(rho, pauli(2)), -expectation(rho, pauli(3))};
}

DVector dvector(const PureState& psi) {
  if (psi.n_qubits() != 1) {
    throw ValidationError("dvector: expected a single qubit, got " + std::to_string(psi.n_qubits()));
  }
  return dvector(density_from_pure(psi));
}

}  // namespace entangle
