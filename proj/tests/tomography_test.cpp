#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "entangle/errors.hpp"
#include "entangle/pauli_hs.hpp"
#include "entangle/states.hpp"
#include "entangle/tomography.hpp"
#include "support/random.hpp"

using namespace entangle;
using testsupport::Rng;

namespace {

const double kRt = 1.0 / std::sqrt(2.0);

// +1 eigenvector of each Pauli axis, written out.
ComplexVector plus_vector(std::uint8_t axis) {
  switch (axis) {
    case 1: return {kRt, kRt};
    case 2: return {kRt, Complex(0, kRt)};
    default: return {1.0, 0.0};
  }
}

ComplexVector minus_vector(std::uint8_t axis) {
  switch (axis) {
    case 1: return {kRt, -kRt};
    case 2: return {kRt, Complex(0, -kRt)};
    default: return {0.0, 1.0};
  }
}

std::vector<double> born_by_projectors(const DensityMatrix& rho, const MeasurementSetting& setting) {
  const std::size_t n = setting.size();
  std::vector<double> out;
  for (std::size_t outcome = 0; outcome < (std::size_t{1} << n); ++outcome) {
    ComplexVector v{1.0};
    for (std::size_t k = 0; k < n; ++k) {
      const bool minus = (outcome >> (n - 1 - k)) & 1;
      v = kron(v, minus ? minus_vector(setting[k]) : plus_vector(setting[k]));
    }
    out.push_back(inner(v, rho.matrix() * v).real());
  }
  return out;
}

SettingFrequencies exact_frequencies(const DensityMatrix& rho) {
  SettingFrequencies freqs;
  for (std::size_t s = 0; s < setting_count(rho.n_qubits()); ++s) {
    freqs.push_back(born_probabilities(rho, MeasurementSetting::from_index(rho.n_qubits(), s)));
  }
  return freqs;
}

const ComplexMatrix kSingletRho{{0, 0, 0, 0}, {0, 0.5, -0.5, 0}, {0, -0.5, 0.5, 0}, {0, 0, 0, 0}};

}  // namespace

TEST(Settings, IndexingAndCount) {
  EXPECT_EQ(setting_count(1), 3u);
  EXPECT_EQ(setting_count(2), 9u);
  EXPECT_EQ(setting_count(3), 27u);
  for (std::size_t s = 0; s < 27; ++s) {
    const auto setting = MeasurementSetting::from_index(3, s);
    EXPECT_EQ(setting.index(), s);
    EXPECT_EQ(MeasurementSetting::parse(setting.to_string()), setting);
  }
  EXPECT_EQ(MeasurementSetting::from_index(2, 0).to_string(), "11");
  EXPECT_THROW(MeasurementSetting::parse("10"), ValidationError);
}

TEST(BornProbabilities, MatchProjectorOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const auto rho = rng.mixed_state(n);
    for (std::size_t s = 0; s < setting_count(n); ++s) {
      const auto setting = MeasurementSetting::from_index(n, s);
      const auto got = born_probabilities(rho, setting);
      const auto want = born_by_projectors(rho, setting);
      for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-14);
    }
  }
}

TEST(ExactExpectations, Counts) {
  EXPECT_EQ(exact_expectations(DensityMatrix::maximally_mixed(1)).size(), 3u);
  EXPECT_EQ(exact_expectations(DensityMatrix::maximally_mixed(2)).size(), 15u);
  EXPECT_EQ(exact_expectations(DensityMatrix::maximally_mixed(3)).size(), 63u);
}

TEST(ExactExpectations, Singlet) {
  std::size_t nonzero = 0;
  for (const auto& [word, value] : exact_expectations(density_from_pure(singlet()))) {
    const auto w = word.to_string();
    const bool diag = w == "11" || w == "22" || w == "33";
    EXPECT_NEAR(value, diag ? -1.0 : 0.0, 1e-12) << w;
    if (std::abs(value) > 1e-12) ++nonzero;
  }
  EXPECT_EQ(nonzero, 3u);
}

TEST(ExactExpectations, MaximallyMixedAndGhz) {
  for (const auto& [word, value] : exact_expectations(DensityMatrix::maximally_mixed(2))) {
    EXPECT_EQ(value, 0.0) << word.to_string();
  }
  std::size_t nonzero = 0;
  for (const auto& [word, value] : exact_expectations(density_from_pure(ghz(3)))) {
    if (std::abs(value) > 1e-12) ++nonzero;
  }
  EXPECT_EQ(nonzero, 7u);
}

TEST(Simulate, SingletZZOnlyAntiCorrelated) {
  const auto rho = density_from_pure(singlet());
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto data = simulate_dataset(rho, 1000, seed);
    const auto& zz = data.records()[MeasurementSetting::parse("33").index()];
    EXPECT_EQ(zz.counts[0], 0u);
    EXPECT_EQ(zz.counts[3], 0u);
    EXPECT_EQ(zz.counts[1] + zz.counts[2], 1000u);
  }
}

TEST(Simulate, EigenstateIsDeterministic) {
  const auto data = simulate_dataset(density_from_pure(PureState::basis(1, 0)), 500, 9);
  EXPECT_EQ(data.records()[2].counts, (std::vector<std::uint64_t>{500, 0}));
}

TEST(Simulate, DeterministicPerSeed) {
  const auto rho = density_from_pure(ghz(3));
  const auto a = simulate_dataset(rho, 200, 77);
  const auto b = simulate_dataset(rho, 200, 77);
  const auto c = simulate_dataset(rho, 200, 78);
  bool differs = false;
  for (std::size_t s = 0; s < a.records().size(); ++s) {
    EXPECT_EQ(a.records()[s].counts, b.records()[s].counts);
    differs |= a.records()[s].counts != c.records()[s].counts;
  }
  EXPECT_TRUE(differs);
}

TEST(Simulate, FrequenciesWithinFiveSigma) {
  Rng rng(5);
  const std::uint64_t shots = 100000;
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto rho = rng.mixed_state(n);
    const auto data = simulate_dataset(rho, shots, rng.bits());
    for (const auto& rec : data.records()) {
      const auto probs = born_by_projectors(rho, rec.setting);
      for (std::size_t k = 0; k < probs.size(); ++k) {
        const double p = std::clamp(probs[k], 0.0, 1.0);
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(shots));
        const double freq = static_cast<double>(rec.counts[k]) / static_cast<double>(shots);
        EXPECT_LE(std::abs(freq - p), 5 * sigma + 1e-12);
      }
    }
  }
}

TEST(Dataset, Validation) {
  std::vector<SettingRecord> recs;
  for (std::size_t s = 0; s < 3; ++s) recs.push_back({MeasurementSetting::from_index(1, s), {6, 4}});
  EXPECT_NO_THROW(TomographyDataset(1, 10, recs));
  EXPECT_THROW(TomographyDataset(1, 11, recs), ValidationError);
  auto missing = recs;
  missing.pop_back();
  EXPECT_THROW(TomographyDataset(1, 10, missing), ValidationError);
  auto duplicated = recs;
  duplicated[2] = duplicated[0];
  EXPECT_THROW(TomographyDataset(1, 10, duplicated), ValidationError);
  auto reordered = recs;
  std::swap(reordered[0], reordered[2]);
  EXPECT_EQ(TomographyDataset(1, 10, reordered).records()[0].setting.to_string(), "1");
}

TEST(Estimator, InfiniteShotSurrogateIsExact) {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const auto rho = trial % 2 ? rng.mixed_state(n) : density_from_pure(rng.pure_state(n));
    const auto estimates = estimate_expectations(n, exact_frequencies(rho));
    const auto exact = exact_expectations(rho);
    ASSERT_EQ(estimates.size(), exact.size());
    for (const auto& [word, value] : exact) EXPECT_NEAR(estimates.at(word), value, 1e-12);
  }
}

TEST(Estimator, SingletAtMillionShots) {
  const auto rho = density_from_pure(singlet());
  const auto exact = exact_expectations(rho);
  const auto estimates = estimate_expectations(simulate_dataset(rho, 1000000, 2));
  for (const auto& [word, value] : exact) EXPECT_NEAR(estimates.at(word), value, 0.01);
}

TEST(Estimator, MaximallyMixedAtMillionShots) {
  const auto estimates = estimate_expectations(simulate_dataset(DensityMatrix::maximally_mixed(2), 1000000, 4));
  for (const auto& [word, value] : estimates) EXPECT_NEAR(value, 0.0, 0.01) << word.to_string();
}

TEST(Estimator, UnbiasedOverSeeds) {
  const auto rho = density_from_pure(singlet());
  const auto exact = exact_expectations(rho);
  const std::uint64_t shots = 10000;
  const int seeds = 50;
  std::map<PauliString, double> mean;
  for (int seed = 0; seed < seeds; ++seed) {
    for (const auto& [word, value] : estimate_expectations(simulate_dataset(rho, shots, 1000 + seed))) {
      mean[word] += value / seeds;
    }
  }
  for (const auto& [word, truth] : exact) {
    // Each compatible setting contributes an independent +-1 average.
    std::size_t compatible = 1;
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (word[k] == 0) compatible *= 3;
    }
    const double se = std::sqrt((1 - truth * truth) / (static_cast<double>(compatible * shots) * seeds));
    EXPECT_LE(std::abs(mean[word] - truth), 3 * se + 1e-12) << word.to_string();
  }
}

TEST(Reconstruct, ExactSingletData) {
  const auto result = reconstruct(exact_expectations(density_from_pure(singlet())), false);
  EXPECT_LE((result.estimate - kSingletRho).max_abs(), 1e-12);
  EXPECT_LE(result.pure_defect, 1e-12);
  EXPECT_FALSE(result.repaired);
}

TEST(Reconstruct, ZeroExpectationsGiveMaximallyMixed) {
  for (std::size_t n = 1; n <= 3; ++n) {
    ExpectationMap zeros;
    for (std::size_t w = 1; w < (std::size_t{1} << (2 * n)); ++w) zeros[PauliString::from_index(n, w)] = 0.0;
    const auto result = reconstruct(zeros, true);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);
    EXPECT_LE((result.estimate - scale * ComplexMatrix::identity(std::size_t{1} << n)).max_abs(), 1e-16);
  }
}

TEST(Reconstruct, IncompleteMapIsRejected) {
  auto values = exact_expectations(density_from_pure(singlet()));
  values.erase(PauliString::parse("12"));
  EXPECT_THROW(reconstruct(values, false), ValidationError);
  values[PauliString::parse("12")] = 0.0;
  values[PauliString::parse("123")] = 0.0;
  EXPECT_THROW(reconstruct(values, false), ValidationError);
  EXPECT_THROW(reconstruct({}, false), ValidationError);
}

TEST(Reconstruct, RoundTripRandomStates) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const auto rho = density_from_pure(rng.pure_state(n));
    const auto result = reconstruct(exact_expectations(rho), false);
    EXPECT_LE(distance(result.estimate, rho.matrix()), 1e-10);
  }
}

TEST(Reconstruct, RepairAlwaysYieldsValidState) {
  Rng rng(13);
  int repaired = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    const auto rho = density_from_pure(rng.pure_state(n));
    const auto result = reconstruct(estimate_expectations(simulate_dataset(rho, 50, rng.bits())), true);
    if (result.repaired) ++repaired;
    EXPECT_GE(herm_eig(result.estimate).eigenvalues.back(), -1e-12);
    EXPECT_NEAR(result.estimate.trace().real(), 1.0, 1e-12);
    EXPECT_NO_THROW(result.state());
  }
  EXPECT_GT(repaired, 0);
}

TEST(Reconstruct, SingletFidelityAtMillionShots) {
  const auto psi = singlet();
  const auto rho = density_from_pure(psi);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto result = reconstruct(estimate_expectations(simulate_dataset(rho, 1000000, seed)), true);
    EXPECT_GE(fidelity(psi, result.estimate), 0.999);
  }
}

TEST(PsdRepair, ShiftsAndClips) {
  const std::vector<double> d{0.7, 0.5, -0.2};
  const auto repaired = psd_repair(ComplexMatrix::diagonal(std::span<const double>(d)));
  EXPECT_NEAR(repaired(0, 0).real(), 0.6, 1e-15);
  EXPECT_NEAR(repaired(1, 1).real(), 0.4, 1e-15);
  EXPECT_NEAR(std::abs(repaired(2, 2)), 0.0, 1e-15);
}

TEST(PsdRepair, SpectrumMatchesBisectionOracle) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = rng.hermitian(trial % 2 == 0 ? 2 : 4);
    const double tr = m.trace().real();
    const std::size_t dim = m.rows();
    // Unit trace with some negative eigenvalues.
    for (std::size_t r = 0; r < dim; ++r) m(r, r) += (1.0 - tr) / static_cast<double>(dim);
    const auto u = herm_eig(m).eigenvalues;
    // Offset mu with sum(max(u - mu, 0)) = 1, by bisection.
    double lo = u.back() - 1.0, hi = u.front();
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      double sum = 0.0;
      for (double x : u) sum += std::max(x - mid, 0.0);
      (sum > 1.0 ? lo : hi) = mid;
    }
    const auto repaired = psd_repair(m);
    const auto got = herm_eig(repaired).eigenvalues;
    double total = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      EXPECT_NEAR(got[k], std::max(u[k] - lo, 0.0), 1e-10);
      total += got[k];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_TRUE(repaired.is_hermitian(0.0));
  }
}

TEST(DVectorCheck, Examples) {
  const auto one = dvector(PureState::basis(1, 0));
  EXPECT_NEAR(one[0], 0.0, 1e-12);
  EXPECT_NEAR(one[1], 0.0, 1e-12);
  EXPECT_NEAR(one[2], -1.0, 1e-12);
  const auto plus = dvector(PureState(ComplexVector{kRt, kRt}));
  EXPECT_NEAR(plus[0], 1.0, 1e-15);
  EXPECT_NEAR(plus[1], 0.0, 1e-15);
  EXPECT_NEAR(plus[2], 0.0, 1e-15);
  const auto mixed = dvector(DensityMatrix::maximally_mixed(1));
  EXPECT_EQ(mixed[0] * mixed[0] + mixed[1] * mixed[1] + mixed[2] * mixed[2], 0.0);
  EXPECT_THROW(dvector(singlet()), ValidationError);
}

TEST(DVectorCheck, PrintedAmplitudeFormulas) {
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto psi = rng.pure_state(1);
    const Complex c1 = psi[0], c2 = psi[1];
    const auto d = dvector(psi);
    EXPECT_NEAR(d[0], (std::conj(c1) * c2 + std::conj(c2) * c1).real(), 1e-12);
    EXPECT_NEAR(d[2], std::norm(c2) - std::norm(c1), 1e-12);
    EXPECT_NEAR(d[0] * d[0] + d[1] * d[1] + d[2] * d[2], 1.0, 1e-10);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = dvector(rng.mixed_state(1));
    EXPECT_LE(d[0] * d[0] + d[1] * d[1] + d[2] * d[2], 1.0 + 1e-12);
  }
}
