#include <cmath>

#include <gtest/gtest.h>

#include "entangle/correlation.hpp"
#include "entangle/errors.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/states.hpp"
#include "support/random.hpp"

using namespace entangle;
using testsupport::Rng;

namespace {

const double kRt = 1.0 / std::sqrt(2.0);

// Reference splits for random tests.
std::vector<Bipartition> splits_for(std::size_t n) {
  std::vector<Bipartition> out;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> first;
    for (std::size_t q = 0; q < n; ++q) {
      if (mask >> q & 1) first.push_back(q);
    }
    out.emplace_back(n, first);
  }
  return out;
}

// Operator on the full register: A on S1 and B on S2, by explicit index
// bookkeeping rather than kron, so non-contiguous splits work too.
ComplexMatrix embed(const ComplexMatrix& a, const ComplexMatrix& b, const Bipartition& split) {
  const std::size_t n = split.n_qubits();
  const std::size_t dim = std::size_t{1} << n;
  auto part = [n](std::size_t idx, const std::vector<std::size_t>& qubits) {
    std::size_t out = 0;
    for (auto q : qubits) out = (out << 1) | ((idx >> (n - 1 - q)) & 1);
    return out;
  };
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      m(r, c) = a(part(r, split.first()), part(c, split.first())) *
                b(part(r, split.second()), part(c, split.second()));
    }
  }
  return m;
}

Complex sandwich(const PureState& psi, const ComplexMatrix& op) {
  const auto v = op * psi.amplitudes();
  return inner(psi.amplitudes(), v);
}

}  // namespace

TEST(BipartitionParse, Forms) {
  const auto split = Bipartition::parse("a|bc");
  EXPECT_EQ(split.n_qubits(), 3u);
  EXPECT_EQ(split.first(), (std::vector<std::size_t>{0}));
  EXPECT_EQ(split.second(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(split.to_string(), "a|bc");
  EXPECT_EQ(Bipartition::parse("b|ac").first(), (std::vector<std::size_t>{1}));
  EXPECT_THROW(Bipartition::parse("abc|"), ValidationError);
  EXPECT_THROW(Bipartition::parse("a|a"), ValidationError);
  EXPECT_THROW(Bipartition::parse("ab"), ValidationError);
}

TEST(Schmidt, Singlet) {
  const auto dec = schmidt(singlet(), Bipartition::parse("a|b"));
  ASSERT_EQ(dec.coefficients.size(), 2u);
  EXPECT_NEAR(dec.coefficients[0], kRt, 1e-14);
  EXPECT_NEAR(dec.coefficients[1], kRt, 1e-14);
  EXPECT_LE(distance(dec.reconstruct(), singlet().amplitudes()), 1e-12);
}

TEST(Schmidt, ProductState) {
  const auto dec = schmidt(PureState::basis(2, 1), Bipartition::parse("a|b"));
  EXPECT_NEAR(dec.coefficients[0], 1.0, 1e-15);
  EXPECT_NEAR(dec.coefficients[1], 0.0, 1e-15);
}

TEST(Schmidt, GhzThreeSplit) {
  const auto dec = schmidt(ghz(3), Bipartition::parse("a|bc"));
  ASSERT_EQ(dec.coefficients.size(), 2u);
  EXPECT_NEAR(dec.coefficients[0], kRt, 1e-14);
  EXPECT_NEAR(dec.coefficients[1], kRt, 1e-14);
  EXPECT_LE(distance(dec.reconstruct(), ghz(3).amplitudes()), 1e-12);
}

TEST(Schmidt, RandomInvariants) {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const auto psi = rng.pure_state(n);
    const auto rho = density_from_pure(psi).matrix();
    const std::vector<std::size_t> dims(n, 2);
    for (const auto& split : splits_for(n)) {
      const auto dec = schmidt(psi, split);
      double total = 0.0;
      for (double a : dec.coefficients) total += a * a;
      EXPECT_NEAR(total, 1.0, 1e-10);
      EXPECT_LE(distance(dec.reconstruct(), psi.amplitudes()), 1e-9);
      for (std::size_t i = 0; i < dec.basis_first.size(); ++i) {
        for (std::size_t j = 0; j < dec.basis_first.size(); ++j) {
          EXPECT_NEAR(std::abs(inner(dec.basis_first[i], dec.basis_first[j])), i == j ? 1.0 : 0.0, 1e-10);
          EXPECT_NEAR(std::abs(inner(dec.basis_second[i], dec.basis_second[j])), i == j ? 1.0 : 0.0,
                      1e-10);
        }
      }
      const auto eig_a = herm_eig(partial_trace(rho, dims, split.first())).eigenvalues;
      const auto eig_b = herm_eig(partial_trace(rho, dims, split.second())).eigenvalues;
      for (std::size_t k = 0; k < dec.coefficients.size(); ++k) {
        const double a2 = dec.coefficients[k] * dec.coefficients[k];
        EXPECT_NEAR(a2, eig_a[k], 1e-9);
        EXPECT_NEAR(a2, eig_b[k], 1e-9);
      }
    }
  }
}

TEST(Schmidt, CoefficientsInvariantUnderLocalUnitaries) {
  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = rng.pure_state(3);
    const auto split = Bipartition::parse("a|bc");
    const auto u = kron(rng.unitary(2), rng.unitary(4));
    const auto turned = PureState::normalized(u * psi.amplitudes());
    const auto before = schmidt(psi, split).coefficients;
    const auto after = schmidt(turned, split).coefficients;
    for (std::size_t k = 0; k < before.size(); ++k) EXPECT_NEAR(before[k], after[k], 1e-9);
  }
}

TEST(Schmidt, OwnBasisGivesDiagonalTable) {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = rng.pure_state(2);
    const auto dec = schmidt(psi, Bipartition::parse("a|b"));
    const auto table = joint_distribution(psi, MeasurementBasis::schmidt(psi));
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const std::vector<std::size_t> ij{i, j};
        const double a2 = dec.coefficients[i] * dec.coefficients[i];
        EXPECT_NEAR(table.at(ij), i == j ? a2 : 0.0, 1e-10);
      }
    }
  }
}

TEST(Schmidt, Deterministic) {
  Rng rng(109);
  const auto psi = rng.pure_state(3);
  const auto a = schmidt(psi, Bipartition::parse("ab|c"));
  const auto b = schmidt(psi, Bipartition::parse("ab|c"));
  EXPECT_EQ(a.coefficients, b.coefficients);
  EXPECT_EQ(a.basis_first, b.basis_first);
  EXPECT_EQ(a.basis_second, b.basis_second);
}

TEST(RelativeState, SingletGivesOppositeLevel) {
  const auto rel = relative_state(singlet(), PureState::basis(1, 0), Bipartition::parse("a|b"));
  // Raw partial inner product is -|2>_a; compare up to phase.
  EXPECT_NEAR(std::abs(rel[1]), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(rel[0]), 0.0, 1e-14);
}

TEST(RelativeState, ProductStateReturnsFactor) {
  Rng rng(113);
  for (int trial = 0; trial < 50; ++trial) {
    const auto zeta = rng.pure_state(1);
    const auto eta0 = rng.pure_state(2);
    const auto eta = rng.pure_state(2);
    const auto rel = relative_state(tensor(zeta, eta0), eta, Bipartition::parse("a|bc"));
    EXPECT_NEAR(std::abs(inner(rel.amplitudes(), zeta.amplitudes())), 1.0, 1e-10);
  }
}

TEST(RelativeState, GhzConditionedOnBc) {
  const auto rel = relative_state(ghz(3), PureState::basis(2, 0), Bipartition::parse("a|bc"));
  EXPECT_NEAR(std::abs(rel[0]), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(rel[1]), 0.0, 1e-14);
}

TEST(RelativeState, ZeroOverlapIsAnError) {
  EXPECT_THROW(relative_state(PureState::basis(2, 0), PureState::basis(1, 1), Bipartition::parse("a|b")),
               ValidationError);
  EXPECT_THROW(relative_state(ghz(3), PureState::basis(2, 1), Bipartition::parse("a|bc")),
               ValidationError);
}

TEST(RelativeState, WrongEtaSizeIsAnError) {
  EXPECT_THROW(relative_state(ghz(3), PureState::basis(1, 0), Bipartition::parse("a|bc")),
               ValidationError);
}

TEST(RelativeState, ConditionalExpectations) {
  Rng rng(127);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(2);
    const auto psi = rng.pure_state(n);
    const auto splits = splits_for(n);
    const auto& split = splits[rng.index(splits.size())];
    const auto eta = rng.pure_state(split.second().size());
    const auto a = rng.hermitian(split.first_dimension());
    const auto proj = ComplexMatrix::outer(eta.amplitudes(), eta.amplitudes());
    const auto id = ComplexMatrix::identity(split.first_dimension());
    const Complex num = sandwich(psi, embed(a, proj, split));
    const Complex den = sandwich(psi, embed(id, proj, split));
    const auto rel = relative_state(psi, eta, split);
    const Complex rhs = inner(rel.amplitudes(), a * rel.amplitudes());
    EXPECT_NEAR((num / den).real(), rhs.real(), 1e-9);
    EXPECT_NEAR((num / den).imag(), 0.0, 1e-9);
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}
