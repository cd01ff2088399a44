#include "entangle/hidden_vars.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kRatioTolerance = 1e-9;
constexpr double kNegligibleWeight = 1e-12;

void check_distribution(std::span<const double> p, const std::string& what) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) throw ValidationError(what + "[" + std::to_string(i) + "] is negative");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError(what + " sums to " + std::to_string(sum) + ", expected 1");
  }
}

void check_conditional(const StochasticMatrix& cond, std::size_t lambdas, const std::string& what) {
  if (cond.size() != lambdas) {
    throw ValidationError(what + " has " + std::to_string(cond.size()) + " rows for " +
                          std::to_string(lambdas) + " hidden-variable values");
  }
  if (cond.front().empty()) throw ValidationError(what + " has no outcomes");
  for (std::size_t l = 0; l < cond.size(); ++l) {
    if (cond[l].size() != cond.front().size()) throw ValidationError(what + " is ragged");
    check_distribution(cond[l], what + "[" + std::to_string(l) + "]");
  }
}

std::vector<double> uniform_simplex(std::mt19937_64& rng, std::size_t size) {
  // Half-open (0, 1]: 1 - U[0, 1) never yields zero.
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> out(size);
  for (auto& x : out) x = 1.0 - uniform(rng);
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (auto& x : out) x /= sum;
  return out;
}

}  // namespace

HVModel::HVModel(std::vector<double> weights, StochasticMatrix cond_a, StochasticMatrix cond_b)
    : weights_(std::move(weights)), cond_a_(std::move(cond_a)), cond_b_(std::move(cond_b)) {
  if (weights_.empty()) throw ValidationError("HVModel: no hidden-variable values");
  check_distribution(weights_, "weights");
  check_conditional(cond_a_, weights_.size(), "cond_a");
  check_conditional(cond_b_, weights_.size(), "cond_b");
}

HVModel copier_model(std::size_t d) {
  if (d == 0) throw ValidationError("copier_model: d must be positive");
  StochasticMatrix cond(d, std::vector<double>(d, 0.0));
  for (std::size_t l = 0; l < d; ++l) cond[l][l] = 1.0;
  return HVModel(std::vector<double>(d, 1.0 / static_cast<double>(d)), cond, cond);
}

HVModel lambda_independent_model(std::vector<double> weights, std::vector<double> p_a,
                                 std::vector<double> p_b) {
  const std::size_t lambdas = weights.size();
  return HVModel(std::move(weights), StochasticMatrix(lambdas, p_a), StochasticMatrix(lambdas, p_b));
}

HVModel random_model(std::uint64_t seed, const HVSizes& sizes) {
  if (sizes.lambdas == 0 || sizes.outcomes_a == 0 || sizes.outcomes_b == 0) {
    throw ValidationError("random_model: sizes must be positive");
  }
  std::mt19937_64 rng(seed);
  auto weights = uniform_simplex(rng, sizes.lambdas);
  StochasticMatrix cond_a, cond_b;
  for (std::size_t l = 0; l < sizes.lambdas; ++l) cond_a.push_back(uniform_simplex(rng, sizes.outcomes_a));
  for (std::size_t l = 0; l < sizes.lambdas; ++l) cond_b.push_back(uniform_simplex(rng, sizes.outcomes_b));
  return HVModel(std::move(weights), std::move(cond_a), std::move(cond_b));
}

ProbabilityTable induced_joint(const HVModel& model) {
  const std::size_t da = model.outcomes_a();
  const std::size_t db = model.outcomes_b();
  std::vector<double> probs(da * db, 0.0);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      for (std::size_t l = 0; l < model.lambda_count(); ++l) probs[i * db + j] += model.refined(i, j, l);
    }
  }
  return ProbabilityTable({da, db}, std::move(probs));
}

double hv_shannon_index(const HVModel& model) {
  const auto table = induced_joint(model);
  const auto pa = table.marginal(0);
  const auto pb = table.marginal(1);
  double sum = 0.0;
  for (std::size_t i = 0; i < model.outcomes_a(); ++i) {
    for (std::size_t j = 0; j < model.outcomes_b(); ++j) {
      for (std::size_t l = 0; l < model.lambda_count(); ++l) {
        const double p = model.refined(i, j, l);
        if (p <= 0.0) continue;
        sum += p * std::log(p / (pa[i] * pb[j] * model.weights()[l]));
      }
    }
  }
  return sum;
}

RefinementReport check_refinement(const HVModel& model) {
  RefinementReport report;
  report.i_hv = hv_shannon_index(model);
  report.i_shann = shannon_index(induced_joint(model));
  report.gap = report.i_hv - report.i_shann;

  // Equality iff P_{ij lambda} / P_lambda = P(i|lambda) P(j|lambda) does not
  // depend on lambda (over lambdas with non-negligible weight).
  report.equality = true;
  for (std::size_t i = 0; i < model.outcomes_a() && report.equality; ++i) {
    for (std::size_t j = 0; j < model.outcomes_b() && report.equality; ++j) {
      bool have_reference = false;
      double reference = 0.0;
      for (std::size_t l = 0; l < model.lambda_count(); ++l) {
        if (model.weights()[l] <= kNegligibleWeight) continue;
        const double ratio = model.cond_a()[l][i] * model.cond_b()[l][j];
        if (!have_reference) {
          reference = ratio;
          have_reference = true;
        } else if (std::abs(ratio - reference) > kRatioTolerance) {
          report.equality = false;
          break;
        }
      }
    }
  }
  return report;
}

LogSumResult logsum_check(std::span<const double> x, std::span<const double> a) {
  if (x.size() != a.size()) throw ValidationError("logsum_check: length mismatch");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double lhs = 0.0, sum_x = 0.0, sum_a = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= 0.0) || !(a[k] >= 0.0)) {
      throw ValidationError("logsum_check: entry " + std::to_string(k) + " is negative");
    }
    sum_x += x[k];
    sum_a += a[k];
    if (x[k] == 0.0) continue;
    lhs += a[k] == 0.0 ? kInf : x[k] * std::log(x[k] / a[k]);
  }
  double rhs = 0.0;
  if (sum_x > 0.0) rhs = sum_a == 0.0 ? kInf : sum_x * std::log(sum_x / sum_a);
  return {lhs, rhs, lhs >= rhs - 1e-12};
}

}  // namespace entangle
