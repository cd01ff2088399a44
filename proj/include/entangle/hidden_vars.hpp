#pragma once

// Finite local hidden-variable models and the refined Shannon index.
//
// A model is {P_lambda, P(i|lambda), P(j|lambda)}. The joint quantities are
// read as P_{i lambda} = P_lambda P(i|lambda) and
// P_{ij lambda} = P_lambda P(i|lambda) P(j|lambda), so that
// sum_lambda P_{i lambda} = P_i and sum_lambda P_{ij lambda} = P_ij.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "entangle/correlation.hpp"

namespace entangle {

using StochasticMatrix = std::vector<std::vector<double>>;

class HVModel {
 public:
  /// Throws ValidationError on negative entries, weights not summing to 1
  /// within 1e-12, or conditional rows not summing to 1 within 1e-12.
  HVModel(std::vector<double> weights, StochasticMatrix cond_a, StochasticMatrix cond_b);

  std::size_t lambda_count() const { return weights_.size(); }
  std::size_t outcomes_a() const { return cond_a_.front().size(); }
  std::size_t outcomes_b() const { return cond_b_.front().size(); }
  const std::vector<double>& weights() const { return weights_; }
  const StochasticMatrix& cond_a() const { return cond_a_; }
  const StochasticMatrix& cond_b() const { return cond_b_; }

  /// P_{ij lambda}
  double refined(std::size_t i, std::size_t j, std::size_t lambda) const {
    return weights_[lambda] * cond_a_[lambda][i] * cond_b_[lambda][j];
  }

 private:
  std::vector<double> weights_;
  StochasticMatrix cond_a_;
  StochasticMatrix cond_b_;
};

/// Uniform lambda over d values, each side reporting lambda exactly.
HVModel copier_model(std::size_t d);
/// Conditionals that ignore lambda.
HVModel lambda_independent_model(std::vector<double> weights, std::vector<double> p_a,
                                 std::vector<double> p_b);

struct HVSizes {
  std::size_t lambdas = 1;
  std::size_t outcomes_a = 2;
  std::size_t outcomes_b = 2;
};

/// Weights and conditional rows are independent uniform(0, 1] draws,
/// normalized. Deterministic per seed.
HVModel random_model(std::uint64_t seed, const HVSizes& sizes);

/// P_ij = sum_lambda P_{ij lambda}.
ProbabilityTable induced_joint(const HVModel& model);

/// sum_{ij lambda} P_{ij lambda} ln(P_{ij lambda} / (P_i P_j P_lambda)), nats.
double hv_shannon_index(const HVModel& model);

struct RefinementReport {
  double i_hv = 0.0;
  double i_shann = 0.0;
  double gap = 0.0;
  /// P_{ij lambda} = P_lambda C_ij for a lambda-independent C.
  bool equality = false;
};

RefinementReport check_refinement(const HVModel& model);

struct LogSumResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = sum x ln(x / a), rhs = (sum x) ln(sum x / sum a), with 0 ln(0/a) = 0
/// and x > 0 = a giving +inf. Throws ValidationError on negative entries or
/// length mismatch.
LogSumResult logsum_check(std::span<const double> x, std::span<const double> a);

}  // namespace entangle
