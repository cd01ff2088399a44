#pragma once

// Joint outcome distributions of product measurements, the Shannon index of
// correlation (classical mutual information of those outcomes), von Neumann
// entropy and the quantum index of correlation. All entropies are computed in
// nats; `Unit` converts on output.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/pauli_hs.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/states.hpp"

namespace entangle {

enum class Unit { kNats, kBits };

double convert(double nats, Unit unit);
std::string_view unit_name(Unit unit);
Unit parse_unit(std::string_view text);

/// One orthonormal basis per qubit. Column k of each 2x2 unitary is the
/// state measured as outcome k.
class MeasurementBasis {
 public:
  /// Throws ValidationError unless every matrix is 2x2 with Gram matrix I
  /// within 1e-10.
  explicit MeasurementBasis(std::vector<ComplexMatrix> per_party);

  /// sigma_3 eigenbasis on every qubit (outcome 0 = |1>).
  static MeasurementBasis computational(std::size_t n_parties);
  /// Eigenbasis of n.sigma for each unit axis, outcome 0 = eigenvalue +1.
  static MeasurementBasis from_axes(std::span<const Vec3> axes);
  /// The product of the two Schmidt bases of a two-qubit pure state.
  static MeasurementBasis schmidt(const PureState& psi);
  /// Each qubit's basis is a rotation exp(-i angle n.sigma / 2) of the
  /// computational one, axis uniform on the sphere and angle uniform in
  /// [0, 2 pi), drawn from a generator seeded with `seed`.
  static MeasurementBasis random(std::size_t n_parties, std::uint64_t seed);

  std::size_t size() const { return bases_.size(); }
  const ComplexMatrix& operator[](std::size_t k) const { return bases_[k]; }

 private:
  std::vector<ComplexMatrix> bases_;
};

/// exp(-i angle n.sigma / 2) for a unit axis n.
ComplexMatrix su2_rotation(const Vec3& axis, double angle);

/// Joint distribution over outcome tuples, first party most significant.
class ProbabilityTable {
 public:
  /// Entries down to -1e-12 are clamped to 0; the total must be 1 within 1e-10.
  ProbabilityTable(std::vector<std::size_t> dims, std::vector<double> probs);

  std::size_t n_parties() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t flat) const { return probs_[flat]; }
  /// P over tuples, e.g. at({i, j}).
  double at(std::span<const std::size_t> outcome) const;
  std::vector<double> marginal(std::size_t party) const;
  /// Digits of a flat index.
  std::vector<std::size_t> outcome(std::size_t flat) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> probs_;
};

ProbabilityTable joint_distribution(const PureState& psi, const MeasurementBasis& basis);
ProbabilityTable joint_distribution(const DensityMatrix& rho, const MeasurementBasis& basis);

/// sum P log(P / prod_k P_k), zero-probability terms dropped.
double shannon_index(const ProbabilityTable& table, Unit unit = Unit::kNats);

/// -Tr rho ln rho in nats; eigenvalues below 1e-14 are skipped.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const ComplexMatrix& rho);

/// Per-qubit reduced states rho_k.
std::vector<ComplexMatrix> single_party_reductions(const DensityMatrix& rho);

/// sum_k S(rho_k) - S(rho), one party per qubit.
double quantum_index(const DensityMatrix& rho);
/// sum_k S(rho_k) - S(rho) over the given parties (disjoint qubit groups
/// covering the register).
double quantum_index(const DensityMatrix& rho, std::span<const std::vector<std::size_t>> parties);

}  // namespace entangle
