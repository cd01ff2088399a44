#include "entangle/correlation.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

constexpr double kProbabilityFloor = 1e-15;
constexpr double kEigenvalueFloor = 1e-14;
constexpr double kGramTolerance = 1e-10;

ComplexMatrix product_unitary(const MeasurementBasis& basis) {
  ComplexMatrix u = basis[0];
  for (std::size_t k = 1; k < basis.size(); ++k) u = kron(u, basis[k]);
  return u;
}

void require_arity(std::size_t n_qubits, const MeasurementBasis& basis) {
  if (basis.size() != n_qubits) {
    throw ValidationError("joint_distribution: basis has " + std::to_string(basis.size()) +
                          " parties, state has " + std::to_string(n_qubits) + " qubits");
  }
}

std::vector<std::size_t> binary_dims(std::size_t n) { return std::vector<std::size_t>(n, 2); }

}  // namespace

double convert(double nats, Unit unit) {
  return unit == Unit::kBits ? nats / std::numbers::ln2 : nats;
}

std::string_view unit_name(Unit unit) { return unit == Unit::kBits ? "bits" : "nats"; }

Unit parse_unit(std::string_view text) {
  if (text == "bits") return Unit::kBits;
  if (text == "nats") return Unit::kNats;
  throw ValidationError("unknown unit '" + std::string(text) + "' (expected bits or nats)");
}

MeasurementBasis::MeasurementBasis(std::vector<ComplexMatrix> per_party) : bases_(std::move(per_party)) {
  if (bases_.empty()) throw ValidationError("MeasurementBasis: no parties");
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const auto& b = bases_[k];
    if (b.rows() != 2 || b.cols() != 2) {
      throw ValidationError("MeasurementBasis: party " + std::to_string(k) + " basis is not 2x2");
    }
    if (distance(b.adjoint() * b, ComplexMatrix::identity(2)) > kGramTolerance) {
      throw ValidationError("MeasurementBasis: party " + std::to_string(k) +
                            " basis is not orthonormal");
    }
  }
}

MeasurementBasis MeasurementBasis::computational(std::size_t n_parties) {
  return MeasurementBasis(std::vector<ComplexMatrix>(n_parties, ComplexMatrix::identity(2)));
}

MeasurementBasis MeasurementBasis::from_axes(std::span<const Vec3> axes) {
  std::vector<ComplexMatrix> bases;
  for (const auto& n : axes) {
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(len - 1.0) > 1e-10) throw ValidationError("from_axes: axis is not a unit vector");
    const ComplexMatrix h = n[0] * pauli(1) + n[1] * pauli(2) + n[2] * pauli(3);
    bases.push_back(herm_eig(h).eigenvectors);
  }
  return MeasurementBasis(std::move(bases));
}

MeasurementBasis MeasurementBasis::schmidt(const PureState& psi) {
  if (psi.n_qubits() != 2) {
    throw ValidationError("Schmidt measurement basis needs a two-qubit state, got " +
                          std::to_string(psi.n_qubits()) + " qubits");
  }
  const auto dec = entangle::schmidt(psi, Bipartition(2, {0}));
  return MeasurementBasis({ComplexMatrix::from_columns(dec.basis_first),
                           ComplexMatrix::from_columns(dec.basis_second)});
}

ComplexMatrix su2_rotation(const Vec3& axis, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const ComplexMatrix n_sigma = axis[0] * pauli(1) + axis[1] * pauli(2) + axis[2] * pauli(3);
  return Complex(c) * ComplexMatrix::identity(2) - Complex(0.0, s) * n_sigma;
}

MeasurementBasis MeasurementBasis::random(std::size_t n_parties, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<ComplexMatrix> bases;
  for (std::size_t k = 0; k < n_parties; ++k) {
    Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
    const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    for (auto& x : axis) x /= len;
    bases.push_back(su2_rotation(axis, uniform(rng)));
  }
  return MeasurementBasis(std::move(bases));
}

ProbabilityTable::ProbabilityTable(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
  if (dims_.empty()) throw ValidationError("ProbabilityTable: no parties");
  const std::size_t total =
      std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  if (total != probs_.size()) {
    throw ValidationError("ProbabilityTable: expected " + std::to_string(total) + " entries, got " +
                          std::to_string(probs_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    auto& p = probs_[i];
    if (!(p >= -1e-12)) {
      throw ValidationError("ProbabilityTable: entry " + std::to_string(i) + " is negative");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw ValidationError("ProbabilityTable: entries sum to " + std::to_string(sum));
  }
}

double ProbabilityTable::at(std::span<const std::size_t> outcome) const {
  if (outcome.size() != dims_.size()) throw ValidationError("ProbabilityTable: arity mismatch");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (outcome[k] >= dims_[k]) throw ValidationError("ProbabilityTable: outcome out of range");
    flat = flat * dims_[k] + outcome[k];
  }
  return probs_[flat];
}

std::vector<std::size_t> ProbabilityTable::outcome(std::size_t flat) const {
  std::vector<std::size_t> digits(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    digits[k] = flat % dims_[k];
    flat /= dims_[k];
  }
  return digits;
}

std::vector<double> ProbabilityTable::marginal(std::size_t party) const {
  if (party >= dims_.size()) throw ValidationError("ProbabilityTable: party out of range");
  std::size_t stride = 1;
  for (std::size_t k = party + 1; k < dims_.size(); ++k) stride *= dims_[k];
  std::vector<double> out(dims_[party], 0.0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    out[(flat / stride) % dims_[party]] += probs_[flat];
  }
  return out;
}

ProbabilityTable joint_distribution(const PureState& psi, const MeasurementBasis& basis) {
  require_arity(psi.n_qubits(), basis);
  const ComplexVector rotated = product_unitary(basis).adjoint() * psi.amplitudes();
  std::vector<double> probs(rotated.size());
  for (std::size_t i = 0; i < rotated.size(); ++i) probs[i] = std::norm(rotated[i]);
  return ProbabilityTable(binary_dims(psi.n_qubits()), std::move(probs));
}

ProbabilityTable joint_distribution(const DensityMatrix& rho, const MeasurementBasis& basis) {
  require_arity(rho.n_qubits(), basis);
  const ComplexMatrix u = product_unitary(basis);
  const ComplexMatrix rotated = u.adjoint() * rho.matrix() * u;
  std::vector<double> probs(rotated.rows());
  for (std::size_t i = 0; i < rotated.rows(); ++i) probs[i] = rotated(i, i).real();
  return ProbabilityTable(binary_dims(rho.n_qubits()), std::move(probs));
}

double shannon_index(const ProbabilityTable& table, Unit unit) {
  std::vector<std::vector<double>> marginals;
  for (std::size_t k = 0; k < table.n_parties(); ++k) marginals.push_back(table.marginal(k));
  double sum = 0.0;
  for (std::size_t flat = 0; flat < table.probs().size(); ++flat) {
    const double p = table[flat];
    if (p < kProbabilityFloor) continue;
    const auto digits = table.outcome(flat);
    double independent = 1.0;
    for (std::size_t k = 0; k < digits.size(); ++k) independent *= marginals[k][digits[k]];
    sum += p * std::log(p / independent);
  }
  return convert(sum, unit);
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  double s = 0.0;
  for (double lambda : herm_eig(rho).eigenvalues) {
    if (lambda > kEigenvalueFloor) s -= lambda * std::log(lambda);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

std::vector<ComplexMatrix> single_party_reductions(const DensityMatrix& rho) {
  const auto dims = binary_dims(rho.n_qubits());
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < rho.n_qubits(); ++k) {
    const std::size_t keep[] = {k};
    out.push_back(partial_trace(rho.matrix(), dims, keep));
  }
  return out;
}

double quantum_index(const DensityMatrix& rho) {
  double sum = -von_neumann_entropy(rho);
  for (const auto& reduced : single_party_reductions(rho)) sum += von_neumann_entropy(reduced);
  return sum;
}

double quantum_index(const DensityMatrix& rho, std::span<const std::vector<std::size_t>> parties) {
  if (parties.empty()) throw ValidationError("quantum_index: no parties");
  const auto dims = binary_dims(rho.n_qubits());
  std::vector<bool> used(rho.n_qubits(), false);
  double sum = -von_neumann_entropy(rho);
  for (const auto& party : parties) {
    for (auto q : party) {
      if (q >= used.size() || used[q]) {
        throw ValidationError("quantum_index: parties must be disjoint qubit groups");
      }
      used[q] = true;
    }
    sum += von_neumann_entropy(partial_trace(rho.matrix(), dims, party));
  }
  return sum;
}

}  // namespace entangle
