#include "entangle/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include "entangle/errors.hpp"

namespace entangle {

namespace {

constexpr double kZeroOverlap = 1e-12;

std::size_t pick_bits(std::size_t full, std::size_t n, const std::vector<std::size_t>& qubits) {
  std::size_t out = 0;
  for (auto q : qubits) out = (out << 1) | ((full >> (n - 1 - q)) & 1U);
  return out;
}

}  // namespace

Bipartition::Bipartition(std::size_t n_qubits, std::vector<std::size_t> first)
    : n_qubits_(n_qubits), first_(std::move(first)) {
  if (n_qubits_ < 2 || n_qubits_ > kMaxQubits) {
    throw ValidationError("Bipartition: need 2.." + std::to_string(kMaxQubits) + " qubits");
  }
  std::sort(first_.begin(), first_.end());
  if (std::adjacent_find(first_.begin(), first_.end()) != first_.end()) {
    throw ValidationError("Bipartition: repeated qubit");
  }
  for (auto q : first_) {
    if (q >= n_qubits_) throw ValidationError("Bipartition: qubit index out of range");
  }
  for (std::size_t q = 0; q < n_qubits_; ++q) {
    if (!std::binary_search(first_.begin(), first_.end(), q)) second_.push_back(q);
  }
  if (first_.empty() || second_.empty()) {
    throw ValidationError("Bipartition: both sides must be nonempty");
  }
}

Bipartition Bipartition::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw ValidationError("Bipartition: expected one '|' in '" + std::string(text) + "'");
  }
  const std::size_t n = text.size() - 1;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> first;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    if (pos == bar) continue;
    const char ch = text[pos];
    const auto q = static_cast<std::size_t>(ch - 'a');
    if (ch < 'a' || q >= n || seen[q]) {
      throw ValidationError("Bipartition: '" + std::string(text) +
                            "' must name each of the qubits a.. exactly once");
    }
    seen[q] = true;
    if (pos < bar) first.push_back(q);
  }
  return Bipartition(n, std::move(first));
}

std::string Bipartition::to_string() const {
  std::string out;
  for (auto q : first_) out.push_back(static_cast<char>('a' + q));
  out.push_back('|');
  for (auto q : second_) out.push_back(static_cast<char>('a' + q));
  return out;
}

ComplexMatrix coefficient_matrix(const PureState& psi, const Bipartition& split) {
  const std::size_t n = psi.n_qubits();
  if (split.n_qubits() != n) {
    throw ValidationError("bipartition covers " + std::to_string(split.n_qubits()) +
                          " qubits, state has " + std::to_string(n));
  }
  ComplexMatrix m(split.first_dimension(), split.second_dimension());
  for (std::size_t f = 0; f < psi.dimension(); ++f) {
    m(pick_bits(f, n, split.first()), pick_bits(f, n, split.second())) = psi[f];
  }
  return m;
}

ComplexVector SchmidtDecomposition::reconstruct() const {
  const std::size_t n = split.n_qubits();
  ComplexVector out(std::size_t{1} << n);
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t i = pick_bits(f, n, split.first());
    const std::size_t j = pick_bits(f, n, split.second());
    Complex sum{};
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      sum += coefficients[k] * basis_first[k][i] * basis_second[k][j];
    }
    out[f] = sum;
  }
  return out;
}

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& split) {
  const auto dec = svd(coefficient_matrix(psi, split));
  // M = U S V^dagger  =>  psi = sum_k s_k u_k (x) conj(v_k)
  SchmidtDecomposition out{split, dec.singular_values, {}, {}};
  for (std::size_t k = 0; k < dec.singular_values.size(); ++k) {
    out.basis_first.push_back(dec.u.column(k));
    ComplexVector eta = dec.v.column(k);
    for (auto& z : eta) z = std::conj(z);
    out.basis_second.push_back(std::move(eta));
  }
  return out;
}

PureState relative_state(const PureState& psi, const PureState& eta, const Bipartition& split) {
  if (eta.n_qubits() != split.second().size()) {
    throw ValidationError("relative_state: eta has " + std::to_string(eta.n_qubits()) +
                          " qubits, S2 has " + std::to_string(split.second().size()));
  }
  const ComplexMatrix m = coefficient_matrix(psi, split);
  ComplexVector rel(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex sum{};
    for (std::size_t j = 0; j < m.cols(); ++j) sum += std::conj(eta[j]) * m(i, j);
    rel[i] = sum;
  }
  if (norm(rel) < kZeroOverlap) {
    throw ValidationError("relative_state: eta has zero overlap with the state; relative state undefined");
  }
  return PureState::normalized(std::move(rel));
}

}  // namespace entangle
