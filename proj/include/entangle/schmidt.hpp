#pragma once

// Schmidt decomposition and relative states of bipartite pure states.

#include <cstddef>
#include <string_view>
#include <vector>

#include "entangle/linalg.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Splits the qubits of an n-qubit register into S1 (listed) and S2 (the rest).
class Bipartition {
 public:
  /// Throws ValidationError unless both sides are nonempty.
  Bipartition(std::size_t n_qubits, std::vector<std::size_t> first);
  /// "a|bc", "ab|c", ... with letters a.. naming qubits 0..
  static Bipartition parse(std::string_view text);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<std::size_t>& first() const { return first_; }
  const std::vector<std::size_t>& second() const { return second_; }
  std::size_t first_dimension() const { return std::size_t{1} << first_.size(); }
  std::size_t second_dimension() const { return std::size_t{1} << second_.size(); }
  std::string to_string() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> second_;
};

/// M[i, j] = amplitude of |i>_S1 |j>_S2, sides indexed in ascending qubit order.
ComplexMatrix coefficient_matrix(const PureState& psi, const Bipartition& split);

struct SchmidtDecomposition {
  Bipartition split;
  std::vector<double> coefficients;  // descending, min(d1, d2) of them
  std::vector<ComplexVector> basis_first;
  std::vector<ComplexVector> basis_second;

  /// sum_i a_i zeta_i (x) eta_i, mapped back to the register's qubit order.
  ComplexVector reconstruct() const;
};

SchmidtDecomposition schmidt(const PureState& psi, const Bipartition& split);

/// Normalized partial inner product <eta|psi> over S2, a state of S1.
/// Throws ValidationError if the unnormalized result has norm below 1e-12.
PureState relative_state(const PureState& psi, const PureState& eta, const Bipartition& split);

}  // namespace entangle
