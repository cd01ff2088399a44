#pragma once

// JSON documents exchanged by the command-line tool.
//
// State document (format_version "1"):
//   {"format_version": "1", "kind": "pure",    "n_qubits": n, "amplitudes": [[re, im], ...]}
//   {"format_version": "1", "kind": "density", "n_qubits": n, "matrix": [[[re, im], ...], ...]}
// Tomography dataset:
//   {"format_version": "1", "kind": "tomography", "n_qubits": n, "shots_per_setting": N,
//    "seed": S, "records": [{"setting": "13", "counts": [c00, c01, c10, c11]}, ...]}
// Exact expectation values:
//   {"format_version": "1", "kind": "expectations", "n_qubits": n, "values": {"01": x, ...}}
// Hidden-variable model:
//   {"format_version": "1", "kind": "hv_model", "weights": [...],
//    "cond_a": [[...], ...], "cond_b": [[...], ...]}
//
// Numbers are written in the shortest decimal form that reads back to the
// identical binary64 value (at most 17 significant digits).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "entangle/hidden_vars.hpp"
#include "entangle/states.hpp"
#include "entangle/tomography.hpp"

namespace entangle::io {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

using StateDocument = std::variant<PureState, DensityMatrix>;

Json to_json(const PureState& psi);
Json to_json(const DensityMatrix& rho);
Json to_json(const StateDocument& doc);
Json to_json(const TomographyDataset& data, std::optional<std::uint64_t> seed = std::nullopt);
Json to_json(const ExpectationMap& values);
Json to_json(const HVModel& model);

// Parsers throw ValidationError whose message starts with the location of the
// first violation, e.g. "amplitudes[2]: expected [re, im] pair".
StateDocument parse_state(const Json& doc);
TomographyDataset parse_dataset(const Json& doc);
ExpectationMap parse_expectations(const Json& doc);
HVModel parse_hv_model(const Json& doc);

/// Parses JSON text, reporting syntax errors as ValidationError.
Json parse_text(std::string_view text);
std::string dump(const Json& doc);

/// The density matrix of either document kind.
DensityMatrix as_density(const StateDocument& doc);

}  // namespace entangle::io
