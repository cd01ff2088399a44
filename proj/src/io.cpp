#include "entangle/io.hpp"

#include <string>
#include <vector>

#include "entangle/errors.hpp"

namespace entangle::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where = "") {
  if (!obj.is_object()) fail(where.empty() ? "document" : where, "expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing field");
  return *it;
}

void check_header(const Json& doc, std::string_view kind) {
  const Json& version = field(doc, "format_version");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
    fail("format_version", std::string("expected \"") + kFormatVersion + "\"");
  }
  const Json& k = field(doc, "kind");
  if (!k.is_string() || k.get<std::string>() != kind) {
    fail("kind", "expected \"" + std::string(kind) + "\"");
  }
}

double number(const Json& value, const std::string& where) {
  if (!value.is_number()) fail(where, "expected a number");
  return value.get<double>();
}

std::uint64_t unsigned_integer(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
    fail(where, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex parse_complex(const Json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    fail(where, "expected [re, im] pair of numbers");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

std::vector<double> number_list(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

StochasticMatrix number_table(const Json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "expected an array of rows");
  StochasticMatrix out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_list(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::size_t qubit_count(const Json& doc) {
  const auto n = unsigned_integer(field(doc, "n_qubits"), "n_qubits");
  if (n == 0 || n > kMaxQubits) fail("n_qubits", "must be in 1.." + std::to_string(kMaxQubits));
  return static_cast<std::size_t>(n);
}

// Runs a constructor and prefixes invariant violations with `where`.
template <typename F>
auto located(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json to_json(const PureState& psi) {
  Json amps = Json::array();
  for (const auto& z : psi.amplitudes()) amps.push_back(complex_pair(z));
  return {{"format_version", kFormatVersion},
          {"kind", "pure"},
          {"n_qubits", psi.n_qubits()},
          {"amplitudes", std::move(amps)}};
}

Json to_json(const DensityMatrix& rho) {
  Json rows = Json::array();
  const auto& m = rho.matrix();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"format_version", kFormatVersion},
          {"kind", "density"},
          {"n_qubits", rho.n_qubits()},
          {"matrix", std::move(rows)}};
}

Json to_json(const StateDocument& doc) {
  return std::visit([](const auto& state) { return to_json(state); }, doc);
}

Json to_json(const TomographyDataset& data, std::optional<std::uint64_t> seed) {
  Json records = Json::array();
  for (const auto& rec : data.records()) {
    records.push_back({{"setting", rec.setting.to_string()}, {"counts", rec.counts}});
  }
  Json doc = {{"format_version", kFormatVersion},
              {"kind", "tomography"},
              {"n_qubits", data.n_qubits()},
              {"shots_per_setting", data.shots_per_setting()}};
  if (seed) doc["seed"] = *seed;
  doc["records"] = std::move(records);
  return doc;
}

Json to_json(const ExpectationMap& values) {
  if (values.empty()) throw ValidationError("to_json: empty expectation map");
  Json obj = Json::object();
  for (const auto& [word, value] : values) obj[word.to_string()] = value;
  return {{"format_version", kFormatVersion},
          {"kind", "expectations"},
          {"n_qubits", values.begin()->first.size()},
          {"values", std::move(obj)}};
}

Json to_json(const HVModel& model) {
  return {{"format_version", kFormatVersion},
          {"kind", "hv_model"},
          {"weights", model.weights()},
          {"cond_a", model.cond_a()},
          {"cond_b", model.cond_b()}};
}

StateDocument parse_state(const Json& doc) {
  const Json& version = field(doc, "format_version");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion) {
    fail("format_version", std::string("expected \"") + kFormatVersion + "\"");
  }
  const Json& kind = field(doc, "kind");
  if (!kind.is_string()) fail("kind", "expected \"pure\" or \"density\"");
  const std::size_t n = qubit_count(doc);
  const std::size_t dim = std::size_t{1} << n;

  if (kind.get<std::string>() == "pure") {
    const Json& amps = field(doc, "amplitudes");
    if (!amps.is_array()) fail("amplitudes", "expected an array");
    if (amps.size() != dim) {
      fail("amplitudes", "expected " + std::to_string(dim) + " entries for " + std::to_string(n) +
                             " qubits, got " + std::to_string(amps.size()));
    }
    ComplexVector values;
    for (std::size_t i = 0; i < amps.size(); ++i) {
      values.push_back(parse_complex(amps[i], "amplitudes[" + std::to_string(i) + "]"));
    }
    return located("amplitudes", [&] { return StateDocument(PureState(std::move(values))); });
  }
  if (kind.get<std::string>() == "density") {
    const Json& rows = field(doc, "matrix");
    if (!rows.is_array() || rows.size() != dim) {
      fail("matrix", "expected " + std::to_string(dim) + " rows");
    }
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < dim; ++r) {
      const std::string row_where = "matrix[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != dim) {
        fail(row_where, "expected " + std::to_string(dim) + " entries");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        entries.push_back(parse_complex(rows[r][c], row_where + "[" + std::to_string(c) + "]"));
      }
    }
    return located("matrix", [&] {
      return StateDocument(DensityMatrix(ComplexMatrix(dim, dim, std::move(entries))));
    });
  }
  fail("kind", "expected \"pure\" or \"density\"");
}

TomographyDataset parse_dataset(const Json& doc) {
  check_header(doc, "tomography");
  const std::size_t n = qubit_count(doc);
  const auto shots = unsigned_integer(field(doc, "shots_per_setting"), "shots_per_setting");
  const Json& recs = field(doc, "records");
  if (!recs.is_array()) fail("records", "expected an array");
  std::vector<SettingRecord> records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const std::string where = "records[" + std::to_string(i) + "]";
    const Json& setting = field(recs[i], "setting", where);
    if (!setting.is_string()) fail(where + ".setting", "expected a string of axes 1..3");
    auto parsed = located(where + ".setting",
                          [&] { return MeasurementSetting::parse(setting.get<std::string>()); });
    const Json& counts = field(recs[i], "counts", where);
    if (!counts.is_array()) fail(where + ".counts", "expected an array");
    std::vector<std::uint64_t> values;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      values.push_back(unsigned_integer(counts[k], where + ".counts[" + std::to_string(k) + "]"));
    }
    records.push_back({std::move(parsed), std::move(values)});
  }
  return located("records", [&] { return TomographyDataset(n, shots, std::move(records)); });
}

ExpectationMap parse_expectations(const Json& doc) {
  check_header(doc, "expectations");
  const std::size_t n = qubit_count(doc);
  const Json& values = field(doc, "values");
  if (!values.is_object()) fail("values", "expected an object keyed by Pauli word");
  ExpectationMap out;
  for (const auto& [key, value] : values.items()) {
    const std::string where = "values." + key;
    auto word = located(where, [&] { return PauliString::parse(key); });
    if (word.size() != n) fail(where, "word length differs from n_qubits");
    out.emplace(std::move(word), number(value, where));
  }
  return out;
}

HVModel parse_hv_model(const Json& doc) {
  if (doc.is_object() && doc.contains("kind")) check_header(doc, "hv_model");
  auto weights = number_list(field(doc, "weights"), "weights");
  auto cond_a = number_table(field(doc, "cond_a"), "cond_a");
  auto cond_b = number_table(field(doc, "cond_b"), "cond_b");
  return located("model", [&] {
    return HVModel(std::move(weights), std::move(cond_a), std::move(cond_b));
  });
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " +
                          e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

DensityMatrix as_density(const StateDocument& doc) {
  if (const auto* psi = std::get_if<PureState>(&doc)) return density_from_pure(*psi);
  return std::get<DensityMatrix>(doc);
}

}  // namespace entangle::io
