#include "entangle/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "entangle/correlation.hpp"
#include "entangle/errors.hpp"
#include "entangle/hidden_vars.hpp"
#include "entangle/io.hpp"
#include "entangle/pauli_hs.hpp"
#include "entangle/schmidt.hpp"
#include "entangle/states.hpp"
#include "entangle/tomography.hpp"

namespace entangle::cli {

namespace {

using io::Json;

// Values below this print as 0 in text reports; JSON output is unrounded.
constexpr double kDisplayZero = 5e-13;

std::string num(double x) {
  if (std::abs(x) < kDisplayZero) return "0";
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

std::string complex_text(Complex z) {
  if (std::abs(z.imag()) < kDisplayZero) return num(z.real());
  if (std::abs(z.real()) < kDisplayZero) return num(z.imag()) + "i";
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

std::string vec_text(const Vec3& v) {
  return "(" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + ")";
}

void print_mat3(std::ostream& out, const std::string& name, const Mat3& m) {
  out << name << " =\n";
  for (const auto& row : m) {
    out << "  [";
    for (double x : row) out << " " << std::setw(14) << num(x);
    out << " ]\n";
  }
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

Json read_json(const std::string& path, std::istream& in) {
  try {
    return io::parse_text(read_input(path, in));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

template <typename F>
auto parse_document(const std::string& path, std::istream& in, F&& parser) {
  const Json doc = read_json(path, in);
  try {
    return parser(doc);
  } catch (const ValidationError& e) {
    throw ValidationError((path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

void write_document(const std::string& path, const Json& doc, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << io::dump(doc);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot write '" + path + "'");
  file << io::dump(doc);
}

std::vector<double> split_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

Complex parse_complex_flag(const std::string& text, const std::string& what) {
  const auto parts = split_numbers(text, what);
  if (parts.size() == 1) return parts[0];
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw ValidationError(what + ": expected re or re,im");
}

PureState make_state(const std::string& name, const std::string& c1, const std::string& c2) {
  if (name == "singlet") return singlet();
  if (name == "triplet_m0") return triplet_m0();
  if (name == "state17") {
    if (c1.empty() || c2.empty()) throw ValidationError("state17 needs --c1 and --c2");
    return state17(parse_complex_flag(c1, "--c1"), parse_complex_flag(c2, "--c2"));
  }
  if (name.rfind("ghz:", 0) == 0) {
    const auto n = split_numbers(name.substr(4), "ghz size");
    if (n.size() != 1 || n[0] != std::floor(n[0]) || n[0] < 0) {
      throw ValidationError("ghz:N needs an integer N");
    }
    return ghz(static_cast<std::size_t>(n[0]));
  }
  throw ValidationError("unknown state '" + name + "' (singlet, triplet_m0, ghz:N, state17)");
}

// "a:z,1.5708" or "b:0,0,1,1.5708"
std::pair<std::size_t, Mat3> parse_rotation(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != 1 || spec[0] < 'a' || spec[0] > 'e') {
    throw ValidationError("--rotate '" + spec + "': expected subsystem:axis,angle");
  }
  const std::size_t subsystem = static_cast<std::size_t>(spec[0] - 'a');
  std::string rest = spec.substr(2);
  Vec3 axis{};
  double angle = 0.0;
  if (rest.size() > 2 && (rest[0] == 'x' || rest[0] == 'y' || rest[0] == 'z') && rest[1] == ',') {
    axis[static_cast<std::size_t>(rest[0] - 'x')] = 1.0;
    const auto a = split_numbers(rest.substr(2), "--rotate angle");
    if (a.size() != 1) throw ValidationError("--rotate '" + spec + "': expected one angle");
    angle = a[0];
  } else {
    const auto v = split_numbers(rest, "--rotate");
    if (v.size() != 4) throw ValidationError("--rotate '" + spec + "': expected nx,ny,nz,angle");
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (len == 0.0) throw ValidationError("--rotate '" + spec + "': zero axis");
    axis = {v[0] / len, v[1] / len, v[2] / len};
    angle = v[3];
  }
  return {subsystem, so3_from_axis_angle(axis, angle)};
}

// ---- hs decompose -----------------------------------------------------------

int hs_decompose_cmd(const std::string& input, const std::vector<std::string>& rotations, bool json,
                     std::istream& in, std::ostream& out) {
  const auto rho = io::as_density(parse_document(input, in, io::parse_state));
  HSTensor tensor = hs_decompose(rho);
  std::string frame = "computational (sigma_1, sigma_2, sigma_3 = x, y, z)";
  if (!rotations.empty()) {
    std::vector<Mat3> per(rho.n_qubits(), so3_from_axis_angle({0.0, 0.0, 1.0}, 0.0));
    for (const auto& spec : rotations) {
      const auto [k, rot] = parse_rotation(spec);
      if (k >= rho.n_qubits()) throw ValidationError("--rotate '" + spec + "': no such subsystem");
      per[k] = rot;
    }
    tensor = rotate_frame(tensor, LocalRotation(per));
    frame = "rotated";
    for (const auto& spec : rotations) frame += " " + spec;
  }
  const std::size_t n = tensor.n_qubits();
  const double square_sum = tensor.square_sum();

  if (json) {
    Json coeffs = Json::object();
    for (std::size_t w = 1; w < tensor.coeffs().size(); ++w) {
      coeffs[PauliString::from_index(n, w).to_string()] = tensor[w];
    }
    out << io::dump({{"n_qubits", n},
                     {"frame", frame},
                     {"coefficients", coeffs},
                     {"square_sum", square_sum},
                     {"expected_square_sum_pure", std::size_t{1} << n}});
    return kExitOk;
  }

  std::size_t nonzero = 0;
  for (std::size_t w = 1; w < tensor.coeffs().size(); ++w) {
    if (std::abs(tensor[w]) >= kDisplayZero) ++nonzero;
  }
  out << "Hilbert-Schmidt decomposition, " << n << " qubit(s)\n";
  out << "frame: " << frame << "\n";
  if (n == 1) {
    out << "r = " << vec_text({tensor[1], tensor[2], tensor[3]}) << "\n";
  } else if (n == 2) {
    const auto p = two_qubit_params(tensor);
    out << "r = " << vec_text(p.r) << "   (subsystem a)\n";
    out << "s = " << vec_text(p.s) << "   (subsystem b)\n";
    print_mat3(out, "T (t_nm = <sigma_n (x) sigma_m>)", p.t);
  } else if (n == 3) {
    const auto p = three_qubit_params(tensor);
    out << "r = " << vec_text(p.r) << "   (subsystem a)\n";
    out << "s = " << vec_text(p.s) << "   (subsystem b)\n";
    out << "p = " << vec_text(p.p) << "   (subsystem c)\n";
    print_mat3(out, "t (pairs b,c)", p.t);
    print_mat3(out, "o (pairs a,c)", p.o);
    print_mat3(out, "p_ij (pairs a,b)", p.p_pair);
    for (std::size_t a = 0; a < 3; ++a) {
      print_mat3(out, "R[" + std::to_string(a + 1) + "][beta][gamma]", p.big_r[a]);
    }
  }
  if (n > 3) {
    for (std::size_t w = 1; w < tensor.coeffs().size(); ++w) {
      if (std::abs(tensor[w]) >= kDisplayZero) {
        out << PauliString::from_index(n, w).to_string() << " = " << num(tensor[w]) << "\n";
      }
    }
  }
  out << "non-identity coefficients: " << tensor.coeffs().size() - 1 << " (" << nonzero
      << " nonzero, " << tensor.coeffs().size() - 1 - nonzero << " zero)\n";
  out << "purity identity: sum of squared coefficients = " << num(square_sum) << " (pure state: "
      << (std::size_t{1} << n) << ")\n";
  return kExitOk;
}

// ---- schmidt / relative -----------------------------------------------------

PureState require_pure(const io::StateDocument& doc, const std::string& what) {
  if (const auto* psi = std::get_if<PureState>(&doc)) return *psi;
  throw ValidationError(what + " needs a pure state document");
}

int schmidt_cmd(const std::string& input, const std::string& split_text, bool json, std::istream& in,
                std::ostream& out) {
  const auto psi = require_pure(parse_document(input, in, io::parse_state), "schmidt");
  const auto split = Bipartition::parse(split_text);
  const auto dec = schmidt(psi, split);
  double entropy = 0.0;
  for (double a : dec.coefficients) {
    if (a * a > 1e-14) entropy -= a * a * std::log(a * a);
  }
  if (json) {
    Json basis_a = Json::array(), basis_b = Json::array();
    for (std::size_t k = 0; k < dec.coefficients.size(); ++k) {
      Json za = Json::array(), eb = Json::array();
      for (auto z : dec.basis_first[k]) za.push_back({z.real(), z.imag()});
      for (auto z : dec.basis_second[k]) eb.push_back({z.real(), z.imag()});
      basis_a.push_back(za);
      basis_b.push_back(eb);
    }
    out << io::dump({{"split", split.to_string()},
                     {"coefficients", dec.coefficients},
                     {"basis_first", basis_a},
                     {"basis_second", basis_b},
                     {"entanglement_entropy_nats", entropy}});
    return kExitOk;
  }
  out << "Schmidt decomposition, split " << split.to_string() << "\n";
  for (std::size_t k = 0; k < dec.coefficients.size(); ++k) {
    out << "a_" << k + 1 << " = " << num(dec.coefficients[k]) << "   a^2 = "
        << num(dec.coefficients[k] * dec.coefficients[k]) << "\n";
    out << "  zeta_" << k + 1 << " = [";
    for (auto z : dec.basis_first[k]) out << " " << complex_text(z);
    out << " ]\n  eta_" << k + 1 << "  = [";
    for (auto z : dec.basis_second[k]) out << " " << complex_text(z);
    out << " ]\n";
  }
  out << "entanglement entropy: " << num(entropy) << " nats = " << num(convert(entropy, Unit::kBits))
      << " bits\n";
  return kExitOk;
}

int relative_cmd(const std::string& input, const std::string& eta_path, const std::string& subsystem,
                 const std::string& output, std::istream& in, std::ostream& out) {
  const auto psi = require_pure(parse_document(input, in, io::parse_state), "relative");
  const auto eta = require_pure(parse_document(eta_path, in, io::parse_state), "--eta");
  std::vector<std::size_t> second;
  for (char ch : subsystem) {
    const auto q = static_cast<std::size_t>(ch - 'a');
    if (ch < 'a' || q >= psi.n_qubits()) {
      throw ValidationError("--subsystem '" + subsystem + "': unknown subsystem");
    }
    second.push_back(q);
  }
  std::vector<std::size_t> first;
  for (std::size_t q = 0; q < psi.n_qubits(); ++q) {
    if (std::find(second.begin(), second.end(), q) == second.end()) first.push_back(q);
  }
  const Bipartition split(psi.n_qubits(), first);
  if (split.second().size() != second.size()) {
    throw ValidationError("--subsystem '" + subsystem + "': repeated subsystem");
  }
  write_document(output, io::to_json(relative_state(psi, eta, split)), out);
  return kExitOk;
}

// ---- correlate ----------------------------------------------------------------

int correlate_cmd(const std::string& input, const std::string& basis_text, const std::string& unit_text,
                  bool json, std::istream& in, std::ostream& out) {
  const auto doc = parse_document(input, in, io::parse_state);
  const auto rho = io::as_density(doc);
  const Unit unit = parse_unit(unit_text);
  const std::size_t n = rho.n_qubits();
  if (n < 2) throw ValidationError("correlate needs at least two qubits");

  std::optional<MeasurementBasis> basis;
  std::string basis_label = basis_text;
  if (basis_text == "z") {
    basis = MeasurementBasis::computational(n);
    basis_label = "z (computational product basis)";
  } else if (basis_text == "schmidt") {
    basis = MeasurementBasis::schmidt(require_pure(doc, "--basis schmidt"));
    basis_label = "schmidt (canonical product basis)";
  } else if (basis_text.rfind("random:", 0) == 0) {
    const std::string seed_text = basis_text.substr(7);
    if (seed_text.empty() || !std::all_of(seed_text.begin(), seed_text.end(), ::isdigit)) {
      throw ValidationError("--basis random:SEED needs a non-negative integer seed");
    }
    basis = MeasurementBasis::random(n, std::stoull(seed_text));
    basis_label = "random product basis, seed " + seed_text;
  } else {
    throw ValidationError("--basis '" + basis_text + "': expected z, schmidt or random:SEED");
  }

  const auto table = joint_distribution(rho, *basis);
  const double i_shann = shannon_index(table, unit);
  std::vector<double> entropies;
  for (const auto& reduced : single_party_reductions(rho)) {
    entropies.push_back(convert(von_neumann_entropy(reduced), unit));
  }
  const double total = convert(von_neumann_entropy(rho), unit);
  const double i_c = convert(quantum_index(rho), unit);
  const double ratio = i_c > 0.0 ? i_shann / i_c : std::numeric_limits<double>::quiet_NaN();

  if (json) {
    Json result = {{"basis", basis_label},
                   {"unit", unit_name(unit)},
                   {"joint_probabilities", table.probs()},
                   {"shannon_index", i_shann},
                   {"subsystem_entropies", entropies},
                   {"total_entropy", total},
                   {"quantum_index", i_c}};
    result["ratio"] = std::isnan(ratio) ? Json(nullptr) : Json(ratio);
    out << io::dump(result);
    return kExitOk;
  }
  const auto u = std::string(unit_name(unit));
  out << "basis: " << basis_label << "\nunit: " << u << "\n";
  out << "joint probabilities:";
  for (std::size_t flat = 0; flat < table.probs().size(); ++flat) {
    std::string label;
    for (auto d : table.outcome(flat)) label.push_back(static_cast<char>('0' + d));
    out << " P(" << label << ")=" << num(table[flat]);
  }
  out << "\nShannon index I_Shann = " << num(i_shann) << " " << u << "\n";
  for (std::size_t k = 0; k < entropies.size(); ++k) {
    out << "S_" << static_cast<char>('a' + k) << " = " << num(entropies[k]) << " " << u << "\n";
  }
  out << "S = " << num(total) << " " << u << "\n";
  out << "quantum index I_c = " << num(i_c) << " " << u << "\n";
  out << "ratio I_Shann / I_c = " << (std::isnan(ratio) ? std::string("undefined (I_c = 0)") : num(ratio))
      << "\n";
  return kExitOk;
}

// ---- hv -------------------------------------------------------------------

int hv_check_cmd(const std::string& model_path, bool json, std::istream& in, std::ostream& out) {
  const auto model = parse_document(model_path, in, io::parse_hv_model);
  const auto report = check_refinement(model);
  if (json) {
    out << io::dump({{"unit", "nats"},
                     {"i_hv", report.i_hv},
                     {"i_shann", report.i_shann},
                     {"gap", report.gap},
                     {"equality", report.equality}});
    return kExitOk;
  }
  out << "hidden-variable values: " << model.lambda_count() << ", outcomes " << model.outcomes_a()
      << " x " << model.outcomes_b() << "\nunit: nats\n";
  out << "I_HV = " << num(report.i_hv) << "\nI_Shann = " << num(report.i_shann) << "\n";
  out << "gap I_HV - I_Shann = " << num(report.gap) << "\n";
  out << "equality (lambda does not correlate the outcomes): " << (report.equality ? "yes" : "no")
      << "\n";
  return kExitOk;
}

int hv_sweep_cmd(std::uint64_t seeds, const std::string& sizes_text, bool json, std::ostream& out) {
  const auto sizes = split_numbers(sizes_text, "--sizes");
  if (sizes.size() != 3 ||
      std::any_of(sizes.begin(), sizes.end(), [](double x) { return x < 1 || x != std::floor(x); })) {
    throw ValidationError("--sizes: expected three positive integers L,di,dj");
  }
  if (seeds == 0) throw ValidationError("--seeds must be positive");
  const HVSizes hv_sizes{static_cast<std::size_t>(sizes[0]), static_cast<std::size_t>(sizes[1]),
                         static_cast<std::size_t>(sizes[2])};
  double min_gap = std::numeric_limits<double>::infinity();
  double max_gap = -min_gap;
  double sum_gap = 0.0;
  std::uint64_t equalities = 0, violations = 0;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    const auto report = check_refinement(random_model(seed, hv_sizes));
    min_gap = std::min(min_gap, report.gap);
    max_gap = std::max(max_gap, report.gap);
    sum_gap += report.gap;
    if (report.equality) ++equalities;
    if (report.gap < -1e-12) ++violations;
  }
  const double mean_gap = sum_gap / static_cast<double>(seeds);
  if (json) {
    out << io::dump({{"unit", "nats"},
                     {"models", seeds},
                     {"sizes", {hv_sizes.lambdas, hv_sizes.outcomes_a, hv_sizes.outcomes_b}},
                     {"min_gap", min_gap},
                     {"mean_gap", mean_gap},
                     {"max_gap", max_gap},
                     {"equality_count", equalities},
                     {"violations", violations}});
    return kExitOk;
  }
  out << "models: " << seeds << " (seeds 0.." << seeds - 1 << "), sizes " << sizes_text << "\nunit: nats\n";
  out << "gap I_HV - I_Shann: min " << num(min_gap) << ", mean " << num(mean_gap) << ", max "
      << num(max_gap) << "\n";
  out << "equality flags: " << equalities << "\nviolations (gap < -1e-12): " << violations << "\n";
  return kExitOk;
}

// ---- tomo ---------------------------------------------------------------------

int tomo_simulate_cmd(const std::string& input, std::uint64_t shots, std::uint64_t seed, bool exact,
                      const std::string& output, std::istream& in, std::ostream& out) {
  const auto rho = io::as_density(parse_document(input, in, io::parse_state));
  if (exact) {
    write_document(output, io::to_json(exact_expectations(rho)), out);
    return kExitOk;
  }
  if (shots == 0) throw ValidationError("--shots must be positive");
  write_document(output, io::to_json(simulate_dataset(rho, shots, seed), seed), out);
  return kExitOk;
}

int tomo_reconstruct_cmd(const std::string& input, bool repair, const std::string& reference,
                         const std::string& output, std::istream& in, std::ostream& out,
                         std::ostream& err) {
  const Json doc = read_json(input, in);
  ExpectationMap values;
  std::string source;
  try {
    const auto kind = doc.is_object() && doc.contains("kind") && doc["kind"].is_string()
                          ? doc["kind"].get<std::string>()
                          : std::string();
    if (kind == "expectations") {
      values = io::parse_expectations(doc);
      source = "exact expectation values";
    } else {
      const auto data = io::parse_dataset(doc);
      values = estimate_expectations(data);
      source = std::to_string(data.shots_per_setting()) + " shots per setting";
    }
  } catch (const ValidationError& e) {
    throw ValidationError((input == "-" ? std::string("<stdin>") : input) + ": " + e.what());
  }

  const auto result = reconstruct(values, repair);
  std::optional<double> fid;
  if (!reference.empty()) {
    const auto ref = require_pure(parse_document(reference, in, io::parse_state), "--reference");
    if (ref.n_qubits() != qubits_for_dimension(result.estimate.rows())) {
      throw ValidationError("--reference has a different qubit count");
    }
    fid = fidelity(ref, result.estimate);
  }

  // The estimate leaves as a document only if it is a valid state.
  const bool to_stdout = output.empty() || output == "-";
  std::ostream& report = to_stdout ? err : out;
  report << "source: " << source << "\n";
  report << "repair: " << (repair ? (result.repaired ? "applied" : "requested, not needed") : "off")
         << "\n";
  report << "raw min eigenvalue = " << num(result.raw_min_eigenvalue) << "\n";
  report << "min eigenvalue = " << num(result.min_eigenvalue) << "\n";
  report << "purity Tr rho^2 = " << num(result.purity) << "\n";
  report << "pure_defect ||rho^2 - rho||_F = " << std::setprecision(3) << result.pure_defect
         << std::setprecision(6) << "\n";
  if (fid) report << "fidelity vs reference = " << num(*fid) << "\n";
  write_document(output, io::to_json(result.state()), out);
  return kExitOk;
}

std::string state_make_cmd_json(const std::string& name, const std::string& c1, const std::string& c2) {
  return io::dump(io::to_json(make_state(name, c1, c2)));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Few-qubit entanglement toolkit: Hilbert-Schmidt parameters, Schmidt and relative "
               "states, correlation indices, hidden-variable refinement, Pauli tomography",
               "entangle"};
  app.require_subcommand(1);

  std::string input = "-", output, name, c1, c2, split, eta, subsystem, basis = "z", unit = "nats";
  std::string model_path, sizes = "4,2,2", reference;
  std::vector<std::string> rotations;
  bool json = false, repair = false, exact = false;
  std::uint64_t shots = 0, seed = 0, seeds = 1000;

  auto* state = app.add_subcommand("state", "construct named states");
  state->require_subcommand(1);
  auto* state_make = state->add_subcommand("make", "write a named pure state document");
  state_make->add_option("--name", name, "singlet | triplet_m0 | ghz:N | state17")->required();
  state_make->add_option("--c1", c1, "state17 coefficient C1 as re,im");
  state_make->add_option("--c2", c2, "state17 coefficient C2 as re,im");
  state_make->add_option("-o,--output", output, "output file (default stdout)");

  auto* hs = app.add_subcommand("hs", "Hilbert-Schmidt decomposition");
  hs->require_subcommand(1);
  auto* hs_dec = hs->add_subcommand("decompose", "report the named Hilbert-Schmidt parameters");
  hs_dec->add_option("-i,--input", input, "state document (default stdin)");
  hs_dec->add_option("--rotate", rotations, "frame rotation per subsystem, e.g. a:z,1.5708 or b:1,1,0,0.3");
  hs_dec->add_flag("--json", json, "machine-readable output");

  auto* schmidt_sub = app.add_subcommand("schmidt", "Schmidt decomposition of a pure state");
  schmidt_sub->add_option("-i,--input", input, "pure state document (default stdin)");
  schmidt_sub->add_option("--split", split, "bipartition such as a|bc")->required();
  schmidt_sub->add_flag("--json", json, "machine-readable output");

  auto* relative = app.add_subcommand("relative", "relative state of S1 for eta in S2");
  relative->add_option("-i,--input", input, "pure state document (default stdin)");
  relative->add_option("--eta", eta, "pure state document for S2")->required();
  relative->add_option("--subsystem", subsystem, "subsystems forming S2, e.g. b or bc")->required();
  relative->add_option("-o,--output", output, "output file (default stdout)");

  auto* correlate = app.add_subcommand("correlate", "Shannon and quantum indices of correlation");
  correlate->add_option("-i,--input", input, "state document (default stdin)");
  correlate->add_option("--basis", basis, "z | schmidt | random:SEED");
  correlate->add_option("--unit", unit, "bits | nats");
  correlate->add_flag("--json", json, "machine-readable output");

  auto* hv = app.add_subcommand("hv", "hidden-variable refinement inequality");
  hv->require_subcommand(1);
  auto* hv_check = hv->add_subcommand("check", "evaluate one model file");
  hv_check->add_option("--model", model_path, "hidden-variable model document")->required();
  hv_check->add_flag("--json", json, "machine-readable output");
  auto* hv_sweep = hv->add_subcommand("sweep", "evaluate random models for seeds 0..N-1");
  hv_sweep->add_option("--seeds", seeds, "number of models");
  hv_sweep->add_option("--sizes", sizes, "L,di,dj");
  hv_sweep->add_flag("--json", json, "machine-readable output");

  auto* tomo = app.add_subcommand("tomo", "Pauli tomography");
  tomo->require_subcommand(1);
  auto* tomo_sim = tomo->add_subcommand("simulate", "sample counts for all 3^n Pauli settings");
  tomo_sim->add_option("-i,--input", input, "state document (default stdin)");
  tomo_sim->add_option("--shots", shots, "shots per setting");
  tomo_sim->add_option("--seed", seed, "random seed");
  tomo_sim->add_flag("--exact", exact, "write exact expectation values instead of counts");
  tomo_sim->add_option("-o,--output", output, "output file (default stdout)");
  auto* tomo_rec = tomo->add_subcommand("reconstruct", "linear-inversion state estimate");
  tomo_rec->add_option("-i,--input", input, "dataset or expectations document (default stdin)");
  tomo_rec->add_flag("--repair", repair, "replace a non-PSD estimate by the nearest density matrix");
  tomo_rec->add_option("--reference", reference, "pure state document for the fidelity");
  tomo_rec->add_option("-o,--output", output, "output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (state_make->parsed()) {
      const std::string doc = state_make_cmd_json(name, c1, c2);
      if (output.empty() || output == "-") {
        out << doc;
      } else {
        std::ofstream file(output);
        if (!file) throw ValidationError("cannot write '" + output + "'");
        file << doc;
      }
      return kExitOk;
    }
    if (hs_dec->parsed()) return hs_decompose_cmd(input, rotations, json, in, out);
    if (schmidt_sub->parsed()) return schmidt_cmd(input, split, json, in, out);
    if (relative->parsed()) return relative_cmd(input, eta, subsystem, output, in, out);
    if (correlate->parsed()) return correlate_cmd(input, basis, unit, json, in, out);
    if (hv_check->parsed()) return hv_check_cmd(model_path, json, in, out);
    if (hv_sweep->parsed()) return hv_sweep_cmd(seeds, sizes, json, out);
    if (tomo_sim->parsed()) return tomo_simulate_cmd(input, shots, seed, exact, output, in, out);
    if (tomo_rec->parsed()) return tomo_reconstruct_cmd(input, repair, reference, output, in, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  err << "error: no command\n";
  return kExitValidation;
}

}  // namespace entangle::cli
