#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bds/circuit.hpp"
#include "bds/io.hpp"
#include "bds/noise.hpp"
#include "bds/sweep.hpp"
#include "bds/tomography.hpp"

namespace bds::cli {

namespace {

using io::Json;

// Raised for bad output paths and unreadable inputs; maps to kExitIo.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateSelection {
  std::optional<double> werner;
  std::vector<double> probs;

  void add_to(CLI::App* app) {
    app->add_option("--werner", werner, "Werner weight w in [0,1]");
    app->add_option("--p", probs, "Bell-basis weights p00,p01,p10,p11")->delimiter(',');
  }

  bool given() const { return werner.has_value() || !probs.empty(); }

  BdsSpec spec() const {
    if (werner && !probs.empty()) {
      throw Error(ErrorCode::kInvalidProbabilities, "give either --werner or --p, not both");
    }
    if (werner) return werner_spec(*werner);
    if (probs.size() != 4) {
      throw Error(ErrorCode::kInvalidProbabilities, "--p needs exactly four values");
    }
    BdsSpec s{probs[0], probs[1], probs[2], probs[3]};
    s.validate();
    return s;
  }
};

std::pair<double, double> parse_noise(const std::vector<double>& noise) {
  if (noise.empty()) return {0.0, 0.0};
  if (noise.size() != 2) throw Error(ErrorCode::kOutOfRange, "--noise needs two values a,p");
  return {noise[0], noise[1]};
}

std::map<std::size_t, std::size_t> parse_layout(const std::string& text) {
  std::map<std::size_t, std::size_t> layout;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon != 1 || item.size() < 3 || item[0] < 'a' || item[0] > 'd') {
      throw Error(ErrorCode::kInvalidLayout, "layout entries look like a:1");
    }
    std::size_t physical = 0;
    try {
      std::size_t used = 0;
      physical = std::stoul(item.substr(2), &used);
      if (used != item.size() - 2) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidLayout, "bad physical index in '" + item + "'");
    }
    const auto logical = static_cast<std::size_t>(item[0] - 'a');
    if (!layout.emplace(logical, physical).second) {
      throw Error(ErrorCode::kInvalidLayout, "qubit listed twice in layout");
    }
  }
  if (layout.size() != 4) throw Error(ErrorCode::kInvalidLayout, "layout must map a, b, c and d");
  return layout;
}

PauliBasis parse_basis(char c) {
  switch (c) {
    case 'X': return PauliBasis::kX;
    case 'Y': return PauliBasis::kY;
    case 'Z': return PauliBasis::kZ;
    default: throw Error(ErrorCode::kParse, std::string("unknown basis '") + c + "'");
  }
}

// Writes to --out when given, otherwise to `fallback`.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoFailure("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IoFailure("failed writing '" + path + "'");
}

Json read_input(const std::string& path) {
  try {
    return io::read_json_file(path);
  } catch (const std::ios_base::failure& e) {
    throw IoFailure(e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct PrepareArgs {
  StateSelection state;
  bool qasm = false;
  std::string layout;
  std::string basis;
  std::string out;
};

int cmd_prepare(const PrepareArgs& a, std::ostream& out) {
  if (!a.state.given()) throw Error(ErrorCode::kInvalidProbabilities, "give --werner or --p");
  const BdsSpec spec = a.state.spec();
  const AnglePair angles = angles_from_spec(spec);
  const ConditionalAngles conditional = conditional_angles(spec);
  const Circuit circuit = build_bds_circuit(spec);

  if (a.qasm) {
    QasmOptions opts;
    if (!a.layout.empty()) opts.layout = parse_layout(a.layout);
    if (!a.basis.empty()) {
      if (a.basis.size() != 2) throw Error(ErrorCode::kParse, "--basis takes two letters (c, d)");
      opts.measure[reg::kC] = parse_basis(a.basis[0]);
      opts.measure[reg::kD] = parse_basis(a.basis[1]);
    }
    emit(a.out, to_qasm(circuit, opts), out);
    return kExitOk;
  }

  const Json report{{"spec", {spec.p00, spec.p01, spec.p10, spec.p11}},
                    {"theta", angles.theta},
                    {"alpha", angles.alpha},
                    {"phi_b", {conditional.phi0, conditional.phi1}},
                    {"circuit", io::circuit_to_json(circuit)},
                    {"state", io::state_to_json(prepared_state(spec))}};
  emit(a.out, dump(report), out);
  return kExitOk;
}

struct SweepArgs {
  StateSelection state;
  int points = 11;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::vector<double> noise;
  bool no_project = false;
  unsigned threads = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  SweepConfig config;
  if (a.state.werner) throw Error(ErrorCode::kParse, "sweep takes --p for a custom family only");
  if (!a.state.probs.empty()) {
    config.family = StateFamily::kCustomSpec;
    config.custom_spec = a.state.spec();
  }
  config.w_points = a.points;
  config.shots = a.shots;
  config.seed = a.seed;
  std::tie(config.noise_a, config.noise_p) = parse_noise(a.noise);
  config.project_physical = !a.no_project;
  config.threads = a.threads;
  emit(a.out, sweep_csv(run_sweep(config)), out);
  return kExitOk;
}

struct MeasureArgs {
  std::string path;
  std::string out;
};

int cmd_measure(const MeasureArgs& a, std::ostream& out, std::ostream& err) {
  const ComplexMatrix m = io::matrix_from_json(read_input(a.path));
  Json diag{{"n_qubits", io::matrix_to_json(m)["n_qubits"]},
            {"hermitian", m.is_hermitian(Tolerance::kHermitian)},
            {"trace", m.trace().real()}};
  if (diag["hermitian"].get<bool>()) diag["min_eigenvalue"] = hermitian_eigenvalues(m).front();

  std::optional<DensityMatrix> rho;
  try {
    rho.emplace(m);
  } catch (const Error& e) {
    diag["valid"] = false;
    diag["error"] = e.what();
    emit(a.out, dump(diag), out);
    err << "invalid state: " << e.what() << "\n";
    return kExitValidation;
  }
  if (rho->n_qubits() != 2) {
    diag["valid"] = false;
    diag["error"] = "measures are defined for two-qubit states";
    emit(a.out, dump(diag), out);
    err << "invalid state: expected two qubits\n";
    return kExitValidation;
  }
  diag["valid"] = true;
  const Json result{{"diagnostics", diag}, {"report", io::report_to_json(full_report(*rho))}};
  emit(a.out, dump(result), out);
  return kExitOk;
}

struct TomographArgs {
  std::string path;
  bool no_project = false;
  std::optional<double> werner;
  std::string out;
};

int cmd_tomograph(const TomographArgs& a, std::ostream& out) {
  const TomographyCounts counts = io::counts_from_json(read_input(a.path));
  const CorrelationMatrix corr = estimate_correlations(counts);
  const Reconstruction rec = reconstruct(corr);
  const DensityMatrix used = a.no_project ? DensityMatrix::allow_negative(rec.raw) : rec.state;

  Json result{{"state", io::state_to_json(used)},
              {"raw", io::matrix_to_json(rec.raw)},
              {"projected", !a.no_project && rec.projected},
              {"correlations", corr.c},
              {"report", io::report_to_json(full_report(used))}};
  if (a.werner) result["fidelity"] = fidelity(werner(*a.werner), used);
  emit(a.out, dump(result), out);
  return kExitOk;
}

struct SampleArgs {
  StateSelection state;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::vector<double> noise;
  std::string out;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  if (!a.state.given()) throw Error(ErrorCode::kInvalidProbabilities, "give --werner or --p");
  if (a.shots == 0) throw Error(ErrorCode::kOutOfRange, "--shots must be positive");
  DensityMatrix rho = prepared_state(a.state.spec());
  const auto [na, np] = parse_noise(a.noise);
  if (na > 0.0 || np > 0.0) rho = apply_channel(composite_damping(na, np), rho, 0);
  emit(a.out, dump(io::counts_to_json(sample_counts(rho, a.shots, a.seed))), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-diagonal state preparation, tomography and quantum-resource measures",
               "bds"};
  app.require_subcommand(1);

  PrepareArgs prepare;
  auto* prepare_cmd = app.add_subcommand("prepare", "Angles, circuit and prepared state");
  prepare.state.add_to(prepare_cmd);
  prepare_cmd->add_flag("--qasm", prepare.qasm, "Print OpenQASM 2.0 instead of JSON");
  prepare_cmd->add_option("--layout", prepare.layout, "Physical qubits, e.g. a:1,b:3,c:2,d:4");
  prepare_cmd->add_option("--basis", prepare.basis, "Measure c,d in these bases, e.g. XY");
  prepare_cmd->add_option("--out", prepare.out, "Output file");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of measures over the w grid");
  sweep.state.add_to(sweep_cmd);
  sweep_cmd->add_option("--points", sweep.points, "Number of w values")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--shots", sweep.shots, "Shots per setting (0 = exact)");
  sweep_cmd->add_option("--seed", sweep.seed, "Sampling seed");
  sweep_cmd->add_option("--noise", sweep.noise, "Damping rates a,p on qubit a")->delimiter(',');
  sweep_cmd->add_flag("--no-project", sweep.no_project, "Use raw linear-inversion estimates");
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");
  sweep_cmd->add_option("--out", sweep.out, "Output CSV file");

  MeasureArgs measure;
  auto* measure_cmd = app.add_subcommand("measure", "Resource report for a density-matrix file");
  measure_cmd->add_option("state", measure.path, "Density-matrix JSON")->required();
  measure_cmd->add_option("--out", measure.out, "Output file");

  TomographArgs tomo;
  auto* tomo_cmd = app.add_subcommand("tomograph", "Reconstruct a state from counts JSON");
  tomo_cmd->add_option("counts", tomo.path, "Counts JSON")->required();
  tomo_cmd->add_flag("--no-project", tomo.no_project, "Keep the raw estimate");
  tomo_cmd->add_option("--werner", tomo.werner, "Report fidelity against werner(w)");
  tomo_cmd->add_option("--out", tomo.out, "Output file");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Simulated counts JSON for a prepared state");
  sample.state.add_to(sample_cmd);
  sample_cmd->add_option("--shots", sample.shots, "Shots per setting");
  sample_cmd->add_option("--seed", sample.seed, "Sampling seed");
  sample_cmd->add_option("--noise", sample.noise, "Damping rates a,p on qubit a")->delimiter(',');
  sample_cmd->add_option("--out", sample.out, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*prepare_cmd) return cmd_prepare(prepare, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
    if (*measure_cmd) return cmd_measure(measure, out, err);
    if (*tomo_cmd) return cmd_tomograph(tomo, out);
    if (*sample_cmd) return cmd_sample(sample, out);
  } catch (const IoFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace bds::cli
