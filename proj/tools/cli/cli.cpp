#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "geostat/billiard.hpp"
#include "geostat/bures.hpp"
#include "geostat/classical.hpp"
#include "geostat/density_matrix.hpp"
#include "geostat/errors.hpp"
#include "geostat/measurement.hpp"
#include "geostat/monotone_metrics.hpp"
#include "geostat/operator_means.hpp"
#include "geostat/random.hpp"
#include "geostat/verification.hpp"
#include "json_io.hpp"

namespace geostat::cli {

namespace {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  Json json;
  std::string csv;  // used when the format is csv
  bool ok = true;   // false: exit with kExitNumerical after writing
};

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Domain objects built from user input: construction failures are input
// validation errors rather than numerical ones.
template <typename F>
auto from_input(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

CMatrix load_matrix(const std::string& path) {
  const CMatrix m = parse_complex_matrix(read_json_file(path), path);
  if (m.rows() != m.cols()) {
    throw ParseError(path + ": matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", expected square");
  }
  return m;
}

DensityMatrix load_density(const std::string& path) {
  const CMatrix m = load_matrix(path);
  return from_input(path, [&] { return DensityMatrix(m); });
}

HermitianMatrix load_hermitian(const std::string& path) { return HermitianMatrix(load_matrix(path)); }

ProbabilityVector load_probability(const std::string& path) {
  const RVector v = parse_real_vector(read_json_file(path), path);
  return from_input(path, [&] { return ProbabilityVector(v); });
}

void require_inputs(const RunConfig& c, std::size_t n) {
  if (c.inputs.size() != n) {
    throw ValidationError(command_name(c.command) + " expects " + std::to_string(n) + " input file(s), got " +
                          std::to_string(c.inputs.size()));
  }
}

MonotoneFunction mean_function(const RunConfig& c) {
  try {
    return MonotoneFunction::from_name(c.f);
  } catch (const Error& e) {
    throw ValidationError(std::string("--f: ") + e.what());
  }
}

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const RunConfig& c) {
  if (a.dim() != b.dim()) {
    throw ValidationError(c.inputs[0] + " and " + c.inputs[1] + " have different dimensions");
  }
}

Json m_spectrum(const DensityMatrix& rho1, const DensityMatrix& rho2, Json& vectors) {
  const EigenSystem es = eig(fuchs_caves_operator(rho1, rho2));
  vectors = Json::array();
  for (Eigen::Index j = 0; j < es.vectors.cols(); ++j) vectors.push_back(to_json(CVector(es.vectors.col(j))));
  return to_json(es.values);
}

Report classical_distance(const RunConfig& c) {
  require_inputs(c, 2);
  const ProbabilityVector p = load_probability(c.inputs[0]);
  const ProbabilityVector q = load_probability(c.inputs[1]);
  if (p.size() != q.size()) throw ValidationError("distributions have different lengths");
  return {Json{{"distance", fr_geodesic_distance(p, q)}}, {}, true};
}

Report jeffreys(const RunConfig& c) {
  require_inputs(c, 1);
  return {Json{{"density", jeffreys_density(load_probability(c.inputs[0]))}}, {}, true};
}

Report multinomial(const RunConfig& c) {
  require_inputs(c, 1);
  const ProbabilityVector p = load_probability(c.inputs[0]);
  const long samples = c.samples.value_or(100000);
  const int trials = c.trials.value_or(10000);
  if (samples < 100) throw ValidationError("--samples must be at least 100");
  if (trials < 2) throw ValidationError("--trials must be at least 2 for a covariance estimate");
  const EllipseReport r = multinomial_ellipse_experiment(p, samples, trials, c.seed);
  Json j;
  j["p"] = to_json(p.values());
  j["samples"] = samples;
  j["trials"] = trials;
  j["seed"] = c.seed;
  j["empirical_cov"] = to_json(r.empirical_cov);
  j["predicted_cov"] = to_json(r.predicted_cov);
  j["max_rel_err"] = r.max_rel_err;
  return {j, {}, true};
}

Report monotone_stress(const RunConfig& c) {
  require_inputs(c, 0);
  const int trials = c.trials.value_or(10000);
  const MonotonicityReport fr = monotonicity_stress(c.seed, trials, SimplexDistance::fisher_rao);
  const MonotonicityReport flat = monotonicity_stress(c.seed, trials, SimplexDistance::flat);
  Json j;
  j["trials"] = trials;
  j["seed"] = c.seed;
  j["violations"] = fr.violations;
  j["max_excess"] = fr.max_excess;
  j["flat"] = Json{{"violations", flat.violations}, {"max_excess", flat.max_excess}};
  return {j, {}, true};
}

Report mean(const RunConfig& c) {
  require_inputs(c, 2);
  const MonotoneFunction f = mean_function(c);
  const HermitianMatrix a = load_hermitian(c.inputs[0]);
  const HermitianMatrix b = load_hermitian(c.inputs[1]);
  if (a.dim() != b.dim()) throw ValidationError("matrices have different dimensions");
  Json j;
  j["f"] = f.name();
  j["mean"] = to_json(operator_mean(a, b, f).matrix());
  return {j, {}, true};
}

Report monotone_metric(const RunConfig& c) {
  require_inputs(c, 2);
  const MonotoneFunction f = mean_function(c);
  const DensityMatrix rho = load_density(c.inputs[0]);
  const CMatrix d = load_matrix(c.inputs[1]);
  const TangentPerturbation drho = from_input(c.inputs[1], [&] { return TangentPerturbation(d); });
  if (rho.dim() != drho.dim()) throw ValidationError("state and perturbation have different dimensions");
  Json j;
  j["f"] = f.name();
  j["ds2"] = monotone_ds2(rho, drho, f);
  return {j, {}, true};
}

Report fidelity_cmd(const RunConfig& c) {
  require_inputs(c, 2);
  const DensityMatrix a = load_density(c.inputs[0]), b = load_density(c.inputs[1]);
  require_same_dim(a, b, c);
  return {Json{{"fidelity", fidelity(a, b)}}, {}, true};
}

Report bures_distance(const RunConfig& c) {
  require_inputs(c, 2);
  const DensityMatrix a = load_density(c.inputs[0]), b = load_density(c.inputs[1]);
  require_same_dim(a, b, c);
  return {Json{{"bures_angle", bures_angle(a, b)}, {"fidelity", fidelity(a, b)}}, {}, true};
}

Report geodesic_cmd(const RunConfig& c) {
  require_inputs(c, 2);
  const DensityMatrix a = load_density(c.inputs[0]), b = load_density(c.inputs[1]);
  require_same_dim(a, b, c);
  const long samples = c.samples.value_or(65);
  if (samples < 2) throw ValidationError("--samples must be at least 2");
  const GeodesicPath path = geodesic(a, b);
  const Eigen::Index n = path.dim();

  Report r;
  std::ostringstream csv;
  csv << "t";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) csv << ",rho_" << i << "_" << k << "_re,rho_" << i << "_" << k << "_im";
  }
  csv << ",min_eigenvalue\n";
  Json rows = Json::array();
  for (long s = 0; s < samples; ++s) {
    const double t = path.t_star() * static_cast<double>(s) / static_cast<double>(samples - 1);
    const HermitianMatrix rho = path.at(t);
    const double lam = min_eigenvalue(rho);
    rows.push_back(Json{{"t", t}, {"rho", to_json(rho.matrix())}, {"min_eigenvalue", lam}});
    csv << csv_number(t);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index k = 0; k < n; ++k) {
        csv << "," << csv_number(rho(i, k).real()) << "," << csv_number(rho(i, k).imag());
      }
    }
    csv << "," << csv_number(lam) << "\n";
  }
  r.json["t_star"] = path.t_star();
  r.json["bures_angle"] = bures_angle(a, b);
  r.json["samples"] = std::move(rows);
  r.csv = csv.str();
  return r;
}

Report optimal_measurement_cmd(const RunConfig& c) {
  require_inputs(c, 2);
  const DensityMatrix a = load_density(c.inputs[0]), b = load_density(c.inputs[1]);
  require_same_dim(a, b, c);
  const double tol = c.tol.value_or(1e-8);
  const Povm e = optimal_measurement(a, b);
  const double bures = bures_angle(a, b);
  const double classical = povm_classical_angle(e, a, b);
  Json j;
  j["bures_angle"] = bures;
  j["classical_angle"] = classical;
  j["attains_bound"] = std::abs(bures - classical) <= tol;
  Json vectors;
  j["m_eigenvalues"] = m_spectrum(a, b, vectors);
  j["m_eigenvectors"] = std::move(vectors);
  Json projectors = Json::array();
  for (const auto& p : e.elements()) projectors.push_back(to_json(p.matrix()));
  j["projectors"] = std::move(projectors);
  return {j, {}, true};
}

Report povm_search(const RunConfig& c) {
  require_inputs(c, 2);
  const DensityMatrix a = load_density(c.inputs[0]), b = load_density(c.inputs[1]);
  require_same_dim(a, b, c);
  if (a.dim() != 2) throw ValidationError("povm-search needs qubit states");
  const QubitSearchReport r = qubit_povm_search(a, b, c.grid, 60);
  Json j;
  j["bures_angle"] = bures_angle(a, b);
  j["best_angle"] = r.best_angle;
  j["best_axis"] = Json::array({r.best_axis.x(), r.best_axis.y(), r.best_axis.z()});
  j["non_unique"] = r.non_unique;
  j["evaluations"] = r.evaluations;
  if (a.strictly_positive()) {
    Json vectors;
    j["m_eigenvalues"] = m_spectrum(a, b, vectors);
    j["m_eigenvectors"] = std::move(vectors);
  } else {
    j["m_eigenvalues"] = nullptr;
    j["m_eigenvectors"] = nullptr;
  }
  return {j, {}, true};
}

Report billiard(const RunConfig& c) {
  std::optional<DensityMatrix> a, b;
  Json seed_json = nullptr;
  if (!c.inputs.empty()) {
    require_inputs(c, 2);
    if (c.dim) throw ValidationError("--dim cannot be combined with input files");
    a = load_density(c.inputs[0]);
    b = load_density(c.inputs[1]);
    require_same_dim(*a, *b, c);
  } else {
    const int n = c.dim.value_or(3);
    if (n < 2 || n > 16) throw ValidationError("--dim must lie in 2..16");
    Rng rng = make_rng(c.seed, "cli-billiard");
    a = DensityMatrix(sample_density_hs(rng, n));
    b = DensityMatrix(sample_density_hs(rng, n));
    seed_json = c.seed;
  }
  const GeodesicPath path = geodesic(*a, *b);

  Report r;
  if (c.format == Format::csv) {
    std::ostringstream csv;
    csv << "t,min_eigenvalue\n";
    for (const auto& [t, lam] : min_eigenvalue_profile(path, static_cast<int>(c.samples.value_or(2048)))) {
      csv << csv_number(t) << "," << csv_number(lam) << "\n";
    }
    r.csv = csv.str();
    return r;
  }

  const double tol = c.tol.value_or(1e-6);
  const BilliardReport br = verify_billiard_theorem(*a, *b);
  Json ts = Json::array(), kernels = Json::array(), vectors = Json::array();
  for (const auto& p : br.scan.points) {
    ts.push_back(p.t);
    kernels.push_back(to_json(p.kernel_state));
  }
  for (Eigen::Index j = 0; j < br.m_eigenvectors.cols(); ++j) {
    vectors.push_back(to_json(CVector(br.m_eigenvectors.col(j))));
  }
  const bool complete = br.scan.points.size() == static_cast<std::size_t>(a->dim());
  r.json["dim"] = a->dim();
  r.json["seed"] = seed_json;
  r.json["t_star"] = path.t_star();
  r.json["bounce_ts"] = std::move(ts);
  r.json["kernel_states"] = std::move(kernels);
  r.json["m_eigenvalues"] = to_json(br.m_eigenvalues);
  r.json["m_eigenvectors"] = std::move(vectors);
  r.json["pairings"] = br.pairings;
  r.json["infidelities"] = br.infidelities;
  r.json["max_infidelity"] = br.max_infidelity;
  r.json["matched"] = !br.flagged && complete && br.max_infidelity <= tol;
  r.json["flags"] = Json{{"degenerate_root_warning", br.scan.degenerate_root_warning},
                         {"samples_used", br.scan.samples_used}};
  return r;
}

Report verify_all(const RunConfig& c) {
  require_inputs(c, 0);
  Json criteria = Json::array();
  int failed = 0;
  for (const CriterionResult& res : run_acceptance(c.seed)) {
    if (!res.passed) ++failed;
    criteria.push_back(Json{{"id", res.id},
                            {"name", res.name},
                            {"passed", res.passed},
                            {"detail", res.detail},
                            {"budget_seconds", res.budget_seconds > 0.0 ? Json(res.budget_seconds) : Json(nullptr)}});
  }
  Json j;
  j["seed"] = c.seed;
  j["passed"] = failed == 0;
  j["failed"] = failed;
  j["criteria"] = std::move(criteria);
  return {j, {}, failed == 0};
}

Report dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::classical_distance: return classical_distance(c);
    case Command::jeffreys: return jeffreys(c);
    case Command::multinomial_experiment: return multinomial(c);
    case Command::monotone_stress: return monotone_stress(c);
    case Command::mean: return mean(c);
    case Command::monotone_metric: return monotone_metric(c);
    case Command::fidelity: return fidelity_cmd(c);
    case Command::bures_distance: return bures_distance(c);
    case Command::geodesic: return geodesic_cmd(c);
    case Command::optimal_measurement: return optimal_measurement_cmd(c);
    case Command::povm_search: return povm_search(c);
    case Command::billiard: return billiard(c);
    case Command::verify_all: return verify_all(c);
  }
  throw ValidationError("unknown command");
}

void validate(const RunConfig& c) {
  if (c.tol && !(*c.tol > 0.0)) throw ValidationError("--tol must be positive");
  if (c.trials && *c.trials < 1) throw ValidationError("--trials must be at least 1");
  if (c.samples && *c.samples < 1) throw ValidationError("--samples must be at least 1");
  if (c.grid < 2) throw ValidationError("--grid must be at least 2");
  if (c.format == Format::csv && c.command != Command::geodesic && c.command != Command::billiard) {
    throw ValidationError("--format csv is only available for geodesic and billiard");
  }
}

std::string error_type(const Error& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const BoundaryError*>(&e)) return "BoundaryError";
  if (dynamic_cast<const SingularError*>(&e)) return "SingularError";
  if (dynamic_cast<const DegenerateError*>(&e)) return "DegenerateError";
  if (dynamic_cast<const ZeroVectorError*>(&e)) return "ZeroVectorError";
  if (dynamic_cast<const ScanFailure*>(&e)) return "ScanFailure";
  return "Error";
}

void write_error(std::ostream& out, const std::string& type, const std::string& message, int code) {
  const Json j{{"error", Json{{"type", type}, {"message", message}, {"exit_code", code}}}};
  out << j.dump(2) << "\n";
}

}  // namespace

const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names = {
      {"classical-distance", Command::classical_distance},
      {"jeffreys", Command::jeffreys},
      {"multinomial-experiment", Command::multinomial_experiment},
      {"monotone-stress", Command::monotone_stress},
      {"mean", Command::mean},
      {"monotone-metric", Command::monotone_metric},
      {"fidelity", Command::fidelity},
      {"bures-distance", Command::bures_distance},
      {"geodesic", Command::geodesic},
      {"optimal-measurement", Command::optimal_measurement},
      {"povm-search", Command::povm_search},
      {"billiard", Command::billiard},
      {"verify-all", Command::verify_all},
  };
  return names;
}

std::string command_name(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name;
  }
  return "?";
}

int run(const RunConfig& config, std::ostream& out) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out.empty()) {
    file.open(config.out);
    if (!file) {
      write_error(out, "ValidationError", "cannot open --out file " + config.out, kExitValidation);
      return kExitValidation;
    }
    sink = &file;
  }
  try {
    validate(config);
    const Report r = dispatch(config);
    if (config.format == Format::csv) {
      *sink << r.csv;
    } else {
      *sink << r.json.dump(2) << "\n";
    }
    return r.ok ? kExitOk : kExitNumerical;
  } catch (const ParseError& e) {
    write_error(*sink, "ParseError", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const ValidationError& e) {
    write_error(*sink, "ValidationError", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const Error& e) {
    write_error(*sink, error_type(e), e.what(), kExitNumerical);
    return kExitNumerical;
  } catch (const std::exception& e) {
    write_error(*sink, "InternalError", e.what(), kExitNumerical);
    return kExitNumerical;
  }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-geometry experiments on probability simplices and density matrices."};
  app.name("geostat");
  app.require_subcommand(1);

  RunConfig config;
  double tol = 0.0;
  int trials = 0, dim = 0;
  long samples = 0;
  std::string format = "json";
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance for pass/fail flags in reports");
  auto* trials_opt = app.add_option("--trials", trials, "Number of random trials");
  auto* samples_opt = app.add_option("--samples", samples, "Samples per trial or path samples");
  auto* dim_opt = app.add_option("--dim", dim, "Hilbert space dimension for random billiard pairs");
  app.add_option("--seed", config.seed, "Master random seed")->capture_default_str();
  app.add_option("--grid", config.grid, "Axis grid resolution for povm-search")->capture_default_str();
  app.add_option("--out", config.out, "Write the report to this file");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--f", config.f, "Operator mean / monotone metric")
      ->check(CLI::IsMember({"arithmetic", "geometric", "harmonic"}))
      ->capture_default_str();

  const std::vector<std::pair<std::string, std::string>> help = {
      {"classical-distance", "Fisher-Rao distance between two probability vectors"},
      {"jeffreys", "Jeffreys prior density at a probability vector"},
      {"multinomial-experiment", "Frequency covariance of repeated multinomial sampling"},
      {"monotone-stress", "Random stochastic maps against Fisher-Rao and flat distances"},
      {"mean", "Operator mean of two positive matrices"},
      {"monotone-metric", "Monotone metric ds^2 at a state for a perturbation"},
      {"fidelity", "Fidelity of two density matrices"},
      {"bures-distance", "Bures angle of two density matrices"},
      {"geodesic", "Samples of the Bures geodesic between two states"},
      {"optimal-measurement", "Fuchs-Caves operator and its eigenbasis measurement"},
      {"povm-search", "Brute-force projective measurement search for qubits"},
      {"billiard", "Boundary contacts of the extended geodesic versus M's eigenstates"},
      {"verify-all", "Run the full acceptance suite"},
  };
  for (const auto& [name, desc] : help) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("inputs", config.inputs, "Input JSON files");
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const std::string chosen = app.get_subcommands().front()->get_name();
  for (const auto& [name, cmd] : command_names()) {
    if (name == chosen) config.command = cmd;
  }
  if (tol_opt->count() > 0) config.tol = tol;
  if (trials_opt->count() > 0) config.trials = trials;
  if (samples_opt->count() > 0) config.samples = samples;
  if (dim_opt->count() > 0) config.dim = dim;
  config.format = format == "csv" ? Format::csv : Format::json;
  return run(config, out);
}

}  // namespace geostat::cli
