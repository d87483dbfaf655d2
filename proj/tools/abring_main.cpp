// abring: canonical thermodynamics of an Aharonov-Bohm ring from the command line.
//
//   abring sweep --preset fig1 --out fig1.csv
//   abring compare --preset fig1 --methods direct,em,high-t --tau-min 100 --tau-max 10000
//   abring point --preset fig2 --flux-ratio 50 --tau 1000
//   abring show-config --preset fig2 --config run.cfg
//
// Exit status: 0 on success, 2 if any sweep row failed, 1 on configuration or I/O errors.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "abring/config.hpp"
#include "abring/csv.hpp"
#include "abring/error.hpp"
#include "abring/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRowFailed = 2;

// Flags shared by every subcommand; each maps onto one config key.
struct CommonOptions {
  std::optional<std::string> config_file;
  std::optional<std::string> preset;
  std::optional<std::string> regime;
  std::vector<double> flux_ratios;
  std::optional<std::string> mass, radius, n_fermions;
  std::optional<std::string> tau_min, tau_max, tau_steps, grid;
  std::optional<std::string> method, fidelity, em_order, spectrum;
  std::optional<std::string> tail_tolerance, max_terms, out;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "Flat key=value config file");
    app.add_option("--preset", preset, "Built-in preset: fig1 | fig2");
    app.add_option("--regime", regime, "relativistic | nonrelativistic");
    app.add_option("--flux-ratio", flux_ratios, "Flux ratio Phi/Phi0 (repeatable)")
        ->delimiter(',');
    app.add_option("--mass", mass, "Rest mass m");
    app.add_option("--radius", radius, "Ring radius a");
    app.add_option("--n-fermions", n_fermions, "Particle count N");
    app.add_option("--tau-min", tau_min, "Lowest temperature k_B T");
    app.add_option("--tau-max", tau_max, "Highest temperature k_B T");
    app.add_option("--tau-steps", tau_steps, "Grid points (>= 2)");
    app.add_option("--grid", grid, "linear | log");
    app.add_option("--method", method, "direct | em | high-t | geometric");
    app.add_option("--fidelity", fidelity, "paper | derived");
    app.add_option("--em-order", em_order, "Euler-Maclaurin beta order: 0 | 1 | 2");
    app.add_option("--spectrum", spectrum, "Direct-sum levels: linearized | full");
    app.add_option("--tail-tolerance", tail_tolerance, "Direct-sum relative tolerance");
    app.add_option("--max-terms", max_terms, "Direct-sum term cap");
    app.add_option("--out", out, "Output CSV path (default: standard output)");
  }

  abring::KeyValues overrides() const {
    abring::KeyValues kv;
    const auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) kv.emplace_back(key, *v);
    };
    put("preset", preset);
    put("regime", regime);
    if (!flux_ratios.empty()) {
      std::string joined;
      for (double phi : flux_ratios) {
        if (!joined.empty()) joined += ',';
        joined += abring::format_number(phi);
      }
      kv.emplace_back("flux_ratio", joined);
    }
    put("mass", mass);
    put("radius", radius);
    put("n_fermions", n_fermions);
    put("tau_min", tau_min);
    put("tau_max", tau_max);
    put("tau_steps", tau_steps);
    put("grid", grid);
    put("method", method);
    put("fidelity", fidelity);
    put("em_order", em_order);
    put("spectrum", spectrum);
    put("tail_tolerance", tail_tolerance);
    put("max_terms", max_terms);
    put("out", out);
    return kv;
  }

  abring::SweepConfig resolve() const {
    std::optional<std::filesystem::path> file;
    if (config_file) file = *config_file;
    return abring::parse_config(overrides(), file);
  }
};

void report_warnings(const abring::SweepTable& table) {
  for (const auto& row : table) {
    if (row.warning) {
      std::cerr << "warning: phi=" << abring::format_number(row.phi)
                << " tau=" << abring::format_number(row.tau) << ": " << *row.warning << '\n';
    }
  }
}

template <typename Table>
void write_table(const Table& table, const std::string& path) {
  if (path.empty() || path == "-") {
    abring::write_csv(table, std::cout);
  } else {
    abring::emit_csv(table, path);
  }
}

int run_sweep(const CommonOptions& opts) {
  const abring::SweepConfig config = opts.resolve();
  const abring::SweepTable table = abring::run_sweep(config);
  report_warnings(table);
  write_table(table, config.output_path);
  std::size_t failed = 0;
  for (const auto& row : table) failed += row.failed() ? 1 : 0;
  if (failed > 0) {
    std::cerr << failed << " of " << table.size() << " rows failed\n";
    return kExitRowFailed;
  }
  return kExitOk;
}

int run_compare(const CommonOptions& opts, const std::vector<std::string>& method_names) {
  const abring::SweepConfig config = opts.resolve();
  std::vector<abring::PartitionMethod> methods;
  if (method_names.empty()) {
    methods.push_back(abring::PartitionMethod::DirectSum);
    if (config.regime == abring::Regime::Relativistic) {
      methods.push_back(abring::PartitionMethod::EulerMaclaurin);
      methods.push_back(abring::PartitionMethod::HighTClosed);
    } else {
      methods.push_back(abring::PartitionMethod::GeometricClosed);
    }
  }
  for (const auto& name : method_names) {
    const auto m = abring::parse_partition_method(name);
    if (!m) {
      throw abring::Error(abring::ErrorCode::Config,
                          "methods: '" + name + "' is not accepted (accepted: direct, em, high-t, "
                                                "geometric)");
    }
    methods.push_back(*m);
  }
  const abring::ComparisonTable table = abring::compare_methods(config, methods);
  write_table(table, config.output_path);
  for (const auto& row : table.rows) {
    if (!row.error.empty()) return kExitRowFailed;
  }
  return kExitOk;
}

int run_point(const CommonOptions& opts, double tau) {
  abring::SweepConfig config = opts.resolve();
  if (config.flux_ratios.size() != 1) {
    throw abring::Error(abring::ErrorCode::Config,
                        "flux_ratio: point needs exactly one value, got " +
                            std::to_string(config.flux_ratios.size()));
  }
  if (!(tau > 0.0)) {
    throw abring::Error(abring::ErrorCode::Config,
                        "tau: " + abring::format_number(tau) + " is out of range (accepted: > 0)");
  }
  config.tau_min = tau;
  abring::SweepRow row;
  row.regime = config.regime;
  row.method = config.method;
  row.fidelity = config.fidelity;
  row.phi = config.flux_ratios.front();
  row.tau = tau;
  try {
    auto eval = abring::evaluate_point(config, row.phi, tau);
    row.point = eval.point;
    row.validity = eval.validity;
    row.warning = eval.warning;
  } catch (const abring::Error& e) {
    row.error = std::string(abring::to_string(e.code())) + ": " + e.what();
  }
  const abring::SweepTable table{row};
  report_warnings(table);
  abring::write_csv(table, std::cout);
  return row.failed() ? kExitRowFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical thermodynamics of a Dirac fermion ensemble on an Aharonov-Bohm ring"};
  app.require_subcommand(1);

  CommonOptions sweep_opts, compare_opts, point_opts, show_opts;
  auto* sweep = app.add_subcommand("sweep", "Temperature sweep written as CSV");
  sweep_opts.attach(*sweep);

  auto* compare = app.add_subcommand("compare", "ln Z_1 from several methods side by side");
  compare_opts.attach(*compare);
  std::vector<std::string> method_names;
  compare->add_option("--methods", method_names, "Methods to compare (comma separated)")
      ->delimiter(',');

  auto* point = app.add_subcommand("point", "One thermodynamic point to standard output");
  point_opts.attach(*point);
  double tau = 0.0;
  point->add_option("--tau", tau, "Temperature k_B T")->required();

  auto* show = app.add_subcommand("show-config", "Print the fully resolved configuration");
  show_opts.attach(*show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*sweep) return run_sweep(sweep_opts);
    if (*compare) return run_compare(compare_opts, method_names);
    if (*point) return run_point(point_opts, tau);
    if (*show) {
      std::cout << abring::format_config(show_opts.resolve());
      return kExitOk;
    }
  } catch (const abring::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
