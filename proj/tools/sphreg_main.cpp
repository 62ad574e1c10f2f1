// Command-line front end: regularize coefficient sets, build frontiers,
// recover lambda from constraint values, rescale, simulate ensembles and run
// the isotropy harness. Every run echoes its arguments into the output
// directory so it can be reproduced exactly.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphreg/sphreg.hpp"

namespace fs = std::filesystem;
using namespace sphreg;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::optional<double> lambda;
  std::optional<double> sigma;
  std::optional<double> kappa;
  std::optional<double> epsilon;
  std::vector<double> lambdas;  // report
  std::vector<std::string> beta_tokens;
  std::optional<int> band_limit;
  std::uint64_t seed = 0;
  int realizations = 1;
  bool grid = false;
  bool require_real = false;
  int samples_per_segment = 1;
  int gamma_samples = 100;
  std::string preset;
  std::string spectrum_path;
  std::vector<double> rotation;
  std::vector<double> probe_values;
  std::string shrinkage = "block";
  double significance = 0.01;
};

std::vector<std::string> g_echo_args;

DegreeWeights resolve_beta(const std::vector<std::string>& tokens, int band_limit) {
  if (tokens.empty() || tokens[0] == "const") {
    if (tokens.size() > 1)
      throw std::invalid_argument("--beta const takes no further value");
    return DegreeWeights::ones(band_limit);
  }
  if (tokens[0] == "csv") {
    if (tokens.size() != 2) throw std::invalid_argument("--beta csv needs a file path");
    DegreeWeights beta = read_weights(tokens[1]);
    if (beta.band_limit() != band_limit)
      throw std::invalid_argument("weights band limit " +
                                  std::to_string(beta.band_limit()) +
                                  " does not match the input band limit " +
                                  std::to_string(band_limit));
    return beta;
  }
  if (tokens[0] == "powerlaw") {
    if (tokens.size() != 2)
      throw std::invalid_argument("--beta powerlaw needs an exponent");
    return DegreeWeights::power_law(band_limit, std::stod(tokens[1]));
  }
  throw std::invalid_argument("unknown --beta mode '" + tokens[0] +
                              "' (use const, csv <path> or powerlaw <p>)");
}

CoefficientSet load_input(const Options& opt) {
  const fs::path path = opt.input;
  CoefficientSet a = looks_like_grid_field(path)
                         ? analyze(read_grid_field(path))
                         : read_coefficients(path, opt.require_real);
  if (opt.band_limit && *opt.band_limit != a.band_limit())
    throw std::invalid_argument("input band limit " + std::to_string(a.band_limit()) +
                                " does not match --band-limit " +
                                std::to_string(*opt.band_limit));
  return a;
}

fs::path prepare_out_dir(const Options& opt) {
  if (opt.out.empty()) throw std::invalid_argument("--out is required");
  const fs::path dir = opt.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir.string());
  return dir;
}

void write_echo(const fs::path& dir) { write_config_echo(dir / "config.txt", g_echo_args); }

PowerSpectrum resolve_spectrum(const Options& opt) {
  const bool have_preset = !opt.preset.empty();
  const bool have_file = !opt.spectrum_path.empty();
  if (have_preset == have_file)
    throw std::invalid_argument("need exactly one of --preset and --spectrum");
  if (have_preset) {
    if (opt.preset != "cmb-like")
      throw std::invalid_argument("unknown preset '" + opt.preset + "'");
    if (!opt.band_limit)
      throw std::invalid_argument("--preset needs --band-limit");
    return cmb_like_spectrum<double>(*opt.band_limit);
  }
  PowerSpectrum spectrum = read_spectrum(opt.spectrum_path);
  if (opt.band_limit && *opt.band_limit != spectrum.band_limit())
    throw std::invalid_argument("spectrum band limit " +
                                std::to_string(spectrum.band_limit()) +
                                " does not match --band-limit " +
                                std::to_string(*opt.band_limit));
  return spectrum;
}

std::vector<SpherePoint> resolve_probes(const Options& opt) {
  if (opt.probe_values.empty()) {
    return {{0.35, 0.10}, {1.25, 1.00}, {2.10, 4.40}, {1.60, 3.10}};
  }
  if (opt.probe_values.size() % 2 != 0 || opt.probe_values.size() < 4)
    throw std::invalid_argument("--probes needs an even number of values (>= 4): "
                                "theta phi theta phi ...");
  std::vector<SpherePoint> probes;
  for (std::size_t i = 0; i < opt.probe_values.size(); i += 2)
    probes.push_back({opt.probe_values[i], opt.probe_values[i + 1]});
  return probes;
}

std::string join_degrees(const std::vector<int>& degrees) {
  std::string s;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(degrees[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------

void cmd_regularize(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const CoefficientSet observed = load_input(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, observed.band_limit());

  std::vector<std::pair<std::string, std::string>> summary;
  double lambda = 0.0;
  std::optional<ConstraintStatus> status;
  if (opt.lambda) {
    lambda = *opt.lambda;
  } else if (opt.sigma) {
    const Frontier frontier = build_frontier(observed, beta);
    const LambdaSolution sol = lambda_from_sigma(frontier, *opt.sigma);
    lambda = sol.lambda;
    status = sol.status;
    summary.emplace_back("sigma", format_double(*opt.sigma));
  } else if (opt.kappa) {
    const Frontier frontier = build_frontier(observed, beta);
    const LambdaSolution sol = lambda_from_kappa(frontier, *opt.kappa);
    lambda = sol.lambda;
    status = sol.status;
    summary.emplace_back("kappa", format_double(*opt.kappa));
  } else if (opt.epsilon) {
    const ErrorBound bound = lambda_bound_for_error(observed, beta, *opt.epsilon);
    lambda = 0.999 * bound.lambda_max;  // the bound itself is open
    summary.emplace_back("epsilon", format_double(*opt.epsilon));
    summary.emplace_back("ell_star", std::to_string(bound.ell_star));
    summary.emplace_back("lambda_max", format_double(bound.lambda_max));
  }

  const RegularizationResult result = regularize(observed, beta, lambda);

  if (opt.sigma && status == ConstraintStatus::active) {
    const double target = *opt.sigma * *opt.sigma;
    if (std::abs(result.discrepancy_value - target) > 1e-8 * std::max(target, 1e-300))
      throw NumericError("sigma round trip failed the consistency check");
  }
  if (opt.kappa && status == ConstraintStatus::active) {
    if (std::abs(result.hybrid_norm_value - *opt.kappa) >
        1e-8 * std::max(*opt.kappa, 1e-300))
      throw NumericError("kappa round trip failed the consistency check");
  }

  write_coefficients(dir / "regularized.csv", result.coefficients);

  const double observed_norm = observed.entries().stableNorm();
  const double regularized_norm = result.coefficients.entries().stableNorm();
  summary.emplace_back("lambda", format_double(lambda));
  if (status) summary.emplace_back("solve_status", to_string(*status));
  summary.emplace_back("sparsity", format_double(result.sparsity));
  summary.emplace_back("active_count", std::to_string(result.active_set.size()));
  summary.emplace_back("active_degrees", join_degrees(result.active_set));
  summary.emplace_back("hybrid_norm", format_double(result.hybrid_norm_value));
  summary.emplace_back("discrepancy", format_double(result.discrepancy_value));
  summary.emplace_back(
      "l2_norm_ratio",
      format_double(observed_norm > 0 ? regularized_norm / observed_norm : 1.0));

  if (opt.grid) {
    const QuadratureGrid grid(observed.band_limit());
    const GridField observed_field = synthesize(observed, grid);
    const GridField regularized_field = synthesize(result.coefficients, grid);
    write_grid_field(dir / "observed_field.csv", observed_field);
    write_grid_field(dir / "regularized_field.csv", regularized_field);
    const FieldErrors unscaled = field_errors(regularized_field, observed_field);
    summary.emplace_back("l2_error", format_double(unscaled.l2));
    summary.emplace_back("linf_error", format_double(unscaled.linf));
    if (regularized_norm > 0) {
      const double gamma = scaling_factor(observed, result.coefficients);
      const GridField scaled =
          synthesize(scaled_field(result.coefficients, gamma), grid);
      const FieldErrors scaled_errors = field_errors(scaled, observed_field);
      summary.emplace_back("gamma_norm", format_double(gamma));
      summary.emplace_back("l2_error_scaled", format_double(scaled_errors.l2));
      summary.emplace_back("linf_error_scaled", format_double(scaled_errors.linf));
    } else {
      summary.emplace_back("gamma_norm", "undefined (fully thresholded)");
    }
  }

  write_summary(dir / "summary.txt", summary);
  write_echo(dir);
}

void cmd_frontier(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const CoefficientSet observed = load_input(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, observed.band_limit());
  const Frontier frontier = build_frontier(observed, beta);

  write_frontier_csv(dir / "frontier.csv", frontier, opt.samples_per_segment);
  write_l0_csv(dir / "l0_frontier.csv", l0_frontier(frontier));
  write_summary(dir / "summary.txt",
                {{"band_limit", std::to_string(frontier.band_limit())},
                 {"knots", std::to_string(frontier.knots().size())},
                 {"lambda_zero", format_double(frontier.lambda_zero())},
                 {"total_power", format_double(frontier.total_power())},
                 {"total_hybrid_norm", format_double(frontier.total_hybrid_norm())}});
  write_echo(dir);
}

void cmd_solve_lambda(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const CoefficientSet observed = load_input(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, observed.band_limit());

  std::vector<std::pair<std::string, std::string>> summary;
  if (opt.sigma) {
    const LambdaSolution sol = lambda_from_sigma(build_frontier(observed, beta), *opt.sigma);
    summary.emplace_back("selector", "sigma");
    summary.emplace_back("value", format_double(*opt.sigma));
    summary.emplace_back("lambda", format_double(sol.lambda));
    summary.emplace_back("status", to_string(sol.status));
  } else if (opt.kappa) {
    const LambdaSolution sol = lambda_from_kappa(build_frontier(observed, beta), *opt.kappa);
    summary.emplace_back("selector", "kappa");
    summary.emplace_back("value", format_double(*opt.kappa));
    summary.emplace_back("lambda", format_double(sol.lambda));
    summary.emplace_back("status", to_string(sol.status));
  } else if (opt.epsilon) {
    const ErrorBound bound = lambda_bound_for_error(observed, beta, *opt.epsilon);
    summary.emplace_back("selector", "epsilon");
    summary.emplace_back("value", format_double(*opt.epsilon));
    summary.emplace_back("lambda_max", format_double(bound.lambda_max));
    summary.emplace_back("ell_star", std::to_string(bound.ell_star));
    summary.emplace_back("lambda", format_double(0.999 * bound.lambda_max));
    summary.emplace_back("note",
                         "lambda_max is an open bound; lambda = 0.999*lambda_max is "
                         "the applied value");
  }
  write_summary(dir / "solution.txt", summary);
  write_echo(dir);
}

void cmd_scale(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const CoefficientSet observed = load_input(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, observed.band_limit());
  const RegularizationResult result = regularize(observed, beta, *opt.lambda);
  if (result.coefficients.entries().stableNorm() == 0.0)
    throw std::domain_error("fully thresholded; scaling undefined");

  const ScalingReport report = make_scaling_report(observed, result.coefficients);
  write_scaling_csv(dir / "scaling.csv", report, opt.gamma_samples);
  write_summary(
      dir / "summary.txt",
      {{"lambda", format_double(*opt.lambda)},
       {"gamma_norm", format_double(report.gamma_norm)},
       {"gamma_opt", format_double(report.gamma_opt)},
       {"discrepancy_at_1", format_double(report.discrepancy_at(1.0))},
       {"discrepancy_at_gamma_norm", format_double(report.discrepancy_at(report.gamma_norm))},
       {"discrepancy_at_gamma_opt", format_double(report.discrepancy_at(report.gamma_opt))}});
  write_echo(dir);
}

void cmd_simulate(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  if (opt.realizations < 1)
    throw std::invalid_argument("--realizations must be >= 1");
  const PowerSpectrum spectrum = resolve_spectrum(opt);
  write_spectrum(dir / "spectrum.csv", spectrum);

  std::optional<QuadratureGrid> grid;
  if (opt.grid) grid.emplace(spectrum.band_limit());
  for (int i = 0; i < opt.realizations; ++i) {
    const CoefficientSet a = sample_isotropic(spectrum, derive_seed(opt.seed, i));
    char name[32];
    std::snprintf(name, sizeof name, "coeffs_%04d.csv", i);
    write_coefficients(dir / name, a);
    if (grid) {
      std::snprintf(name, sizeof name, "field_%04d.csv", i);
      write_grid_field(dir / name, synthesize(a, *grid));
    }
  }

  write_summary(dir / "summary.txt",
                {{"band_limit", std::to_string(spectrum.band_limit())},
                 {"seed", std::to_string(opt.seed)},
                 {"realizations", std::to_string(opt.realizations)},
                 {"seed_derivation", "mix64(seed + 0x9E3779B97F4A7C15 * (index + 1))"}});
  write_echo(dir);
}

void cmd_isotropy_test(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const PowerSpectrum spectrum = resolve_spectrum(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, spectrum.band_limit());
  if (opt.rotation.size() != 3)
    throw std::invalid_argument("--rotation needs three ZYZ angles");
  const Rotation rotation{opt.rotation[0], opt.rotation[1], opt.rotation[2]};
  const std::vector<SpherePoint> probes = resolve_probes(opt);
  ShrinkageKind kind;
  if (opt.shrinkage == "block")
    kind = ShrinkageKind::degree_block;
  else if (opt.shrinkage == "l1")
    kind = ShrinkageKind::per_coefficient;
  else
    throw std::invalid_argument("--shrinkage must be 'block' or 'l1'");

  EnsembleSpec ensemble{spectrum, opt.realizations, opt.seed};
  const IsotropyReport report =
      isotropy_test(ensemble, beta, *opt.lambda, rotation, probes, opt.significance, kind);

  write_isotropy_report(dir / "isotropy_report.txt", report);
  double min_p = 1.0;
  for (const auto& check : report.checks) min_p = std::min(min_p, check.p_value);
  write_summary(dir / "summary.txt",
                {{"result", report.skipped ? "SKIPPED" : (report.passed ? "PASS" : "FAIL")},
                 {"tests", std::to_string(report.test_count)},
                 {"min_p_value", format_double(min_p)}});
  write_echo(dir);
}

void cmd_report(const Options& opt) {
  const fs::path dir = prepare_out_dir(opt);
  const CoefficientSet observed = load_input(opt);
  const DegreeWeights beta = resolve_beta(opt.beta_tokens, observed.band_limit());
  const QuadratureGrid grid(observed.band_limit());
  const GridField observed_field = synthesize(observed, grid);

  struct Column {
    std::string label;
    double sparsity;
    double gamma;
    double l2_unscaled, linf_unscaled;
    double l2_scaled, linf_scaled;
  };
  std::vector<Column> columns;

  // Full reconstruction baseline: one synthesis/analysis round trip.
  {
    const GridField roundtrip = synthesize(analyze(observed_field), grid);
    const FieldErrors errors = field_errors(roundtrip, observed_field);
    columns.push_back({"fourier",
                       static_cast<double>(observed.zero_count()) / observed.size(),
                       1.0, errors.l2, errors.linf, errors.l2, errors.linf});
  }

  for (double lambda : opt.lambdas) {
    const RegularizationResult result = regularize(observed, beta, lambda);
    const GridField regularized_field = synthesize(result.coefficients, grid);
    const FieldErrors unscaled = field_errors(regularized_field, observed_field);
    Column col;
    col.label = "lambda=" + format_double(lambda);
    col.sparsity = result.sparsity;
    col.l2_unscaled = unscaled.l2;
    col.linf_unscaled = unscaled.linf;
    if (result.coefficients.entries().stableNorm() > 0.0) {
      col.gamma = scaling_factor(observed, result.coefficients);
      const GridField scaled = synthesize(scaled_field(result.coefficients, col.gamma), grid);
      const FieldErrors scaled_errors = field_errors(scaled, observed_field);
      col.l2_scaled = scaled_errors.l2;
      col.linf_scaled = scaled_errors.linf;
    } else {
      col.gamma = std::numeric_limits<double>::quiet_NaN();
      col.l2_scaled = unscaled.l2;
      col.linf_scaled = unscaled.linf;
    }
    columns.push_back(col);
  }

  {
    auto out = detail::open_output(dir / "report.csv");
    out << "label,sparsity,gamma,l2_error_unscaled,linf_error_unscaled,"
           "l2_error_scaled,linf_error_scaled\n";
    for (const auto& col : columns)
      out << col.label << ',' << format_double(col.sparsity) << ','
          << format_double(col.gamma) << ',' << format_double(col.l2_unscaled) << ','
          << format_double(col.linf_unscaled) << ',' << format_double(col.l2_scaled)
          << ',' << format_double(col.linf_scaled) << '\n';
  }
  {
    auto out = detail::open_output(dir / "report.txt");
    const auto row = [&](const std::string& name, auto getter) {
      out << name << '\n';
      for (const auto& col : columns)
        out << "  " << col.label << ": " << getter(col) << '\n';
    };
    row("sparsity", [](const Column& c) { return format_double(c.sparsity); });
    row("gamma", [](const Column& c) { return format_double(c.gamma); });
    row("l2_error_unscaled", [](const Column& c) { return format_double(c.l2_unscaled); });
    row("linf_error_unscaled",
        [](const Column& c) { return format_double(c.linf_unscaled); });
    row("l2_error_scaled", [](const Column& c) { return format_double(c.l2_scaled); });
    row("linf_error_scaled", [](const Column& c) { return format_double(c.linf_scaled); });
  }
  write_echo(dir);
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"sparse isotropy-preserving regularization of band-limited fields "
               "on the unit sphere"};
  app.require_subcommand(1);

  // Arguments are echoed verbatim (minus --out) for exact re-runs.
  for (int i = 1; i < argc; ++i) g_echo_args.emplace_back(argv[i]);
  for (std::size_t i = 0; i < g_echo_args.size();) {
    if (g_echo_args[i] == "--out") {
      const std::size_t last = std::min(i + 2, g_echo_args.size());
      g_echo_args.erase(g_echo_args.begin() + i, g_echo_args.begin() + last);
    } else if (g_echo_args[i].rfind("--out=", 0) == 0) {
      g_echo_args.erase(g_echo_args.begin() + i);
    } else {
      ++i;
    }
  }

  const auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "coefficient CSV or grid-field CSV")
        ->required();
    cmd->add_flag("--require-real", opt.require_real,
                  "reject inputs violating the real-field symmetry");
    cmd->add_option("--band-limit", opt.band_limit,
                    "expected band limit (validated against the input)");
  };
  const auto add_beta = [&](CLI::App* cmd) {
    cmd->add_option("--beta", opt.beta_tokens,
                    "degree weights: const | csv <path> | powerlaw <p>")
        ->expected(1, 2);
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "output directory")->required();
  };

  CLI::App* reg = app.add_subcommand("regularize", "apply the degree-block shrinkage");
  add_input(reg);
  add_beta(reg);
  add_out(reg);
  reg->add_flag("--grid", opt.grid, "also synthesize fields and report field errors");
  {
    CLI::App* sel = reg->add_option_group("selector", "exactly one parameter choice");
    sel->add_option("--lambda", opt.lambda, "regularization parameter");
    sel->add_option("--sigma", opt.sigma, "target discrepancy^(1/2)");
    sel->add_option("--kappa", opt.kappa, "target hybrid norm");
    sel->add_option("--epsilon", opt.epsilon, "target l2 error bound");
    sel->require_option(1);
  }

  CLI::App* fro = app.add_subcommand("frontier", "export the efficient frontier");
  add_input(fro);
  add_beta(fro);
  add_out(fro);
  fro->add_option("--samples-per-segment", opt.samples_per_segment,
                  "interior samples per frontier segment")
      ->check(CLI::NonNegativeNumber);

  CLI::App* slv = app.add_subcommand("solve-lambda",
                                     "map sigma, kappa or epsilon to lambda");
  add_input(slv);
  add_beta(slv);
  add_out(slv);
  {
    CLI::App* sel = slv->add_option_group("selector", "exactly one constraint value");
    sel->add_option("--sigma", opt.sigma, "target discrepancy^(1/2)");
    sel->add_option("--kappa", opt.kappa, "target hybrid norm");
    sel->add_option("--epsilon", opt.epsilon, "target l2 error bound");
    sel->require_option(1);
  }

  CLI::App* scl = app.add_subcommand("scale", "norm-restoring rescale diagnostics");
  add_input(scl);
  add_beta(scl);
  add_out(scl);
  scl->add_option("--lambda", opt.lambda, "regularization parameter")->required();
  scl->add_option("--gamma-samples", opt.gamma_samples, "sweep sample count")
      ->check(CLI::PositiveNumber);

  CLI::App* sim = app.add_subcommand("simulate", "draw Gaussian isotropic realizations");
  sim->add_option("--band-limit", opt.band_limit, "band limit for --preset");
  sim->add_option("--spectrum", opt.spectrum_path, "angular power spectrum CSV");
  sim->add_option("--preset", opt.preset, "built-in spectrum (cmb-like)");
  sim->add_option("--seed", opt.seed, "base seed");
  sim->add_option("--realizations", opt.realizations, "number of realizations")
      ->check(CLI::PositiveNumber);
  sim->add_flag("--grid", opt.grid, "also write synthesized fields");
  add_out(sim);

  CLI::App* iso = app.add_subcommand("isotropy-test",
                                     "distributional rotation-invariance check");
  iso->add_option("--band-limit", opt.band_limit, "band limit for --preset");
  iso->add_option("--spectrum", opt.spectrum_path, "angular power spectrum CSV");
  iso->add_option("--preset", opt.preset, "built-in spectrum (cmb-like)");
  iso->add_option("--seed", opt.seed, "base seed");
  iso->add_option("--realizations", opt.realizations, "ensemble size")
      ->check(CLI::PositiveNumber);
  iso->add_option("--lambda", opt.lambda, "regularization parameter")->required();
  add_beta(iso);
  iso->add_option("--rotation", opt.rotation, "ZYZ Euler angles (radians)")
      ->expected(3)
      ->required();
  iso->add_option("--probes", opt.probe_values,
                  "probe points: theta phi theta phi ...")
      ->expected(-4);
  iso->add_option("--shrinkage", opt.shrinkage, "block (default) or l1");
  iso->add_option("--significance", opt.significance, "family-wise significance");
  add_out(iso);

  CLI::App* rep = app.add_subcommand("report", "sparsity/scaling/error table");
  add_input(rep);
  add_beta(rep);
  add_out(rep);
  rep->add_option("--lambda", opt.lambdas, "one or more lambda values")
      ->expected(-1)
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "DOMAIN: " << e.what() << '\n';
    return 5;
  }

  try {
    if (reg->parsed()) cmd_regularize(opt);
    else if (fro->parsed()) cmd_frontier(opt);
    else if (slv->parsed()) cmd_solve_lambda(opt);
    else if (scl->parsed()) cmd_scale(opt);
    else if (sim->parsed()) cmd_simulate(opt);
    else if (iso->parsed()) cmd_isotropy_test(opt);
    else if (rep->parsed()) cmd_report(opt);
    return 0;
  } catch (const IoError& e) {
    std::cerr << "IO: " << e.what() << '\n';
    return 3;
  } catch (const FormatError& e) {
    std::cerr << "FORMAT: " << e.what() << '\n';
    return 4;
  } catch (const NumericError& e) {
    std::cerr << "NUMERIC: " << e.what() << '\n';
    return 6;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "IO: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "DOMAIN: " << e.what() << '\n';
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "DOMAIN: " << e.what() << '\n';
    return 5;
  } catch (const std::out_of_range& e) {
    std::cerr << "DOMAIN: " << e.what() << '\n';
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "NUMERIC: " << e.what() << '\n';
    return 6;
  }
}
