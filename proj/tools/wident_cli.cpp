// Command-line front end: classification, uncertainty reports, family-state
// generation, spectra verification, ratio optimization, gamma sweeps, and
// numerical identity checks for the three-qubit XXZ pair model.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wident/io.hpp"
#include "wident/random.hpp"

namespace {

using namespace wident;

struct GlobalFlags {
  bool quiet = false;
  std::string output;
};

void emit(const GlobalFlags& flags, const std::string& text) {
  if (flags.output.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(flags.output);
    if (!out) throw std::runtime_error("cannot write file: " + flags.output);
    out << text << "\n";
  }
}

void note(const GlobalFlags& flags, const std::string& text) {
  if (!flags.quiet) std::cerr << "note: " << text << "\n";
}

int run_classify(const GlobalFlags& flags, const std::vector<std::string>& files,
                 double tolerance, const std::string& variant_name,
                 bool normalize) {
  const BoundVariant variant = parse_variant(variant_name);
  json results = json::array();
  bool had_error = false;
  for (const std::string& file : files) {
    try {
      const PureState state = read_state_file(file, normalize);
      const Verdict verdict = classify(state, tolerance, variant);
      json entry = verdict_to_json(verdict);
      entry["file"] = file;
      results.push_back(std::move(entry));
      note(flags, file + ": " + to_string(verdict.label));
    } catch (const std::exception& e) {
      results.push_back({{"file", file}, {"error", e.what()}});
      std::cerr << "error: " << file << ": " << e.what() << "\n";
      had_error = true;
    }
  }
  emit(flags, results.size() == 1 ? results.front().dump(2) : results.dump(2));
  return had_error ? 1 : 0;
}

int run_report(const GlobalFlags& flags, const std::string& file, double gamma,
               const std::string& variant_name, bool normalize) {
  const PureState state = read_state_file(file, normalize);
  const UncertaintyReport rep = report(state, gamma, parse_variant(variant_name));
  emit(flags, report_to_json(rep).dump(2));

  const CoefficientSet cs = coefficient_set(state, gamma);
  if (cs.u1 && cs.u2 && cs.u3) {
    std::ostringstream os;
    os << "population fractions u1=" << *cs.u1 << " u2=" << *cs.u2
       << " u3=" << *cs.u3;
    note(flags, os.str());
    if (*cs.u3 < 1.0) {
      const TauBranch branch = tau_branch_for(gamma);
      std::ostringstream os2;
      os2 << "bound profile tau(u3) = " << tau_bound(*cs.u3, branch) << " ("
          << (branch == TauBranch::minus ? "minus" : "plus") << " branch)";
      note(flags, os2.str());
    }
  }
  return 0;
}

int run_generate(const GlobalFlags& flags, const std::string& family, double p,
                 double phi) {
  const CriticalParams params(parse_family(family), p, phi);
  emit(flags, state_to_json(critical_state(params)).dump(2));
  return 0;
}

int run_spectra_verify(const GlobalFlags& flags) {
  bool all_ok = true;
  std::ostringstream out;
  for (const auto& [kind, name] :
       {std::pair{BlockMatrixKind::chirality, "chirality"},
        std::pair{BlockMatrixKind::chirality_squared, "chirality_squared"},
        std::pair{BlockMatrixKind::pair_sum, "pair_sum"}}) {
    const SpectrumReport solved = eigen_solve(block_matrix(kind));
    const std::array<double, 8> expected = exact_spectrum(kind);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k)
      worst = std::max(worst, std::abs(solved.eigenvalues[k] - expected[k]));
    const bool ok = worst <= 1e-12;
    all_ok = all_ok && ok;
    out << name << ": [";
    for (int k = 0; k < 8; ++k)
      out << (k ? ", " : "") << solved.eigenvalues[k];
    out << "]  max deviation " << worst << "  " << (ok ? "PASS" : "FAIL")
        << "\n";
  }
  std::string text = out.str();
  text.pop_back();
  emit(flags, text);
  return all_ok ? 0 : 1;
}

int run_optimize(const GlobalFlags& flags, double gamma, int restarts,
                 std::uint64_t seed, int max_iters) {
  OptimizerConfig config;
  config.restarts = restarts;
  config.seed = seed;
  config.max_iters = max_iters;
  const OptimizationResult result = minimize_ratio(gamma, config);
  const int converged =
      static_cast<int>(std::count(result.restart_converged.begin(),
                                  result.restart_converged.end(), true));
  std::ostringstream os;
  os << converged << "/" << restarts << " restarts converged; best ratio "
     << result.best_ratio;
  note(flags, os.str());
  emit(flags, optimization_to_json(result).dump(2));
  return 0;
}

int run_scan(const GlobalFlags& flags, const std::vector<double>& grid,
             int restarts, std::uint64_t seed, int max_iters,
             const std::string& json_path) {
  OptimizerConfig config;
  config.restarts = restarts;
  config.seed = seed;
  config.max_iters = max_iters;
  config.gamma_grid = grid;
  const std::vector<OptimizationResult> results = gamma_scan(config);
  if (!json_path.empty()) {
    json arr = json::array();
    for (const OptimizationResult& r : results)
      arr.push_back(optimization_to_json(r));
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot write file: " + json_path);
    out << arr.dump(2) << "\n";
  }
  std::string csv = scan_csv(results);
  if (!csv.empty() && csv.back() == '\n') csv.pop_back();
  emit(flags, csv);
  return 0;
}

int run_oracle_check(const GlobalFlags& flags, int samples,
                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gamma_dist(-3.0, 3.0);
  double worst_numerator = 0, worst_denominator = 0, worst_sum = 0;
  double worst_diff_form = 0, worst_sum_form = 0;
  double worst_variant_gap = 0;
  int pairwise_violations = 0;

  for (int i = 0; i < samples; ++i) {
    const PureState psi = haar_state(rng);
    const AnisotropyGamma gamma(gamma_dist(rng));
    const UncertaintyReport rep =
        report(psi, gamma, BoundVariant::robertson);
    const CoefficientSet cs = coefficient_set(psi, gamma);

    worst_numerator = std::max(
        worst_numerator, std::abs(reduced_numerator(cs, gamma) - rep.big_n));
    const double quarter_sum =
        0.25 * (std::abs(cs.a) + std::abs(cs.b) + std::abs(cs.c));
    worst_denominator =
        std::max(worst_denominator, std::abs(quarter_sum - rep.big_d));
    const Cx abc_sum = cs.a + cs.b + cs.c;
    const double chirality_expect =
        expectation(block_matrix(BlockMatrixKind::chirality), psi).real();
    worst_sum = std::max(
        worst_sum,
        std::abs(abc_sum - Cx((2.0 * gamma.value + 1.0) * chirality_expect, 0)));
    const double diff_expect =
        expectation(block_matrix(BlockMatrixKind::chirality_squared), psi)
            .real();
    worst_diff_form = std::max(
        worst_diff_form, std::abs(diff_expect - (cs.f1 + cs.g1 + cs.h1)));
    const double sum_expect =
        expectation(block_matrix(BlockMatrixKind::pair_sum), psi).real();
    worst_sum_form =
        std::max(worst_sum_form, std::abs(sum_expect - (cs.f2 + cs.g2 + cs.h2)));

    const auto split = rep.bound_terms.split();
    const auto rob = rep.bound_terms.robertson();
    for (int k = 0; k < 3; ++k)
      worst_variant_gap = std::max(worst_variant_gap, std::abs(split[k] - rob[k]));
    if (rep.split_bound_violated) ++pairwise_violations;
  }

  constexpr double tol = 1e-9;
  bool all_ok = true;
  std::ostringstream out;
  auto line = [&](const char* name, double residual) {
    const bool ok = residual < tol;
    all_ok = all_ok && ok;
    out << name << ": max residual " << residual << "  "
        << (ok ? "PASS" : "FAIL") << "\n";
  };
  line("numerator vs variance sum", worst_numerator);
  line("denominator vs quarter modulus sum", worst_denominator);
  line("commutator coefficient sum vs chirality", worst_sum);
  line("difference form vs chirality_squared", worst_diff_form);
  line("sum form vs pair_sum", worst_sum_form);
  out << "info: max |split - robertson| term gap " << worst_variant_gap
      << "; states with split pairwise-bound violations " << pairwise_violations
      << "/" << samples << " (recorded, not asserted)";
  emit(flags, out.str());
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Identify three-qubit W-class states through saturation of additive and "
      "multiplicative uncertainty relations for XXZ pair Hamiltonians"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_flag("--quiet", flags.quiet, "suppress diagnostic notes on stderr");
  app.add_option("--output", flags.output,
                 "write the primary result to this file instead of stdout");

  // classify
  auto* classify_cmd =
      app.add_subcommand("classify", "label states from state documents");
  classify_cmd->fallthrough();
  std::vector<std::string> classify_files;
  double tolerance = 1e-6;
  std::string variant_name = "robertson";
  bool normalize = false;
  classify_cmd->add_option("files", classify_files,
                           "state documents (\"-\" reads stdin)")
      ->required();
  classify_cmd->add_option("--tolerance", tolerance,
                           "relative tolerance on the saturation value");
  classify_cmd->add_option("--variant", variant_name,
                           "bound-term convention: paper | robertson")
      ->check(CLI::IsMember({"paper", "split", "robertson"}));
  classify_cmd->add_flag("--normalize", normalize,
                         "renormalize input amplitudes instead of rejecting");

  // report
  auto* report_cmd = app.add_subcommand(
      "report", "full uncertainty report for one state at one gamma");
  report_cmd->fallthrough();
  std::string report_file;
  double gamma = 1.0;
  report_cmd->add_option("file", report_file, "state document (\"-\" reads stdin)")
      ->required();
  report_cmd->add_option("--gamma", gamma, "anisotropy")->required();
  report_cmd->add_option("--variant", variant_name,
                         "bound-term convention: paper | robertson")
      ->check(CLI::IsMember({"paper", "split", "robertson"}));
  report_cmd->add_flag("--normalize", normalize,
                       "renormalize input amplitudes instead of rejecting");

  // generate
  auto* generate_cmd =
      app.add_subcommand("generate", "emit a critical-family state document");
  generate_cmd->fallthrough();
  std::string family = "c1";
  double p = 0.5, phi = 0.0;
  generate_cmd->add_option("--family", family, "c1 | c2")
      ->required()
      ->check(CLI::IsMember({"c1", "c2"}));
  generate_cmd->add_option("--p", p, "mixing weight in [0, 1]")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--phi", phi, "relative phase in radians");

  // spectra-verify
  auto* spectra_cmd = app.add_subcommand(
      "spectra-verify", "solve the three block matrices and check their spectra");
  spectra_cmd->fallthrough();

  // optimize
  auto* optimize_cmd = app.add_subcommand(
      "optimize", "search for the minimal additive ratio at fixed gamma");
  optimize_cmd->fallthrough();
  double opt_gamma = 1.0;
  int restarts = 64;
  std::uint64_t seed = 20260822;
  int max_iters = 4000;
  optimize_cmd->add_option("--gamma", opt_gamma, "anisotropy")->required();
  optimize_cmd->add_option("--restarts", restarts, "independent restarts")
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--seed", seed, "master RNG seed");
  optimize_cmd->add_option("--max-iters", max_iters,
                           "simplex iterations per restart")
      ->check(CLI::PositiveNumber);

  // scan
  auto* scan_cmd = app.add_subcommand(
      "scan", "minimal additive ratio across a gamma grid (CSV output)");
  scan_cmd->fallthrough();
  std::string grid_text;
  std::string scan_json;
  scan_cmd->add_option("--gamma-grid", grid_text,
                       "comma-separated gamma values, e.g. \"1,-2,0.5\"")
      ->required();
  scan_cmd->add_option("--restarts", restarts, "independent restarts per point")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--seed", seed, "master RNG seed");
  scan_cmd->add_option("--max-iters", max_iters,
                       "simplex iterations per restart")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--json", scan_json,
                       "also write full results as JSON to this file");

  // oracle-check
  auto* oracle_cmd = app.add_subcommand(
      "oracle-check",
      "cross-check the closed-form identities on random states");
  oracle_cmd->fallthrough();
  int samples = 1000;
  oracle_cmd->add_option("--samples", samples, "number of random states")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (classify_cmd->parsed())
      return run_classify(flags, classify_files, tolerance, variant_name,
                          normalize);
    if (report_cmd->parsed())
      return run_report(flags, report_file, gamma, variant_name, normalize);
    if (generate_cmd->parsed()) return run_generate(flags, family, p, phi);
    if (spectra_cmd->parsed()) return run_spectra_verify(flags);
    if (optimize_cmd->parsed())
      return run_optimize(flags, opt_gamma, restarts, seed, max_iters);
    if (scan_cmd->parsed()) {
      std::vector<double> grid;
      std::stringstream ss(grid_text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        double value = 0;
        try {
          value = std::stod(item, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != item.size()) {
          std::cerr << "error: --gamma-grid entry \"" << item
                    << "\" is not a number\n";
          return 2;
        }
        grid.push_back(value);
      }
      if (grid.empty()) {
        std::cerr << "error: --gamma-grid is empty\n";
        return 2;
      }
      return run_scan(flags, grid, restarts, seed, max_iters, scan_json);
    }
    if (oracle_cmd->parsed()) return run_oracle_check(flags, samples, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
