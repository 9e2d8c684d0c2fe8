// screwsr: command-line front end.
//
//   screwsr model-spectrum -k 0 --lambda 1 --cutoff 20
//   screwsr spectrum data/cubic_torus.json -k 0 --lambda 1 --cutoff 12
//   screwsr geodesic -k -1 --lambda 2 --kappa 0.5 --tau 0.3 --t1 5 --dt 0.1
//   screwsr verify --suite all --seed 42
//   screwsr compare a.csv b.csv
//
// Exit codes: 0 success, 1 verification failure or spectrum mismatch,
// 2 usage or input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "screwsr/io.hpp"
#include "screwsr/screwsr.hpp"
#include "verify_suites.hpp"

namespace {

using namespace screwsr;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  int k = 0;
  double lambda = 0.0;
  std::string format = "csv";
  std::string out;
};

struct BudgetFlags {
  double cutoff = 0.0;
  long m_max = 64;
  double rational_tol = 1e-9;
  long max_denominator = 1000000;

  EnumerationBudget budget() const { return EnumerationBudget(cutoff, m_max, rational_tol, max_denominator); }
};

void add_space_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("-k", c.k, "curvature of the model space")->required()->check(CLI::IsMember({-1, 0, 1}));
  cmd->add_option("--lambda", c.lambda, "pitch of the screw distribution")->required();
}

void add_output_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "write to this file instead of stdout");
}

void add_budget_flags(CLI::App* cmd, BudgetFlags& b) {
  cmd->add_option("--cutoff", b.cutoff, "largest length to report")->required();
  cmd->add_option("--mmax", b.m_max, "largest rotation index m for helix types");
  cmd->add_option("--rational-tol", b.rational_tol, "tolerance for detecting rational turn ratios");
  cmd->add_option("--max-denominator", b.max_denominator, "largest denominator in the rational search");
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + c.out);
  f << text;
}

/// Runs verify_entry on every witness; reports failures on stderr.
bool verify_all(const std::vector<SpectrumEntry>& entries, const ScrewConfig& cfg) {
  bool ok = true;
  for (const auto& e : entries) {
    const VerificationReport rep = verify_entry(e, cfg);
    if (rep.passed) continue;
    ok = false;
    std::cerr << "verification failed for " << to_string(e.source()) << " entry of length "
              << io::format_real(e.length) << ":";
    for (const auto& f : rep.failures) std::cerr << ' ' << f << ';';
    std::cerr << '\n';
  }
  return ok;
}

int write_spectrum(const Common& c, const ScrewConfig& cfg, const EnumerationBudget& budget,
                   const std::vector<SpectrumLength>& spectrum) {
  const auto entries = flatten(spectrum);
  if (!verify_all(entries, cfg)) return kExitFailure;
  std::ostringstream os;
  const auto meta = io::SpectrumMetadata::of(cfg, budget);
  if (c.format == "json") {
    io::write_spectrum_json(os, meta, entries);
  } else {
    io::write_spectrum_csv(os, meta, entries);
  }
  emit(c, os.str());
  return kExitOk;
}

std::optional<double> tolerance_override() {
  const char* env = std::getenv("SCREWSR_VERIFY_TOL");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const double tol = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(tol > 0.0)) {
    throw PreconditionError(std::string("SCREWSR_VERIFY_TOL must be a positive number (got '") + env + "')");
  }
  return tol;
}

Vec3 to_vec3(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw PreconditionError(std::string(flag) + " takes three comma-separated reals");
  return Vec3(v[0], v[1], v[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Length spectra and geodesics of the lambda-screw sub-Riemannian structure on frame bundles"};
  app.require_subcommand(1);

  Common common;
  BudgetFlags budget_flags;

  auto* model = app.add_subcommand("model-spectrum", "length spectrum of the model space M_k");
  add_space_flags(model, common);
  add_budget_flags(model, budget_flags);
  add_output_flags(model, common);

  std::string cl_file;
  auto* spectrum = app.add_subcommand("spectrum", "length spectrum of a flat or hyperbolic manifold");
  spectrum->add_option("clspectrum", cl_file, "complex length spectrum (JSON)")->required();
  add_space_flags(spectrum, common);
  add_budget_flags(spectrum, budget_flags);
  add_output_flags(spectrum, common);

  double kappa = 0.0, tau = 0.0, t0 = 0.0, t1 = 10.0, dt = 0.1, speed_scale = 1.0;
  bool lie = false, check = false;
  std::vector<double> x_flag, y_flag;
  auto* geo = app.add_subcommand("geodesic", "sample a sub-Riemannian geodesic through the identity");
  add_space_flags(geo, common);
  add_output_flags(geo, common);
  geo->add_option("--kappa", kappa, "curvature of the projected helix");
  geo->add_option("--tau", tau, "torsion of the projected helix");
  geo->add_flag("--lie", lie, "use the product-of-exponentials form with controls --x, --y");
  geo->add_option("--x", x_flag, "translation control x (a,b,c)")->delimiter(',');
  geo->add_option("--y", y_flag, "rotation control y (a,b,c)")->delimiter(',');
  geo->add_option("--t0", t0, "first sample time");
  geo->add_option("--t1", t1, "last sample time");
  geo->add_option("--dt", dt, "time step");
  geo->add_option("--speed", speed_scale, "reparametrize as gamma(d t)");
  geo->add_flag("--verify", check, "report the horizontality residual on stderr (exit 1 above 1e-6)");

  std::string suite = "all";
  unsigned long seed = 42;
  auto* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember({"horizontality", "frenet", "equivalence", "closing", "all"}));
  verify->add_option("--seed", seed, "random seed");

  std::string file_a, file_b;
  double compare_tol = 1e-9;
  auto* compare = app.add_subcommand("compare", "compare the length sets of two spectrum files");
  compare->add_option("a", file_a, "spectrum CSV or JSON")->required();
  compare->add_option("b", file_b, "spectrum CSV or JSON")->required();
  compare->add_option("--tol", compare_tol, "relative tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*model) {
      const ScrewConfig cfg(space_form_from_curvature(common.k), common.lambda);
      const EnumerationBudget budget = budget_flags.budget();
      return write_spectrum(common, cfg, budget, model_spectrum(cfg, budget));
    }
    if (*spectrum) {
      const ScrewConfig cfg(space_form_from_curvature(common.k), common.lambda);
      const EnumerationBudget budget = budget_flags.budget();
      const CLSpectrum cls = io::read_cl_spectrum(cl_file);
      return write_spectrum(common, cfg, budget, full_spectrum(cls, cfg, budget));
    }
    if (*geo) {
      const ScrewConfig cfg(space_form_from_curvature(common.k), common.lambda);
      detail::require(speed_scale >= 0.0, "--speed must be non-negative");
      GeodesicSpec spec = lie ? lie_geodesic(to_vec3(x_flag, "--x"), to_vec3(y_flag, "--y"), cfg)
                              : helix_geodesic(kappa, tau, cfg);
      if (!lie) detail::require(x_flag.empty() && y_flag.empty(), "--x and --y need --lie");
      spec.speed_scale = speed_scale;
      const auto samples = sample_trajectory(spec, t0, t1, dt);
      std::ostringstream os;
      if (common.format == "json") {
        io::write_trajectory_json(os, samples);
      } else {
        io::write_trajectory_csv(os, samples);
      }
      int status = kExitOk;
      if (check) {
        std::vector<double> times;
        for (const auto& s : samples) times.push_back(s.t);
        const HorizontalityReport rep = horizontality_check(spec, times);
        std::cerr << "horizontality max_residual=" << io::format_real(rep.max_residual)
                  << " speed_min=" << io::format_real(rep.min_speed)
                  << " speed_max=" << io::format_real(rep.max_speed) << '\n';
        if (!(rep.max_residual < kHorizontalityTolerance)) status = kExitFailure;
      }
      emit(common, os.str());
      return status;
    }
    if (*verify) {
      cli::SuiteContext ctx(seed, tolerance_override());
      for (const auto& s : cli::all_suites()) {
        if (suite == "all" || suite == s.name) s.run(ctx);
      }
      cli::print_results(std::cout, ctx.results());
      bool ok = true;
      for (const auto& r : ctx.results()) ok = ok && r.passed();
      std::cout << (ok ? "all properties passed\n" : "some properties FAILED\n");
      return ok ? kExitOk : kExitFailure;
    }
    if (*compare) {
      const auto a = io::row_lengths(io::read_spectrum(file_a));
      const auto b = io::row_lengths(io::read_spectrum(file_b));
      const CompareReport rep = compare_spectra(a, b, compare_tol);
      if (rep.match) {
        std::cout << "match: " << rep.size_a << " lengths\n";
        return kExitOk;
      }
      std::cout << "mismatch at index " << rep.index << ": "
                << (rep.a_value ? io::format_real(*rep.a_value) : std::string("(none)")) << " vs "
                << (rep.b_value ? io::format_real(*rep.b_value) : std::string("(none)")) << " (" << rep.size_a
                << " vs " << rep.size_b << " lengths)\n";
      return kExitFailure;
    }
  } catch (const VerificationError& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
