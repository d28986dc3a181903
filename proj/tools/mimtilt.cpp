#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mimtilt/divergence.hpp"
#include "mimtilt/io.hpp"
#include "mimtilt/oracle.hpp"
#include "mimtilt/solver.hpp"
#include "mimtilt/sweep.hpp"

namespace {

using namespace mimtilt;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeProb:
    case ErrorCode::NotNormalized:
    case ErrorCode::DuplicateLabel:
    case ErrorCode::TooFewAtoms:
    case ErrorCode::AllZeroCounts:
    case ErrorCode::LabelMismatch:
    case ErrorCode::SupportMismatch:
    case ErrorCode::SupportViolation:
    case ErrorCode::ParseError:
      return 2;  // input errors
    default:
      return 3;  // domain errors
  }
}

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void print_tilt(const TiltResult& res) {
  std::cout << "omega: " << fmt(res.omega) << "\n";
  std::cout << "beta: " << fmt(res.beta) << "\n";
  std::cout << "alpha: " << fmt(res.alpha) << "\n";
  if (res.mim_overflow)
    std::cout << "mim_total: not representable (log value " << fmt(res.log_mim_total) << ")\n";
  else
    std::cout << "mim_total: " << fmt(res.mim_total) << "\n";
  std::cout << "kl_to_source: " << fmt(res.kl_to_source) << " nats\n";
  std::cout << "utility:\n";
  std::size_t width = 0;
  for (const auto& label : res.utility.labels()) width = std::max(width, label.size());
  for (Eigen::Index i = 0; i < res.utility.size(); ++i)
    std::cout << "  " << res.utility.labels()[i]
              << std::string(width - res.utility.labels()[i].size() + 2, ' ')
              << fmt(res.utility[i]) << "\n";
}

void print_tilt_json(const TiltResult& res) {
  nlohmann::json doc;
  doc["omega"] = res.omega;
  doc["beta"] = res.beta;
  doc["alpha"] = res.alpha;
  doc["mim_total"] = res.mim_overflow ? nlohmann::json() : nlohmann::json(res.mim_total);
  doc["log_mim_total"] = res.log_mim_total;
  doc["mim_overflow"] = res.mim_overflow;
  doc["kl_to_source"] = res.kl_to_source;
  doc["labels"] = res.utility.labels();
  doc["utility"] =
      std::vector<double>(res.utility.probs().data(), res.utility.probs().data() + res.utility.size());
  std::cout << doc.dump() << "\n";
}

SweepRange parse_range(const std::string& text) {
  SweepRange range{};
  double* slots[3] = {&range.start, &range.stop, &range.step};
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto colon = text.find(':', pos);
    const bool last = i == 2;
    if (last != (colon == std::string::npos))
      fail(ErrorCode::InvalidArgument, "range must look like start:stop:step");
    const std::string part = text.substr(pos, last ? std::string::npos : colon - pos);
    try {
      std::size_t used = 0;
      *slots[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "range component '" + part + "' is not a number");
    }
    pos = colon + 1;
  }
  return range;
}

// --- verify ---

struct CheckReporter {
  int failures = 0;

  void report(bool pass, const std::string& name, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  (" << detail << ")\n";
    if (!pass) ++failures;
  }
};

double linf(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  return (a - b).abs().maxCoeff();
}

Pmf random_pmf(std::mt19937_64& rng, int atoms) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::ArrayXd probs(atoms);
  for (int i = 0; i < atoms; ++i) probs[i] = -std::log(1.0 - unit(rng));
  std::vector<std::string> labels;
  for (int i = 0; i < atoms; ++i) labels.push_back("a" + std::to_string(i + 1));
  return Pmf::from_probs(std::move(labels), std::move(probs), /*renormalize=*/true);
}

void run_property_battery(CheckReporter& checks) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<int> atom_count(2, 4);
  std::uniform_real_distribution<double> omega_range(-30.0, 30.0);

  double min_kl = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 1000; ++trial) {
    const int atoms = atom_count(rng);
    const Pmf p = random_pmf(rng, atoms);
    Pmf u = Pmf::from_probs(p.labels(), random_pmf(rng, atoms).probs());
    min_kl = std::min(min_kl, kl(u, p));
  }
  checks.report(min_kl >= 0.0, "kl nonnegative on 1000 random pairs",
                "min " + fmt(min_kl));

  double worst_norm = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Pmf p = random_pmf(rng, atom_count(rng));
    const TiltResult res = tilt(p, ImportanceCoefficient(omega_range(rng)));
    worst_norm = std::max(worst_norm, std::abs(res.utility.probs().sum() - 1.0));
  }
  checks.report(worst_norm <= 1e-12, "tilt outputs normalized",
                "max |sum - 1| " + fmt(worst_norm));

  bool monotone = true;
  for (int trial = 0; trial < 200 && monotone; ++trial) {
    const Pmf p = random_pmf(rng, atom_count(rng));
    const double omega = 0.5 + 29.5 * std::generate_canonical<double, 53>(rng);
    const TiltResult res = tilt(p, ImportanceCoefficient(omega));
    for (Eigen::Index i = 0; i < p.size() && monotone; ++i)
      for (Eigen::Index j = 0; j < p.size() && monotone; ++j)
        if (p[i] < p[j] - 1e-6)
          monotone = res.utility[i] / p[i] > res.utility[j] / p[j];
  }
  checks.report(monotone, "U*/P ratios decrease in P(a) for omega > 0",
                monotone ? "200 random tilts" : "violated");
}

int cmd_verify(const std::string& dist_path, double beta, double grid_step, long n,
               bool properties) {
  const Pmf source = load_distribution_json(dist_path);
  CheckReporter checks;

  const ConstraintSpec spec = ConstraintSpec::with_budget(beta, ConstraintMode::Inequality);
  const TiltResult closed = solve_budget(source, spec);

  const double neutral = source.probs().square().sum();
  const bool active = beta < neutral;
  const double feas_gap = closed.beta - beta;
  checks.report(active ? std::abs(feas_gap) <= 1e-12 : feas_gap <= 1e-12,
                "closed form satisfies the budget",
                "sum(P U*) - beta = " + fmt(feas_gap));

  const GridMinimizerResult grid = grid_minimize_kl(source, spec, grid_step);
  checks.report(grid.kl_value >= closed.kl_to_source - 1e-9,
                "no lattice point beats the closed form",
                "grid KL - closed KL = " + fmt(grid.kl_value - closed.kl_to_source));

  // lattice resolution bound: D(.||P) is 1-strongly convex in L2 on the
  // simplex, so the feasible argmin sits within ~step * sqrt(d / u_min)
  double u_min = 1.0;
  for (Eigen::Index i = 0; i < closed.utility.size(); ++i)
    if (closed.utility[i] > 0.0) u_min = std::min(u_min, closed.utility[i]);
  const double d = static_cast<double>(closed.utility.support_size());
  const double grid_tol = grid.grid_step * (2.0 + 2.0 * std::sqrt(d / u_min));
  const double grid_gap = linf(grid.argmin.probs(), closed.utility.probs());
  checks.report(grid_gap <= grid_tol, "grid argmin near closed form",
                "Linf " + fmt(grid_gap) + " <= " + fmt(grid_tol));

  const GridMinimizerResult refined = refine_minimize_kl(source, spec, grid.argmin);
  const double refined_gap = linf(refined.argmin.probs(), closed.utility.probs());
  checks.report(refined_gap <= 1e-4, "refined argmin matches closed form",
                "Linf " + fmt(refined_gap) + " <= 1e-04");

  const double kl_gap = refined.kl_value - closed.kl_to_source;
  checks.report(std::abs(kl_gap) <= 1e-8 && kl_gap >= -1e-9,
                "refined KL matches closed form", "dKL " + fmt(kl_gap));

  if (source.size() <= 3) {
    const TypeEnumeration exact = enumerate_types(source, spec, n);
    const SanovBound bound = sanov_bound(source, spec, n);
    checks.report(exact.exact_probability <= bound.bound + 1e-12,
                  "exact type probability within Sanov bound",
                  fmt(exact.exact_probability) + " <= " + fmt(bound.bound));
  }

  if (properties) run_property_battery(checks);
  return checks.failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Utility distributions under a usage budget: exponential tilting, "
               "importance-coefficient solving, and brute-force verification"};
  app.require_subcommand(1);

  std::string dist_path, counts_path, usage_path, range_text, out_path, axis, mode_text;
  double omega = 0.0, beta = 0.0, grid_step = 0.01;
  long n = 8;
  bool as_json = false, properties = false;

  auto* compute = app.add_subcommand("compute", "Tilt a distribution at a given omega");
  compute->add_option("--dist", dist_path, "distribution JSON file")->required();
  compute->add_option("--omega", omega, "importance coefficient")->required();
  compute->add_flag("--json", as_json, "emit JSON instead of text");

  auto* solve = app.add_subcommand("solve", "Find the tilt meeting a usage budget");
  solve->add_option("--dist", dist_path, "distribution JSON file")->required();
  solve->add_option("--beta", beta, "usage budget")->required();
  solve->add_option("--mode", mode_text, "equality|inequality")->required();
  solve->add_flag("--json", as_json, "emit JSON instead of text");

  auto* sweep = app.add_subcommand("sweep", "Write a CSV sweep along omega or beta");
  sweep->add_option("--dist", dist_path, "distribution JSON file")->required();
  sweep->add_option("--axis", axis, "omega|beta")->required();
  sweep->add_option("--range", range_text, "start:stop:step")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "Check the closed form against oracles");
  verify->add_option("--dist", dist_path, "distribution JSON file")->required();
  verify->add_option("--beta", beta, "usage budget")->required();
  verify->add_option("--grid-step", grid_step, "lattice spacing (default 0.01)");
  verify->add_option("--n", n, "sequence length for the type check (default 8)");
  verify->add_flag("--properties", properties, "also run the randomized property battery");

  auto* ingest = app.add_subcommand("ingest", "Turn a counts CSV into distribution JSON");
  ingest->add_option("--counts", counts_path, "counts CSV file")->required();
  ingest->add_option("--usage", usage_path, "usage counts CSV; prints beta to stderr");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) {
      const Pmf source = load_distribution_json(dist_path);
      const TiltResult res = tilt(source, ImportanceCoefficient(omega));
      if (as_json)
        print_tilt_json(res);
      else
        print_tilt(res);
      return 0;
    }

    if (solve->parsed()) {
      const Pmf source = load_distribution_json(dist_path);
      if (mode_text != "equality" && mode_text != "inequality")
        fail(ErrorCode::InvalidArgument, "--mode must be equality or inequality");
      TiltResult res = [&] {
        if (mode_text == "equality") {
          const ImportanceCoefficient w = solve_omega(
              source, ConstraintSpec::with_budget(beta, ConstraintMode::Equality));
          return tilt(source, w);
        }
        return solve_budget(source,
                            ConstraintSpec::with_budget(beta, ConstraintMode::Inequality));
      }();
      if (as_json) {
        print_tilt_json(res);
      } else {
        if (mode_text == "inequality" && beta >= source.probs().square().sum())
          std::cout << "constraint inactive: budget " << fmt(beta)
                    << " >= neutral average " << fmt(source.probs().square().sum())
                    << "; utility equals source\n";
        print_tilt(res);
      }
      return 0;
    }

    if (sweep->parsed()) {
      const std::string bytes = read_file(dist_path);
      const Pmf source = parse_distribution_json(bytes);
      const SweepRange range = parse_range(range_text);
      SweepTable table;
      if (axis == "omega")
        table = sweep_omega(source, range);
      else if (axis == "beta")
        table = sweep_beta(source, range);
      else
        fail(ErrorCode::InvalidArgument, "--axis must be omega or beta");
      table.source_hash = fnv1a_hash(bytes);

      std::ofstream out(out_path, std::ios::binary);
      if (!out) fail(ErrorCode::ParseError, "cannot write '" + out_path + "'");
      out << sweep_to_csv(table);
      std::fprintf(stderr, "wrote %zu rows (source hash %016" PRIx64 ") to %s\n",
                   table.rows.size(), table.source_hash, out_path.c_str());
      return 0;
    }

    if (verify->parsed()) return cmd_verify(dist_path, beta, grid_step, n, properties);

    if (ingest->parsed()) {
      auto [source, raw] = load_counts_csv(counts_path);
      std::cout << distribution_to_json(source) << "\n";
      if (!usage_path.empty()) {
        auto [usage, usage_raw] = load_counts_csv(usage_path);
        (void)usage;
        const BetaAlpha budget = beta_from_raw(source, usage_raw);
        std::fprintf(stderr, "beta = %.17g\nalpha = %.17g\n", budget.beta, budget.alpha);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
