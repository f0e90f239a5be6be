#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "randfib/beta_cases.hpp"
#include "randfib/breakpoints.hpp"
#include "randfib/errors.hpp"
#include "randfib/recurrences.hpp"
#include "randfib/simulate.hpp"
#include "randfib/tree.hpp"
#include "randfib/verify.hpp"

namespace randfib::cli {

// Exit codes: 0 success, 2 invalid configuration, 3 resource guard,
// 4 verification failure.
inline constexpr int kOk = 0;
inline constexpr int kInvalidConfig = 2;
inline constexpr int kResourceLimit = 3;
inline constexpr int kVerifyFailed = 4;

namespace detail {

using Json = nlohmann::ordered_json;

struct KeyValues {
  std::string text;
  void add(const std::string& key, const std::string& value) {
    if (!text.empty()) text += " ";
    text += key + "=" + value;
  }
  void add(const std::string& key, int v) { add(key, std::to_string(v)); }
  void add(const std::string& key, std::uint64_t v) { add(key, std::to_string(v)); }
};

inline void csv_header(std::ostream& os, const std::string& command,
                       const std::string& config, const std::string& columns) {
  os << "# randfib-csv v1, command=" << command << ", config=" << config << "\n"
     << columns << "\n";
}

struct CaseText {
  const char* conditions;
  const char* restriction;
};

inline CaseText case_text(TableCase id) {
  switch (id) {
    case TableCase::case1:
      return {"beta*b >= a and beta*a + beta^2*b >= b", "beta^2 > 1/2"};
    case TableCase::case2:
      return {"beta*b >= a and beta^2*b > b + beta*a", "beta > 1"};
    case TableCase::case3:
      return {"beta*b >= a and beta*a + beta^2*b < b", "beta < 1"};
    case TableCase::case4:
      return {"beta*b < a and beta*a + beta^2*b >= b", "(none)"};
    case TableCase::case5:
      return {"beta*b < a and beta*a > beta^2*b + b", "b = 0"};
    case TableCase::case6:
      return {"beta*b < a and beta*a + beta^2*b < b", "beta^2 < 1/2"};
  }
  throw InvalidInputError("case id out of range");
}

}  // namespace detail

/// Runs one command; everything the command prints goes to `out` (or the
/// file given by --output) and diagnostics go to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Json;
  using detail::KeyValues;

  CLI::App app{"exact and Monte Carlo statistics of random Fibonacci sequences "
               "x(n+1) = +-beta*x(n) + x(n-1)"};
  app.require_subcommand(1);

  // Shared flags, duplicated per subcommand so help stays local.
  struct Common {
    std::string beta = "1";
    std::string x0 = "1";
    std::string x1 = "1";
    std::string output = "-";
    std::string format = "csv";
    int threads = 1;
  };

  auto add_output = [](CLI::App* sub, Common& c, bool json_default = false) {
    if (json_default) c.format = "json";
    sub->add_option("--output", c.output, "output path, '-' for stdout")
        ->capture_default_str();
    sub->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };

  // --- enumerate ------------------------------------------------------
  Common en;
  int en_n = 10;
  std::string en_mode = "exact";
  auto* cmd_enum = app.add_subcommand("enumerate",
                                      "exact (or float) per-level tree statistics");
  cmd_enum->add_option("--beta", en.beta, "growth factor, rational like 3/4 or 0.75")
      ->capture_default_str();
  cmd_enum->add_option("--x0", en.x0, "seed x0")->capture_default_str();
  cmd_enum->add_option("--x1", en.x1, "seed x1")->capture_default_str();
  cmd_enum->add_option("--n", en_n, "deepest level to enumerate")->capture_default_str();
  cmd_enum->add_option("--mode", en_mode, "arithmetic mode")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  cmd_enum->add_option("--threads", en.threads, "worker cap for row expansion")
      ->capture_default_str();
  add_output(cmd_enum, en);

  // --- bounds ---------------------------------------------------------
  Common bo;
  int bo_n = 25;
  std::vector<std::string> bo_init;
  auto* cmd_bounds = app.add_subcommand(
      "bounds", "row-sum recurrence bounds L[n] <= S[n] <= U[n]");
  cmd_bounds->add_option("--beta", bo.beta, "growth factor")->capture_default_str();
  cmd_bounds->add_option("--x0", bo.x0, "seed x0")->capture_default_str();
  cmd_bounds->add_option("--x1", bo.x1, "seed x1")->capture_default_str();
  cmd_bounds->add_option("--n", bo_n, "deepest level")->capture_default_str();
  cmd_bounds
      ->add_option("--initials", bo_init,
                   "three explicit initial sums S0 S1 S2 (default: exact S[0..2])")
      ->expected(3);
  add_output(cmd_bounds, bo);

  // --- roots ----------------------------------------------------------
  Common ro;
  double ro_tol = 1e-12;
  auto* cmd_roots = app.add_subcommand(
      "roots", "characteristic roots and derived growth constants");
  cmd_roots->add_option("--tolerance", ro_tol, "root residual tolerance")
      ->capture_default_str();
  add_output(cmd_roots, ro, /*json_default=*/true);

  // --- beta-audit -----------------------------------------------------
  Common au;
  std::uint64_t au_trials = 10'000;
  std::uint64_t au_seed = 1;
  auto* cmd_audit = app.add_subcommand(
      "beta-audit", "six-case audit: conditions, restriction, printed vs derived sums");
  cmd_audit->add_option("--beta", au.beta, "growth factor")->required();
  cmd_audit->add_option("--trials", au_trials, "witness search samples per case")
      ->capture_default_str();
  cmd_audit->add_option("--rng-seed", au_seed, "witness search seed")->capture_default_str();
  add_output(cmd_audit, au, /*json_default=*/true);

  // --- sweep ----------------------------------------------------------
  Common sw;
  std::string sw_grid;
  int sw_level = 10;
  std::string sw_mode = "exact";
  std::uint32_t sw_samples = 100'000;
  std::uint64_t sw_seed = 1;
  auto* cmd_sweep = app.add_subcommand("sweep", "fixed-level mean |x_n| versus beta");
  cmd_sweep->add_option("--betas", sw_grid, "grid lo:hi:step, e.g. 0.1:1.5:0.01")->required();
  cmd_sweep->add_option("--level", sw_level, "fixed level n")->capture_default_str();
  cmd_sweep->add_option("--mode", sw_mode, "exact tree or sampled paths")
      ->check(CLI::IsMember({"exact", "mc"}))
      ->capture_default_str();
  cmd_sweep->add_option("--samples", sw_samples, "paths per beta in mc mode")
      ->capture_default_str();
  cmd_sweep->add_option("--rng-seed", sw_seed, "mc seed")->capture_default_str();
  cmd_sweep->add_option("--x0", sw.x0, "seed x0")->capture_default_str();
  cmd_sweep->add_option("--x1", sw.x1, "seed x1")->capture_default_str();
  cmd_sweep->add_option("--threads", sw.threads, "worker cap")->capture_default_str();
  add_output(cmd_sweep, sw);

  // --- lyapunov -------------------------------------------------------
  Common ly;
  std::uint64_t ly_steps = 100'000;
  std::uint32_t ly_trials = 200;
  std::uint64_t ly_seed = 1;
  std::string ly_orient = "previous";
  int ly_cadence = 64;
  auto* cmd_lyap = app.add_subcommand(
      "lyapunov", "Monte Carlo estimate of the almost-sure growth exponent");
  cmd_lyap->add_option("--beta", ly.beta, "growth factor")->capture_default_str();
  cmd_lyap->add_option("--steps", ly_steps, "recursion steps per trial")
      ->capture_default_str();
  cmd_lyap->add_option("--trials", ly_trials, "independent trials")->capture_default_str();
  cmd_lyap->add_option("--rng-seed", ly_seed, "base seed; trial t uses substream t")
      ->capture_default_str();
  cmd_lyap
      ->add_option("--orientation", ly_orient,
                   "'current': x(n+1)=+-beta*x(n)+x(n-1); "
                   "'previous': x(n+1)=x(n)+-beta*x(n-1)")
      ->check(CLI::IsMember({"current", "previous"}))
      ->capture_default_str();
  cmd_lyap->add_option("--cadence", ly_cadence, "renormalization cadence in steps")
      ->capture_default_str();
  cmd_lyap->add_option("--x0", ly.x0, "seed x0")->capture_default_str();
  cmd_lyap->add_option("--x1", ly.x1, "seed x1")->capture_default_str();
  cmd_lyap->add_option("--threads", ly.threads, "worker cap")->capture_default_str();
  add_output(cmd_lyap, ly);

  // --- crossing -------------------------------------------------------
  Common cr;
  double cr_lo = 0.6, cr_hi = 0.8, cr_tol = 0.005;
  std::uint64_t cr_steps = 100'000;
  std::uint32_t cr_trials = 200;
  std::uint64_t cr_seed = 1;
  std::string cr_orient = "previous";
  auto* cmd_cross = app.add_subcommand(
      "crossing", "bisect the growth/decay transition on the sign of gamma");
  cmd_cross->add_option("--lo", cr_lo, "bracket lower end")->capture_default_str();
  cmd_cross->add_option("--hi", cr_hi, "bracket upper end")->capture_default_str();
  cmd_cross->add_option("--tol", cr_tol, "bracket width to stop at")->capture_default_str();
  cmd_cross->add_option("--steps", cr_steps, "recursion steps per trial")
      ->capture_default_str();
  cmd_cross->add_option("--trials", cr_trials, "trials per evaluation")
      ->capture_default_str();
  cmd_cross->add_option("--rng-seed", cr_seed, "base seed")->capture_default_str();
  cmd_cross->add_option("--orientation", cr_orient, "recursion scaling, as in lyapunov")
      ->check(CLI::IsMember({"current", "previous"}))
      ->capture_default_str();
  cmd_cross->add_option("--threads", cr.threads, "worker cap")->capture_default_str();
  add_output(cmd_cross, cr, /*json_default=*/true);

  // --- breakpoints ----------------------------------------------------
  Common bp;
  int bp_level = 6;
  int bp_cap = 12;
  auto* cmd_bp = app.add_subcommand(
      "breakpoints", "beta values where a difference child changes sign");
  cmd_bp->add_option("--level", bp_level, "deepest child level scanned")
      ->capture_default_str();
  cmd_bp->add_option("--level-cap", bp_cap, "refusal threshold for the symbolic scan")
      ->capture_default_str();
  cmd_bp->add_option("--x0", bp.x0, "seed x0")->capture_default_str();
  cmd_bp->add_option("--x1", bp.x1, "seed x1")->capture_default_str();
  add_output(cmd_bp, bp);

  // --- verify ---------------------------------------------------------
  Common ve;
  std::string ve_suite = "all";
  std::uint64_t ve_trials = 100'000;
  std::uint64_t ve_seed = 1;
  bool ve_fault = false;
  auto* cmd_verify = app.add_subcommand("verify", "run the property suites");
  cmd_verify->add_option("--suite", ve_suite, "which suite")
      ->check(CLI::IsMember({"all", "lemma1", "sandwich", "ss", "cases", "restrictions"}))
      ->capture_default_str();
  cmd_verify->add_option("--trials", ve_trials, "randomized checks per suite")
      ->capture_default_str();
  cmd_verify->add_option("--rng-seed", ve_seed, "fuzz seed")->capture_default_str();
  cmd_verify->add_flag("--inject-fault", ve_fault,
                       "negative control: perturb each suite so it must fail");
  add_output(cmd_verify, ve);

  std::vector<std::string> argv_storage;
  argv_storage.push_back("randfib");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }

  const auto resolve_output = [&](const Common& c) -> std::pair<std::ostream*, std::unique_ptr<std::ofstream>> {
    if (c.output == "-") return {&out, nullptr};
    auto file = std::make_unique<std::ofstream>(c.output);
    if (!*file) throw InvalidInputError("cannot open output file '" + c.output + "'");
    return {file.get(), std::move(file)};
  };

  try {
    const EnumerateLimits limits = EnumerateLimits::from_env();

    if (*cmd_enum) {
      auto [osp, hold] = resolve_output(en);
      std::ostream& os = *osp;
      KeyValues cfg;
      cfg.add("beta", en.beta);
      cfg.add("x0", en.x0);
      cfg.add("x1", en.x1);
      cfg.add("n", en_n);
      cfg.add("mode", en_mode);
      cfg.add("threads", en.threads);
      cfg.add("state_cap", std::to_string(limits.max_states));
      const auto emit = [&](const auto& rows) {
        if (en.format == "csv") {
          detail::csv_header(os, "enumerate", cfg.text,
                             "level,S,SS,mean_abs,raw_second,variance");
          for (const auto& r : rows)
            os << r.level << "," << format_scalar(r.sum_abs) << ","
               << format_scalar(r.sum_sq) << "," << format_scalar(r.mean_abs) << ","
               << format_scalar(r.raw_second) << "," << format_scalar(r.variance) << "\n";
        } else {
          Json doc;
          doc["command"] = "enumerate";
          doc["config"] = cfg.text;
          doc["rows"] = Json::array();
          for (const auto& r : rows)
            doc["rows"].push_back({{"level", r.level},
                                   {"S", format_scalar(r.sum_abs)},
                                   {"SS", format_scalar(r.sum_sq)},
                                   {"mean_abs", format_scalar(r.mean_abs)},
                                   {"raw_second", format_scalar(r.raw_second)},
                                   {"variance", format_scalar(r.variance)}});
          os << doc.dump(2) << "\n";
        }
      };
      if (en_mode == "exact") {
        emit(enumerate_rows(parse_rational(en.x0), parse_rational(en.x1),
                            parse_rational(en.beta), en_n, limits, en.threads));
      } else {
        emit(enumerate_rows(to_double(parse_rational(en.x0)), to_double(parse_rational(en.x1)),
                            to_double(parse_rational(en.beta)), en_n, limits, en.threads));
      }
      return kOk;
    }

    if (*cmd_bounds) {
      auto [osp, hold] = resolve_output(bo);
      std::ostream& os = *osp;
      const Rational beta = parse_rational(bo.beta);
      const auto rows = enumerate_rows(parse_rational(bo.x0), parse_rational(bo.x1), beta,
                                       bo_n, limits, bo.threads);
      Rational s0, s1, s2;
      if (!bo_init.empty()) {
        s0 = parse_rational(bo_init[0]);
        s1 = parse_rational(bo_init[1]);
        s2 = parse_rational(bo_init[2]);
      } else {
        s0 = rows[0].sum_abs;
        s1 = rows[1].sum_abs;
        s2 = rows[2].sum_abs;
      }
      const auto seq = bound_sequences(s0, s1, s2, bo_n);
      KeyValues cfg;
      cfg.add("beta", bo.beta);
      cfg.add("x0", bo.x0);
      cfg.add("x1", bo.x1);
      cfg.add("n", bo_n);
      cfg.add("s0", format_scalar(s0));
      cfg.add("s1", format_scalar(s1));
      cfg.add("s2", format_scalar(s2));
      detail::csv_header(os, "bounds", cfg.text,
                         "n,L,S,U,verdict,lower_ratio_halved,upper_ratio_halved");
      for (int n = 0; n <= bo_n; ++n) {
        const bool pass =
            seq.lower[n] <= rows[n].sum_abs && rows[n].sum_abs <= seq.upper[n];
        os << n << "," << format_scalar(seq.lower[n]) << ","
           << format_scalar(rows[n].sum_abs) << "," << format_scalar(seq.upper[n]) << ","
           << (pass ? "pass" : "fail") << ",";
        if (n >= 1) {
          os << format_scalar(to_double(seq.lower[n] / seq.lower[n - 1]) / 2.0) << ","
             << format_scalar(to_double(seq.upper[n] / seq.upper[n - 1]) / 2.0);
        } else {
          os << ",";
        }
        os << "\n";
      }
      return kOk;
    }

    if (*cmd_roots) {
      auto [osp, hold] = resolve_output(ro);
      std::ostream& os = *osp;
      const GrowthConstants g = growth_constants(ro_tol);
      KeyValues cfg;
      cfg.add("tolerance", format_scalar(ro_tol));
      if (ro.format == "json") {
        Json doc;
        doc["command"] = "roots";
        doc["config"] = cfg.text;
        doc["lower_root"] = g.lower_root;
        doc["upper_root"] = g.upper_root;
        doc["lower_growth"] = g.lower_growth;
        doc["upper_growth"] = g.upper_growth;
        doc["ss_root_growth"] = g.ss_root_growth;
        doc["mean_sq_growth"] = g.mean_sq_growth;
        os << doc.dump(2) << "\n";
      } else {
        detail::csv_header(os, "roots", cfg.text,
                           "lower_root,upper_root,lower_growth,upper_growth,"
                           "ss_root_growth,mean_sq_growth");
        os << format_scalar(g.lower_root) << "," << format_scalar(g.upper_root) << ","
           << format_scalar(g.lower_growth) << "," << format_scalar(g.upper_growth) << ","
           << format_scalar(g.ss_root_growth) << "," << format_scalar(g.mean_sq_growth)
           << "\n";
      }
      return kOk;
    }

    if (*cmd_audit) {
      auto [osp, hold] = resolve_output(au);
      std::ostream& os = *osp;
      const Rational beta = parse_rational(au.beta);
      KeyValues cfg;
      cfg.add("beta", au.beta);
      cfg.add("trials", au_trials);
      cfg.add("rng_seed", au_seed);
      Json rows = Json::array();
      for (int id = 1; id <= 6; ++id) {
        const auto tc = static_cast<TableCase>(id);
        const auto text = detail::case_text(tc);
        const auto search = case_restriction_satisfiable(tc, beta, au_trials, au_seed);
        Json row;
        row["case"] = id;
        row["conditions"] = text.conditions;
        row["restriction"] = text.restriction;
        row["satisfiable"] = search.satisfiable;
        if (search.witness) {
          const auto& [a, b] = *search.witness;
          const auto t = half_tree(a, b, beta);
          const auto sums = case_sum_formulas(tc, a, b, t.c, t.d, beta);
          const Rational brute = t.bottom[0] + t.bottom[1] + t.bottom[2] + t.bottom[3];
          row["witness_a"] = format_scalar(a);
          row["witness_b"] = format_scalar(b);
          row["brute_sum"] = format_scalar(brute);
          row["eq_derived_sum"] = format_scalar(sums.eq_derived);
          row["table_printed_sum"] = format_scalar(sums.table_printed);
          row["agree_eq"] = sums.eq_derived == brute;
          row["agree_table"] = sums.table_printed == brute;
        }
        rows.push_back(std::move(row));
      }
      if (au.format == "json") {
        Json doc;
        doc["command"] = "beta-audit";
        doc["config"] = cfg.text;
        doc["cases"] = std::move(rows);
        os << doc.dump(2) << "\n";
      } else {
        detail::csv_header(os, "beta-audit", cfg.text,
                           "case,satisfiable,witness_a,witness_b,brute_sum,"
                           "eq_derived_sum,table_printed_sum,agree_eq,agree_table");
        for (const auto& row : rows) {
          os << row["case"] << "," << (row["satisfiable"].get<bool>() ? "true" : "false");
          if (row.contains("witness_a"))
            os << "," << row["witness_a"].get<std::string>() << ","
               << row["witness_b"].get<std::string>() << ","
               << row["brute_sum"].get<std::string>() << ","
               << row["eq_derived_sum"].get<std::string>() << ","
               << row["table_printed_sum"].get<std::string>() << ","
               << (row["agree_eq"].get<bool>() ? "true" : "false") << ","
               << (row["agree_table"].get<bool>() ? "true" : "false");
          else
            os << ",,,,,,,";
          os << "\n";
        }
      }
      return kOk;
    }

    if (*cmd_sweep) {
      auto [osp, hold] = resolve_output(sw);
      std::ostream& os = *osp;
      const auto first_colon = sw_grid.find(':');
      const auto second_colon =
          first_colon == std::string::npos ? std::string::npos
                                           : sw_grid.find(':', first_colon + 1);
      if (second_colon == std::string::npos)
        throw InvalidInputError("--betas expects lo:hi:step");
      const Rational lo = parse_rational(sw_grid.substr(0, first_colon));
      const Rational hi =
          parse_rational(sw_grid.substr(first_colon + 1, second_colon - first_colon - 1));
      const Rational step = parse_rational(sw_grid.substr(second_colon + 1));
      if (!(step > 0) || !(lo > 0) || hi < lo)
        throw InvalidInputError("--betas grid must satisfy 0 < lo <= hi, step > 0");
      std::vector<Rational> grid;
      for (Rational b = lo; b <= hi; b += step) grid.push_back(b);

      KeyValues cfg;
      cfg.add("betas", sw_grid);
      cfg.add("level", sw_level);
      cfg.add("mode", sw_mode);
      cfg.add("x0", sw.x0);
      cfg.add("x1", sw.x1);
      if (sw_mode == "mc") {
        cfg.add("samples", static_cast<std::uint64_t>(sw_samples));
        cfg.add("rng_seed", sw_seed);
      }
      cfg.add("threads", sw.threads);
      detail::csv_header(os, "sweep", cfg.text, "beta,level,mean_abs,mode");
      if (sw_mode == "exact") {
        const auto points = mean_growth_sweep_exact(grid, sw_level, parse_rational(sw.x0),
                                                    parse_rational(sw.x1), limits,
                                                    sw.threads);
        for (const auto& p : points)
          os << format_scalar(p.beta) << "," << p.level << "," << format_scalar(p.mean_abs)
             << ",exact\n";
      } else {
        std::vector<double> dgrid;
        dgrid.reserve(grid.size());
        for (const auto& b : grid) dgrid.push_back(to_double(b));
        const auto points = mean_growth_sweep_mc(dgrid, sw_level, sw_samples, sw_seed,
                                                 to_double(parse_rational(sw.x0)),
                                                 to_double(parse_rational(sw.x1)),
                                                 sw.threads);
        for (const auto& p : points)
          os << format_scalar(p.beta) << "," << p.level << "," << format_scalar(p.mean_abs)
             << ",mc\n";
      }
      return kOk;
    }

    if (*cmd_lyap) {
      auto [osp, hold] = resolve_output(ly);
      std::ostream& os = *osp;
      McConfig mc;
      mc.steps = ly_steps;
      mc.trials = ly_trials;
      mc.rng_seed = ly_seed;
      mc.placement = ly_orient == "current" ? BetaPlacement::scale_current
                                            : BetaPlacement::scale_previous;
      mc.x0 = to_double(parse_rational(ly.x0));
      mc.x1 = to_double(parse_rational(ly.x1));
      mc.renorm_cadence = ly_cadence;
      mc.threads = ly.threads;
      const auto est = lyapunov_mc(to_double(parse_rational(ly.beta)), mc);
      KeyValues cfg;
      cfg.add("beta", ly.beta);
      cfg.add("steps", ly_steps);
      cfg.add("trials", static_cast<std::uint64_t>(ly_trials));
      cfg.add("rng_seed", ly_seed);
      cfg.add("orientation", ly_orient);
      cfg.add("cadence", ly_cadence);
      cfg.add("x0", ly.x0);
      cfg.add("x1", ly.x1);
      cfg.add("threads", ly.threads);
      if (ly.format == "csv") {
        detail::csv_header(os, "lyapunov", cfg.text,
                           "beta,gamma,stderr,growth_factor,steps,trials,rng_seed");
        os << format_scalar(est.beta) << "," << format_scalar(est.gamma) << ","
           << format_scalar(est.std_error) << "," << format_scalar(est.growth_factor)
           << "," << est.steps << "," << est.trials << "," << est.rng_seed << "\n";
      } else {
        Json doc;
        doc["command"] = "lyapunov";
        doc["config"] = cfg.text;
        doc["beta"] = est.beta;
        doc["gamma"] = est.gamma;
        doc["stderr"] = est.std_error;
        doc["growth_factor"] = est.growth_factor;
        doc["steps"] = est.steps;
        doc["trials"] = est.trials;
        doc["rng_seed"] = est.rng_seed;
        os << doc.dump(2) << "\n";
      }
      return kOk;
    }

    if (*cmd_cross) {
      auto [osp, hold] = resolve_output(cr);
      std::ostream& os = *osp;
      McConfig mc;
      mc.steps = cr_steps;
      mc.trials = cr_trials;
      mc.rng_seed = cr_seed;
      mc.placement = cr_orient == "current" ? BetaPlacement::scale_current
                                            : BetaPlacement::scale_previous;
      mc.threads = cr.threads;
      const auto res = growth_sign_crossing(cr_lo, cr_hi, cr_tol, mc);
      KeyValues cfg;
      cfg.add("lo", format_scalar(cr_lo));
      cfg.add("hi", format_scalar(cr_hi));
      cfg.add("tol", format_scalar(cr_tol));
      cfg.add("steps", cr_steps);
      cfg.add("trials", static_cast<std::uint64_t>(cr_trials));
      cfg.add("rng_seed", cr_seed);
      cfg.add("orientation", cr_orient);
      cfg.add("threads", cr.threads);
      if (cr.format == "json") {
        Json doc;
        doc["command"] = "crossing";
        doc["config"] = cfg.text;
        doc["crossing"] = res.crossing;
        doc["gamma_lo"] = res.gamma_lo;
        doc["gamma_hi"] = res.gamma_hi;
        doc["iterations"] = res.iterations;
        Json evals = Json::array();
        for (const auto& [b, g] : res.evaluations) evals.push_back({b, g});
        doc["evaluations"] = std::move(evals);
        os << doc.dump(2) << "\n";
      } else {
        detail::csv_header(os, "crossing", cfg.text, "crossing,gamma_lo,gamma_hi,iterations");
        os << format_scalar(res.crossing) << "," << format_scalar(res.gamma_lo) << ","
           << format_scalar(res.gamma_hi) << "," << res.iterations << "\n";
      }
      return kOk;
    }

    if (*cmd_bp) {
      auto [osp, hold] = resolve_output(bp);
      std::ostream& os = *osp;
      auto found = breakpoints(parse_rational(bp.x0), parse_rational(bp.x1), bp_level, bp_cap);
      KeyValues cfg;
      cfg.add("level", bp_level);
      cfg.add("level_cap", bp_cap);
      cfg.add("x0", bp.x0);
      cfg.add("x1", bp.x1);
      if (bp.format == "csv") {
        detail::csv_header(os, "breakpoints", cfg.text,
                           "beta_star,level,defining,origin_prev,origin_curr");
        for (auto& b : found)
          os << format_scalar(b.beta_star) << "," << b.level << ","
             << b.location.defining().to_string("beta") << ","
             << b.origin_prev.to_string("beta") << "," << b.origin_curr.to_string("beta")
             << "\n";
      } else {
        Json doc;
        doc["command"] = "breakpoints";
        doc["config"] = cfg.text;
        doc["breakpoints"] = Json::array();
        for (auto& b : found)
          doc["breakpoints"].push_back(
              {{"beta_star", b.beta_star},
               {"level", b.level},
               {"defining", b.location.defining().to_string("beta")},
               {"origin_prev", b.origin_prev.to_string("beta")},
               {"origin_curr", b.origin_curr.to_string("beta")}});
        os << doc.dump(2) << "\n";
      }
      return kOk;
    }

    if (*cmd_verify) {
      auto [osp, hold] = resolve_output(ve);
      std::ostream& os = *osp;
      std::vector<SuiteResult> results;
      if (ve_suite == "all") {
        results = verify_all(ve_trials, ve_seed, ve_fault);
      } else if (ve_suite == "lemma1") {
        results.push_back(verify_lemma1(ve_trials, ve_seed, ve_fault));
      } else if (ve_suite == "sandwich") {
        results.push_back(verify_sandwich(25, ve_fault));
      } else if (ve_suite == "ss") {
        results.push_back(verify_ss(25, ve_fault));
      } else if (ve_suite == "cases") {
        results.push_back(verify_cases(ve_trials, ve_seed, ve_fault));
      } else {
        results.push_back(verify_restrictions(std::min<std::uint64_t>(ve_trials, 20'000),
                                              ve_seed, ve_fault));
      }
      std::uint64_t failures = 0;
      for (const auto& r : results) {
        os << "suite " << r.name << ": " << r.checks << " checks, " << r.failures
           << " failures";
        if (r.failures > 0) os << " (first: " << r.first_failure << ")";
        os << "\n";
        failures += r.failures;
      }
      os << (failures == 0 ? "verification PASSED" : "verification FAILED") << "\n";
      return failures == 0 ? kOk : kVerifyFailed;
    }
  } catch (const InvalidInputError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  }
  err << "error: no command selected\n";
  return kInvalidConfig;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace randfib::cli
