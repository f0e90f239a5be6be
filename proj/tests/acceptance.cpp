// Acceptance suite: every release-gating claim, one per criterion, with its
// tolerance pinned in code. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "randfib/beta_cases.hpp"
#include "randfib/breakpoints.hpp"
#include "randfib/recurrences.hpp"
#include "randfib/simulate.hpp"
#include "randfib/tree.hpp"
#include "randfib/verify.hpp"
#include "support.hpp"

using randfib::BigInt;
using randfib::Rational;
using randfib::TableCase;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

class Runner {
public:
  void criterion(int number, const std::string& title, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string failure;
    try {
      body();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (failure.empty()) {
      std::printf("[PASS] criterion %2d (%6.2fs): %s\n", number, seconds, title.c_str());
    } else {
      ++failures_;
      std::printf("[FAIL] criterion %2d (%6.2fs): %s -- %s\n", number, seconds,
                  title.c_str(), failure.c_str());
    }
    std::fflush(stdout);
  }

  int finish() const {
    std::printf("%d of %d criteria failed\n", failures_, 10);
    return failures_ == 0 ? 0 : 1;
  }

private:
  int failures_ = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

int main() {
  Runner runner;

  runner.criterion(1, "growth-bound constants from the characteristic cubics", [] {
    const auto g = randfib::growth_constants(1e-12);
    require(std::fabs(g.lower_growth - 1.12095) <= 1e-5,
            "lower growth " + fmt(g.lower_growth) + " not within 1e-5 of 1.12095");
    require(std::fabs(g.upper_growth - 1.23375) <= 1e-5,
            "upper growth " + fmt(g.upper_growth) + " not within 1e-5 of 1.23375");
  });

  runner.criterion(2, "second-moment constant 1+sqrt(5) and the exact SS recurrence", [] {
    const auto g = randfib::growth_constants(1e-12);
    require(std::fabs(g.ss_root_growth - (1.0 + std::sqrt(5.0))) <= 1e-9,
            "dominant root " + fmt(g.ss_root_growth) + " not within 1e-9 of 1+sqrt(5)");
    const auto rows = randfib::enumerate_rows(Rational(1), Rational(1), Rational(1), 25);
    for (int n = 2; n <= 25; ++n)
      require(rows[n].sum_sq == 2 * rows[n - 1].sum_sq + 4 * rows[n - 2].sum_sq,
              "SS recurrence broken at level " + std::to_string(n));
  });

  runner.criterion(3, "sandwich L[n] <= S[n] <= U[n] exactly for n <= 25", [] {
    const auto rows = randfib::enumerate_rows(Rational(1), Rational(1), Rational(1), 25);
    require(rows[0].sum_abs == 1 && rows[1].sum_abs == 2 && rows[2].sum_abs == 6,
            "exact initials are not 1, 2, 6");
    const auto seq =
        randfib::bound_sequences(rows[0].sum_abs, rows[1].sum_abs, rows[2].sum_abs, 25);
    for (int n = 0; n <= 25; ++n)
      require(seq.lower[n] <= rows[n].sum_abs && rows[n].sum_abs <= seq.upper[n],
              "sandwich broken at level " + std::to_string(n));
  });

  runner.criterion(4, "subtree bound fuzz: 1e5 rational triples plus boundary grid", [] {
    const auto res = randfib::verify_lemma1(100'000, 20'240'607);
    require(res.failures == 0, std::to_string(res.failures) + " of " +
                                   std::to_string(res.checks) + " checks failed (first: " +
                                   res.first_failure + ")");
  });

  runner.criterion(5, "case sums exact on 1e5 triples; rows 2 and 6 flagged as printed", [] {
    const auto res = randfib::verify_cases(100'000, 777);
    require(res.failures == 0, std::to_string(res.failures) + " of " +
                                   std::to_string(res.checks) + " checks failed (first: " +
                                   res.first_failure + ")");
    const auto rep2 = randfib::case_report(Rational(1), Rational(1), Rational(2));
    require(rep2.case_id == TableCase::case2 && rep2.eq_derived_sum == 16 &&
                rep2.table_printed_sum == 18 && rep2.agree_eq && !rep2.agree_table,
            "case-2 witness (1, 1, 2) not flagged as derived 16 vs printed 18");
    const auto rep6 = randfib::case_report(Rational(1), Rational(1), Rational(1, 2));
    require(rep6.case_id == TableCase::case6 && rep6.eq_derived_sum == 4 &&
                rep6.table_printed_sum == 2 && rep6.agree_eq && !rep6.agree_table,
            "case-6 witness (1, 1, 1/2) not flagged as derived 4 vs printed 2");
  });

  runner.criterion(6, "case 6 reachable below 1/sqrt(2), refuted above over 1e6 samples", [] {
    for (const auto& beta : {Rational(1, 2), Rational(13, 20), Rational(7, 10)}) {
      const auto found =
          randfib::case_restriction_satisfiable(TableCase::case6, beta, 1'000'000, 4242);
      require(found.satisfiable, "no witness at beta = " + randfib::format_scalar(beta));
      const auto& [a, b] = *found.witness;
      require(randfib::detail::case_conditions_hold(TableCase::case6, a, b, beta),
              "stale witness at beta = " + randfib::format_scalar(beta));
    }
    for (const auto& beta : {Rational(7'072, 10'000), Rational(3, 4), Rational(1)}) {
      const auto found =
          randfib::case_restriction_satisfiable(TableCase::case6, beta, 1'000'000, 4242);
      require(!found.satisfiable,
              "spurious witness at beta = " + randfib::format_scalar(beta));
    }
  });

  runner.criterion(7, "MC growth factor at beta = 1 lands in [1.12, 1.145]", [] {
    randfib::McConfig cfg;
    cfg.steps = 100'000;
    cfg.trials = 100;
    cfg.rng_seed = 42;
    const auto est = randfib::lyapunov_mc(1.0, cfg);
    require(est.growth_factor >= 1.12 && est.growth_factor <= 1.145,
            "growth factor " + fmt(est.growth_factor) + " outside [1.12, 1.145]");
  });

  runner.criterion(8, "growth/decay crossing on [0.6, 0.8] lands in [0.67, 0.73]", [] {
    randfib::McConfig cfg;
    cfg.steps = 100'000;
    cfg.trials = 200;
    cfg.rng_seed = 42;
    const auto res = randfib::growth_sign_crossing(0.6, 0.8, 0.005, cfg);
    require(res.crossing >= 0.67 && res.crossing <= 0.73,
            "crossing " + fmt(res.crossing) + " outside [0.67, 0.73]");
  });

  runner.criterion(9, "aggregated rows equal the naive 2^n walk for n <= 14", [] {
    const std::vector<Rational> betas = {Rational(1), Rational(1, 2), Rational(2)};
    const std::vector<std::pair<Rational, Rational>> seeds = {{1, 1}, {0, 1}};
    for (const auto& beta : betas)
      for (const auto& [x0, x1] : seeds) {
        const auto rows = randfib::enumerate_rows(x0, x1, beta, 14);
        for (int n = 0; n <= 14; ++n) {
          const auto naive = randfib::test::naive_row_sums(x0, x1, beta, n);
          require(rows[n].sum_abs == naive.sum_abs && rows[n].sum_sq == naive.sum_sq,
                  "mismatch at beta = " + randfib::format_scalar(beta) + ", seed (" +
                      randfib::format_scalar(x0) + ", " + randfib::format_scalar(x1) +
                      "), level " + std::to_string(n));
        }
      }
  });

  runner.criterion(10, "S(beta) is a single degree <= n polynomial between breakpoints", [] {
    for (int level = 1; level <= 8; ++level) {
      auto bps = randfib::breakpoints(Rational(1), Rational(1), level);
      auto inner = randfib::interval_inner_bounds(bps);
      require(inner.size() == bps.size() + 1, "interval bookkeeping broken");
      for (const auto& [lo, hi] : inner) {
        const int points = level + 4;  // level+1 nodes, 3 held-out probes
        std::vector<std::pair<Rational, Rational>> samples;
        for (int j = 0; j < points; ++j) {
          const Rational x = lo + (hi - lo) * Rational(j, points - 1);
          const auto rows = randfib::enumerate_rows(Rational(1), Rational(1), x, level);
          samples.emplace_back(x, rows.back().sum_abs);
        }
        const std::vector<std::pair<Rational, Rational>> nodes(samples.begin(),
                                                               samples.begin() + level + 1);
        for (int j = level + 1; j < points; ++j)
          require(randfib::test::lagrange_eval(nodes, samples[j].first) ==
                      samples[j].second,
                  "level " + std::to_string(level) + " interval [" +
                      randfib::format_scalar(lo) + ", " + randfib::format_scalar(hi) +
                      "] is not a single polynomial");
      }
    }
  });

  return runner.finish();
}
