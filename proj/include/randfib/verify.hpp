#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randfib/beta_cases.hpp"
#include "randfib/recurrences.hpp"
#include "randfib/rng.hpp"
#include "randfib/tree.hpp"

namespace randfib {

// Self-check suites runnable from the command line. Each suite recomputes
// one of the library's standing claims from scratch; inject_fault perturbs
// the computation so a run can demonstrate the suites actually bite.

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (first_failure.empty()) first_failure = what;
    }
  }
};

/// Subtree bound fuzz: random rational (a, b1, b2) with b1 >= a >= 0,
/// b2 >= 0, plus the boundary grid b2 in {0, a/2, a}. Closed-form sigma
/// must match the enumerated bottom row and sit inside both bounds.
inline SuiteResult verify_lemma1(std::uint64_t trials, std::uint64_t rng_seed,
                                 bool inject_fault = false) {
  SuiteResult res{"lemma1"};
  SplitMix64 rng(rng_seed, 101);
  const Rational fault = inject_fault ? Rational(1) : Rational(0);
  auto check_triple = [&](const Rational& a, const Rational& b1, const Rational& b2) {
    const auto t = lemma1_check(a, b1, b2);
    Rational enumerated(0);
    for (const auto& leaf : lemma1_bottom_row(a, b1, b2)) enumerated += leaf;
    const Rational sigma = t.sigma + fault;
    const bool ok = sigma == enumerated && t.lower_bound <= sigma && sigma <= t.upper_bound;
    res.record(ok, "triple (" + format_scalar(a) + ", " + format_scalar(b1) + ", " +
                       format_scalar(b2) + ")");
  };
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Rational a = random_rational(rng);
    const Rational b1 = a + random_rational(rng);
    check_triple(a, b1, random_rational(rng));
    if (i % 16 == 0) {
      check_triple(a, b1, Rational(0));
      check_triple(a, b1, a / 2);
      check_triple(a, b1, a);
    }
  }
  return res;
}

/// L[n] <= S[n] <= U[n] exactly for n <= n_max, beta = 1, seed (1, 1),
/// with the recurrences seeded from the exact S[0..2].
inline SuiteResult verify_sandwich(int n_max = 25, bool inject_fault = false) {
  SuiteResult res{"sandwich"};
  const auto rows = enumerate_rows(Rational(1), Rational(1), Rational(1), n_max);
  auto seq = bound_sequences(rows[0].sum_abs, rows[1].sum_abs, rows[2].sum_abs, n_max);
  if (inject_fault) seq.lower = seq.upper;  // breaks the lower bound from n = 4 on
  for (int n = 0; n <= n_max; ++n) {
    const bool ok = seq.lower[n] <= rows[n].sum_abs && rows[n].sum_abs <= seq.upper[n];
    res.record(ok, "level " + std::to_string(n));
  }
  return res;
}

/// The second-moment recurrence reproduces the exact tree's SS[n] for
/// beta = 1 and integer seeds, for all n <= n_max.
inline SuiteResult verify_ss(int n_max = 25, bool inject_fault = false) {
  SuiteResult res{"ss"};
  const std::vector<std::pair<Rational, Rational>> seeds = {{1, 1}, {3, 2}, {0, 1}};
  for (const auto& [x0, x1] : seeds) {
    const auto rows = enumerate_rows(x0, x1, Rational(1), n_max);
    const Rational fault = inject_fault ? Rational(1) : Rational(0);
    const auto seq = ss_sequence(Rational(rows[0].sum_sq + fault), rows[1].sum_sq, n_max);
    for (int n = 0; n <= n_max; ++n)
      res.record(seq[n] == rows[n].sum_sq, "seed (" + format_scalar(x0) + ", " +
                                               format_scalar(x1) + ") level " +
                                               std::to_string(n));
  }
  return res;
}

/// Case classification fuzz: the matched row's conditions hold, the derived
/// sum equals the enumerated half-tree bottom sum exactly, and the
/// tabulated column differs only on rows 2 and 6.
inline SuiteResult verify_cases(std::uint64_t trials, std::uint64_t rng_seed,
                                bool inject_fault = false) {
  SuiteResult res{"cases"};
  SplitMix64 rng(rng_seed, 202);
  const Rational fault = inject_fault ? Rational(1) : Rational(0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    if (a == 0 && b == 0) continue;
    Rational beta = random_rational(rng, 3, 12);
    if (beta == 0) beta = Rational(1, 2);
    const auto rep = case_report(a, b, beta);
    const bool conditions_ok = detail::case_conditions_hold(rep.case_id, a, b, beta);
    const bool derived_ok = rep.eq_derived_sum + fault == rep.brute_sum;
    const int table_row = static_cast<int>(rep.case_id);
    const bool table_ok = (table_row == 2 || table_row == 6)
                              ? (b == 0 ? rep.agree_table : !rep.agree_table)
                              : rep.agree_table;
    res.record(conditions_ok && derived_ok && table_ok,
               "triple (" + format_scalar(a) + ", " + format_scalar(b) + ", " +
                   format_scalar(beta) + ")");
  }
  return res;
}

/// Reachability of rows 1, 2, 3, 6 at 20 beta values straddling each
/// row's threshold, checked against the analytic answer.
inline SuiteResult verify_restrictions(std::uint64_t trials, std::uint64_t rng_seed,
                                       bool inject_fault = false) {
  SuiteResult res{"restrictions"};
  struct Probe {
    TableCase id;
    Rational beta;
    bool expect_satisfiable;
  };
  std::vector<Probe> probes;
  const std::vector<Rational> below_half_sqrt = {
      {1, 10}, {3, 10}, {1, 2}, {3, 5}, {13, 20}, {7, 10}, {141, 200}, {707, 1000},
      {7070, 10000}, {7071, 10000}};
  const std::vector<Rational> above_half_sqrt = {
      {7072, 10000}, {708, 1000}, {71, 100}, {3, 4}, {4, 5}, {9, 10}, {1, 1},
      {11, 10}, {3, 2}, {2, 1}};
  for (const auto& b : below_half_sqrt) {
    probes.push_back({TableCase::case1, b, false});
    probes.push_back({TableCase::case6, b, true});
  }
  for (const auto& b : above_half_sqrt) {
    probes.push_back({TableCase::case1, b, true});
    probes.push_back({TableCase::case6, b, false});
  }
  const std::vector<Rational> below_one = {{1, 2}, {3, 4}, {9, 10}, {99, 100}, {999, 1000},
                                           {1, 10}, {2, 5}, {7, 10}, {4, 5}, {19, 20}};
  const std::vector<Rational> above_one = {{1, 1}, {1001, 1000}, {101, 100}, {11, 10},
                                           {5, 4}, {3, 2}, {2, 1}, {3, 1}, {5, 2}, {4, 1}};
  for (const auto& b : below_one) {
    probes.push_back({TableCase::case2, b, false});
    probes.push_back({TableCase::case3, b, true});
  }
  for (const auto& b : above_one) {
    probes.push_back({TableCase::case2, b, b > 1});  // row 2 needs beta strictly above 1
    probes.push_back({TableCase::case3, b, false});
  }
  for (const auto& probe : probes) {
    const auto search =
        case_restriction_satisfiable(probe.id, probe.beta, trials, rng_seed);
    bool expect = probe.expect_satisfiable;
    if (inject_fault) expect = !expect;
    res.record(search.satisfiable == expect,
               "case " + std::to_string(static_cast<int>(probe.id)) + " at beta = " +
                   format_scalar(probe.beta));
  }
  return res;
}

inline std::vector<SuiteResult> verify_all(std::uint64_t trials, std::uint64_t rng_seed,
                                           bool inject_fault = false) {
  return {verify_lemma1(trials, rng_seed, inject_fault),
          verify_sandwich(25, inject_fault),
          verify_ss(25, inject_fault),
          verify_cases(trials, rng_seed, inject_fault),
          verify_restrictions(std::min<std::uint64_t>(trials, 20'000), rng_seed,
                              inject_fault)};
}

}  // namespace randfib
