#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/rational.hpp"
#include "randfib/rng.hpp"

namespace randfib {

// Bottom-row sums of the scaled half tree
//
//        a
//        |
//        b
//       / \
//   c = |a - beta*b|   d = a + beta*b
//     /   \              /   \
// |b-beta*c| b+beta*c  |b-beta*d| b+beta*d
//
// The sum of the four bottom absolute values is piecewise linear in
// (a, b); resolving the two inner absolute values splits it into six
// cases. The case table, with the conditions generating each case, the
// restriction those conditions impose on beta, and the sums:
//
//  #  conditions                          restriction   derived sum                tabulated sum
//  1  beta*b >= a, beta*a+beta^2*b >= b   beta^2 > 1/2  beta(c+d) + 2b + 2*beta*a  (same)
//  2  beta*b >= a, beta^2*b > b+beta*a    beta   > 1    beta(c+d) + 2*beta^2*b     beta(c+d) + (2+2*beta^2)b
//  3  beta*b >= a, beta*a+beta^2*b < b    beta   < 1    beta(c+d) + (4-2*beta^2)b  (same)
//  4  beta*b <  a, beta*a+beta^2*b >= b                 beta(c+d) + (2+2*beta^2)b  (same)
//  5  beta*b <  a, beta*a > beta^2*b+b    b = 0         beta(c+d) + 2*beta*a       (same)
//  6  beta*b <  a, beta*a+beta^2*b < b    beta^2 < 1/2  beta(c+d) + 4b - 2*beta*a  beta(c+d) + 2b - 2*beta*a
//
// Rows 2 and 6 of the tabulated column differ from the derived resolution
// by an additive 2b; direct enumeration sides with the derived column, and
// CaseReport carries both so the disagreement stays visible. Row 5's
// "b = 0" restriction is likewise reported as stated even though witnesses
// with b > 0 exist. Only row 6 subtracts a positive multiple of a, so a
// decaying expected value needs row 6 to be reachable, which forces
// beta^2 < 1/2.

enum class TableCase : int {
  case1 = 1,
  case2 = 2,
  case3 = 3,
  case4 = 4,
  case5 = 5,
  case6 = 6,
};

template <class S>
struct HalfTree {
  S a, b, beta;
  S c, d;
  std::array<S, 4> bottom;
};

template <class S>
HalfTree<S> half_tree(const S& a, const S& b, const S& beta) {
  if (a < S(0) || b < S(0)) throw InvalidInputError("a and b must be nonnegative");
  if (!(beta > S(0))) throw InvalidInputError("beta must be positive");
  HalfTree<S> t;
  t.a = a;
  t.b = b;
  t.beta = beta;
  t.c = abs_value(a - beta * b);
  t.d = a + beta * b;
  t.bottom = {abs_value(b - beta * t.c), b + beta * t.c,
              abs_value(b - beta * t.d), b + beta * t.d};
  return t;
}

template <class S>
S half_tree_bottom_sum(const S& a, const S& b, const S& beta) {
  const auto t = half_tree(a, b, beta);
  return t.bottom[0] + t.bottom[1] + t.bottom[2] + t.bottom[3];
}

namespace detail {

/// The two printed conditions of a row, evaluated verbatim.
template <class S>
bool case_conditions_hold(TableCase id, const S& a, const S& b, const S& beta) {
  const S bb = beta * b;
  const S lin = beta * a + beta * beta * b;  // beta*a + beta^2*b
  switch (id) {
    case TableCase::case1: return bb >= a && lin >= b;
    case TableCase::case2: return bb >= a && beta * beta * b > b + beta * a;
    case TableCase::case3: return bb >= a && lin < b;
    case TableCase::case4: return bb < a && lin >= b;
    case TableCase::case5: return bb < a && beta * a > beta * beta * b + b;
    case TableCase::case6: return bb < a && lin < b;
  }
  throw InvalidInputError("case id out of range");
}

}  // namespace detail

/// The unique row whose conditions hold. Rows 2 and 5 carry strict
/// comparisons and take precedence inside their branch; the sums agree
/// across every boundary, so the routing of equalities cannot change a sum.
template <class S>
TableCase classify_case(const S& a, const S& b, const S& beta) {
  if (a < S(0) || b < S(0)) throw InvalidInputError("a and b must be nonnegative");
  if (a == S(0) && b == S(0)) throw InvalidInputError("(0, 0) is rejected");
  if (!(beta > S(0))) throw InvalidInputError("beta must be positive");
  const S lin = beta * a + beta * beta * b;
  if (beta * b >= a) {
    if (beta * beta * b > b + beta * a) return TableCase::case2;
    if (lin >= b) return TableCase::case1;
    return TableCase::case3;
  }
  if (beta * a > beta * beta * b + b) return TableCase::case5;
  if (lin >= b) return TableCase::case4;
  return TableCase::case6;
}

template <class S>
struct CaseSums {
  S eq_derived;
  S table_printed;
};

/// Both sum formulas for a row; the inputs must satisfy the row's
/// conditions and (c, d) must come from the half tree.
template <class S>
CaseSums<S> case_sum_formulas(TableCase id, const S& a, const S& b, const S& c,
                              const S& d, const S& beta) {
  if (!detail::case_conditions_hold(id, a, b, beta))
    throw InvalidInputError("inputs do not satisfy the conditions of case " +
                            std::to_string(static_cast<int>(id)));
  if (c != abs_value(a - beta * b) || d != a + beta * b)
    throw InvalidInputError("c and d do not match the half tree of (a, b, beta)");
  const S common = beta * (c + d);
  const S two = S(2);
  const S four = S(4);
  const S beta_sq_b = beta * beta * b;
  CaseSums<S> out;
  switch (id) {
    case TableCase::case1:
      out.eq_derived = common + two * b + two * beta * a;
      out.table_printed = out.eq_derived;
      break;
    case TableCase::case2:
      out.eq_derived = common + two * beta_sq_b;
      out.table_printed = common + two * b + two * beta_sq_b;
      break;
    case TableCase::case3:
      out.eq_derived = common + four * b - two * beta_sq_b;
      out.table_printed = out.eq_derived;
      break;
    case TableCase::case4:
      out.eq_derived = common + two * b + two * beta_sq_b;
      out.table_printed = out.eq_derived;
      break;
    case TableCase::case5:
      out.eq_derived = common + two * beta * a;
      out.table_printed = out.eq_derived;
      break;
    case TableCase::case6:
      out.eq_derived = common + four * b - two * beta * a;
      out.table_printed = common + two * b - two * beta * a;
      break;
  }
  return out;
}

template <class S>
struct CaseReport {
  TableCase case_id;
  S brute_sum;
  S eq_derived_sum;
  S table_printed_sum;
  bool agree_eq = false;     // derived formula vs direct enumeration; always true
  bool agree_table = false;  // tabulated formula vs enumeration; false on rows 2 and 6
};

template <class S>
CaseReport<S> case_report(const S& a, const S& b, const S& beta) {
  const auto t = half_tree(a, b, beta);
  const TableCase id = classify_case(a, b, beta);
  const auto sums = case_sum_formulas(id, a, b, t.c, t.d, beta);
  CaseReport<S> rep;
  rep.case_id = id;
  rep.brute_sum = t.bottom[0] + t.bottom[1] + t.bottom[2] + t.bottom[3];
  rep.eq_derived_sum = sums.eq_derived;
  rep.table_printed_sum = sums.table_printed;
  rep.agree_eq = rep.eq_derived_sum == rep.brute_sum;
  rep.agree_table = rep.table_printed_sum == rep.brute_sum;
  return rep;
}

template <class S>
struct WitnessSearch {
  bool satisfiable = false;
  std::optional<std::pair<S, S>> witness;
};

/// Deterministic hunt for (a, b) >= 0 meeting a row's printed conditions:
/// a fixed list of boundary and wedge-midpoint candidates, then
/// `trials` random rationals. Every candidate is checked exactly.
template <class S>
WitnessSearch<S> case_restriction_satisfiable(TableCase id, const S& beta,
                                              std::uint64_t trials,
                                              std::uint64_t rng_seed) {
  if (!(beta > S(0))) throw InvalidInputError("beta must be positive");
  const S zero(0), one(1), two(2);

  std::vector<std::pair<S, S>> candidates = {
      {one, one},  {one, zero}, {zero, one}, {one, two},
      {two, one},  {two, two},  {one, S(4)}, {S(4), one},
  };
  // Aimed candidates: midpoints of the wedges the conditions carve out
  // (feasible exactly when the row's restriction allows), with b = 1.
  const S bsq = beta * beta;
  candidates.push_back({beta, one});                            // case 1 boundary a = beta*b
  candidates.push_back({beta / two, one});                      // interior of beta*b >= a
  if (beta != zero) {
    const S upper4 = beta + (one / beta);                       // a <= beta + 1/beta
    const S lower4 = (one - bsq) / beta;                        // a >= (1-beta^2)/beta
    const S lo4 = lower4 > beta ? lower4 : beta;
    candidates.push_back({(lo4 + upper4) / two, one});          // case 4 wedge midpoint
    candidates.push_back({upper4 + one, one});                  // case 5 with b = 1
    candidates.push_back({(beta + (one - bsq) / beta) / two, one});  // case 6 wedge midpoint
  }

  SplitMix64 rng(rng_seed, static_cast<std::uint64_t>(static_cast<int>(id)));
  for (std::uint64_t i = 0; i < trials; ++i)
    candidates.push_back({random_rational(rng), random_rational(rng)});

  for (const auto& [a, b] : candidates) {
    if (a < zero || b < zero) continue;
    if (detail::case_conditions_hold(id, a, b, beta))
      return WitnessSearch<S>{true, std::make_pair(a, b)};
  }
  return WitnessSearch<S>{false, std::nullopt};
}

/// The threshold below which the one subtractive row (case 6) becomes
/// reachable: 1/sqrt(2).
inline double critical_beta() { return 1.0 / std::sqrt(2.0); }

}  // namespace randfib
