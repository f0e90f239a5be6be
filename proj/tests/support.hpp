#pragma once

// Test-only oracles, kept independent of the library's aggregated-row path:
// a naive walk over all 2^n sign sequences, a signed/normalized path pair
// walker, and exact Lagrange interpolation.

#include <cstdint>
#include <utility>
#include <vector>

#include "randfib/rational.hpp"
#include "randfib/rng.hpp"

namespace randfib::test {

template <class S>
struct NaiveSums {
  S sum_abs{};
  S sum_sq{};
};

/// Brute force over all 2^level sign vectors of the signed recursion
/// x_{n+1} = s*beta*x_n + x_{n-1}, absolute values taken only at the end.
template <class S>
NaiveSums<S> naive_row_sums(const S& x0, const S& x1, const S& beta, int level) {
  NaiveSums<S> out;
  const std::uint64_t paths = std::uint64_t(1) << level;
  for (std::uint64_t bits = 0; bits < paths; ++bits) {
    S prev = x0, curr = x1;
    for (int i = 0; i < level; ++i) {
      const bool plus = (bits >> i) & 1;
      S next = plus ? S(beta * curr + prev) : S(prev - beta * curr);
      prev = curr;
      curr = next;
    }
    const S mag = abs_value(curr);
    out.sum_abs += mag;
    out.sum_sq += mag * mag;
  }
  return out;
}

/// |x_level| along one signed path, computed two ways: by the raw signed
/// recursion, and by walking normalized nonnegative pairs with the
/// orientation bookkeeping that absolute values induce. Returns both.
template <class S>
std::pair<S, S> signed_vs_normalized(const S& x0, const S& x1, const S& beta,
                                     const std::vector<bool>& plus_signs) {
  S sprev = x0, scurr = x1;
  S nprev = x0, ncurr = x1;
  int eps_prev = 1, eps_curr = 1;  // signs of the true values behind (nprev, ncurr)
  for (const bool plus : plus_signs) {
    {
      S next = plus ? S(beta * scurr + sprev) : S(sprev - beta * scurr);
      sprev = scurr;
      scurr = next;
    }
    const int s = plus ? 1 : -1;
    const int oriented = s * eps_prev * eps_curr;
    S raw = oriented > 0 ? S(nprev + beta * ncurr) : S(nprev - beta * ncurr);
    int next_sign = eps_prev;
    if (raw < S(0)) {
      raw = -raw;
      next_sign = -eps_prev;
    }
    nprev = ncurr;
    eps_prev = eps_curr;
    ncurr = raw;
    eps_curr = next_sign;
  }
  return {abs_value(scurr), ncurr};
}

/// Value at x of the unique degree <= k-1 polynomial through k points.
inline Rational lagrange_eval(const std::vector<std::pair<Rational, Rational>>& points,
                              const Rational& x) {
  Rational acc(0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Rational term = points[i].second;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      term *= (x - points[j].first) / (points[i].first - points[j].first);
    }
    acc += term;
  }
  return acc;
}

}  // namespace randfib::test
