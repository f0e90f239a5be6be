#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/polyroots.hpp"
#include "randfib/rational.hpp"

namespace randfib {

// Row-sum bounds built from the depth-3 subtree under an entry a with
// children b1 >= a and b2 >= 0. Grandchildren are c1 = a + b1, d1 = b1 - a,
// c2 = a + b2, d2 = |a - b2|; the bottom row sums to
//   sigma = a + b1 + b2 + 2*c1 + 2*c2 + d1 + d2 + |b2 - |a - b2||,
// which is sandwiched between
//   4a +  b1 +  b2 + c1 + c2 + d1 + d2   and
//   4a + 2*b1 + 2*b2 + c1 + c2 + d1 + d2.
// Summed over a whole row these give the recurrences behind BoundSequences.

template <class S>
struct Lemma1Subtree {
  S a, b1, b2;
  S c1, c2, d1, d2;
  S sigma;
  S lower_bound, upper_bound;
  bool holds = false;
};

/// The eight bottom-row leaf values of the subtree, enumerated directly.
template <class S>
std::array<S, 8> lemma1_bottom_row(const S& a, const S& b1, const S& b2) {
  const S c1 = a + b1;
  const S d1 = b1 - a;
  const S c2 = a + b2;
  const S d2 = abs_value(a - b2);
  return {b1 + c1, abs_value(b1 - c1), b1 + d1, abs_value(b1 - d1),
          b2 + c2, abs_value(b2 - c2), b2 + d2, abs_value(b2 - d2)};
}

template <class S>
Lemma1Subtree<S> lemma1_check(const S& a, const S& b1, const S& b2) {
  if (a < S(0) || b2 < S(0)) throw InvalidInputError("a and b2 must be nonnegative");
  if (b1 < a) throw InvalidInputError("b1 must be at least a");

  Lemma1Subtree<S> t;
  t.a = a;
  t.b1 = b1;
  t.b2 = b2;
  t.c1 = a + b1;
  t.c2 = a + b2;
  t.d1 = b1 - a;
  t.d2 = abs_value(a - b2);
  t.sigma = a + b1 + b2 + S(2) * t.c1 + S(2) * t.c2 + t.d1 + t.d2 +
            abs_value(b2 - abs_value(a - b2));

  S enumerated{};
  for (const S& leaf : lemma1_bottom_row(a, b1, b2)) enumerated += leaf;
  if (enumerated != t.sigma)
    throw InternalCheckError("closed-form sigma disagrees with the enumerated bottom row");

  const S wings = t.c1 + t.c2 + t.d1 + t.d2;
  t.lower_bound = S(4) * a + b1 + b2 + wings;
  t.upper_bound = S(4) * a + S(2) * b1 + S(2) * b2 + wings;
  t.holds = t.lower_bound <= t.sigma && t.sigma <= t.upper_bound;
  return t;
}

template <class S>
struct BoundSequences {
  std::vector<S> lower;  // L[n] = L[n-1] +   L[n-2] + 4*L[n-3]
  std::vector<S> upper;  // U[n] = U[n-1] + 2*U[n-2] + 4*U[n-3]
};

template <class S>
BoundSequences<S> bound_sequences(const S& s0, const S& s1, const S& s2, int n_max) {
  if (!(s0 > S(0) && s1 > S(0) && s2 > S(0)))
    throw InvalidInputError("initial sums must be positive");
  if (n_max < 3) throw InvalidInputError("n_max must be at least 3");
  BoundSequences<S> seq;
  seq.lower = {s0, s1, s2};
  seq.upper = {s0, s1, s2};
  for (int n = 3; n <= n_max; ++n) {
    seq.lower.push_back(seq.lower[n - 1] + seq.lower[n - 2] + S(4) * seq.lower[n - 3]);
    seq.upper.push_back(seq.upper[n - 1] + S(2) * seq.upper[n - 2] + S(4) * seq.upper[n - 3]);
  }
  return seq;
}

/// Second-moment row sums: SS[n] = 2*SS[n-1] + 4*SS[n-2]. Exact for the
/// beta = 1 tree, not merely a bound, since squaring kills the cross terms.
template <class S>
std::vector<S> ss_sequence(const S& ss0, const S& ss1, int n_max) {
  if (ss0 < S(0) || ss1 < S(0)) throw InvalidInputError("initial sums must be nonnegative");
  if (ss0 == S(0) && ss1 == S(0)) throw InvalidInputError("initial sums must not both vanish");
  if (n_max < 0) throw InvalidInputError("n_max must be nonnegative");
  std::vector<S> seq{ss0};
  if (n_max >= 1) seq.push_back(ss1);
  for (int n = 2; n <= n_max; ++n)
    seq.push_back(S(2) * seq[n - 1] + S(4) * seq[n - 2]);
  return seq;
}

// Per-step growth factors. The row sums double the leaf count each level,
// so expected-value growth is the recurrence root divided by 2.
struct GrowthConstants {
  double lower_root = 0;       // real root of x^3 - x^2 - x - 4
  double upper_root = 0;       // real root of x^3 - x^2 - 2x - 4
  double lower_growth = 0;     // lower_root / 2, bounds E(|x_n|)^(1/n) from below
  double upper_growth = 0;     // upper_root / 2, bounds it from above
  double ss_root_growth = 0;   // dominant root of x^2 - 2x - 4, i.e. 1 + sqrt(5)
  double mean_sq_growth = 0;   // ss_root_growth / 2, growth of the normalized second moment
};

inline GrowthConstants growth_constants(double tolerance = 1e-12) {
  if (tolerance <= 0) throw InvalidInputError("tolerance must be positive");
  GrowthConstants g;
  g.lower_root = dominant_root(Polynomial{{1, -1, -1, -4}}, tolerance);
  g.upper_root = dominant_root(Polynomial{{1, -1, -2, -4}}, tolerance);
  g.ss_root_growth = dominant_root(Polynomial{{1, -2, -4}}, tolerance);
  g.lower_growth = g.lower_root / 2.0;
  g.upper_growth = g.upper_root / 2.0;
  g.mean_sq_growth = g.ss_root_growth / 2.0;
  return g;
}

}  // namespace randfib
