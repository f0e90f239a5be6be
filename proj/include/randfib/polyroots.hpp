#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "randfib/errors.hpp"

namespace randfib {

// Real roots of quadratics and cubics, found by bracketing between the
// critical points and bisecting each monotonic piece, then polishing with
// a few Newton steps. Simple roots only; near-multiple roots get whatever
// the bisection isolates.

struct Polynomial {
  std::vector<double> coeffs;  // highest degree first

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  double eval(double x) const {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * x + c;
    return acc;
  }

  double eval_derivative(double x) const {
    const int n = degree();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc = acc * x + coeffs[i] * (n - i);
    return acc;
  }
};

namespace detail {

/// Cauchy bound: all real roots lie in (-B, B).
inline double root_bound(const Polynomial& p) {
  const double lead = std::fabs(p.coeffs.front());
  double m = 0.0;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i)
    m = std::max(m, std::fabs(p.coeffs[i]) / lead);
  return 1.0 + m;
}

/// One root inside [lo, hi] where p changes sign; bisection to width
/// 1e-12 * scale, then four Newton steps clamped to the bracket.
inline double bisect_newton(const Polynomial& p, double lo, double hi) {
  double flo = p.eval(lo);
  if (flo == 0.0) return lo;
  if (p.eval(hi) == 0.0) return hi;
  const double width_goal = 1e-12 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
  while (hi - lo > width_goal) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // ran out of doubles
    const double fmid = p.eval(mid);
    if (fmid == 0.0) return mid;
    if ((flo < 0) == (fmid < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const double d = p.eval_derivative(x);
    if (d == 0.0) break;
    const double next = x - p.eval(x) / d;
    if (!(next >= lo && next <= hi)) break;
    x = next;
  }
  return x;
}

}  // namespace detail

/// All real roots, ascending. Accepts degree 2 or 3 with a nonzero
/// leading coefficient.
inline std::vector<double> real_roots(const Polynomial& p, double tolerance) {
  if (tolerance <= 0) throw InvalidInputError("tolerance must be positive");
  const int deg = p.degree();
  if (deg != 2 && deg != 3) throw InvalidInputError("polynomial degree must be 2 or 3");
  if (p.coeffs.front() == 0.0) throw InvalidInputError("zero leading coefficient");

  const double bound = detail::root_bound(p);

  // Monotonic pieces are delimited by the derivative's roots.
  std::vector<double> cuts{-bound, bound};
  if (deg == 2) {
    cuts.push_back(-p.coeffs[1] / (2.0 * p.coeffs[0]));
  } else {
    const double a = 3.0 * p.coeffs[0], b = 2.0 * p.coeffs[1], c = p.coeffs[2];
    const double disc = b * b - 4.0 * a * c;
    if (disc > 0) {
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
      cuts.push_back(q / a);
      if (q != 0.0) cuts.push_back(c / q);
    } else if (disc == 0) {
      cuts.push_back(-b / (2.0 * a));
    }
  }
  std::sort(cuts.begin(), cuts.end());

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (!(lo < hi)) continue;
    const double flo = p.eval(lo), fhi = p.eval(hi);
    if (flo == 0.0) {
      if (roots.empty() || std::fabs(roots.back() - lo) > tolerance) roots.push_back(lo);
      continue;
    }
    if (fhi == 0.0 && i + 2 == cuts.size()) {
      roots.push_back(hi);
      continue;
    }
    if ((flo < 0) != (fhi < 0)) {
      const double r = detail::bisect_newton(p, lo, hi);
      if (roots.empty() || std::fabs(roots.back() - r) > tolerance) roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Largest real root.
inline double dominant_root(const Polynomial& p, double tolerance) {
  const auto roots = real_roots(p, tolerance);
  if (roots.empty()) throw InvalidInputError("polynomial has no real root");
  return roots.back();
}

}  // namespace randfib
