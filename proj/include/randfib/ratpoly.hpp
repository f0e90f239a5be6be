#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/rational.hpp"

namespace randfib {

// Dense univariate polynomials over the rationals, plus Sturm-sequence
// real-root isolation and exactly comparable algebraic numbers. Degrees
// stay small (bounded by the symbolic tree depth), so no attempt is made
// at asymptotically clever arithmetic.

class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { normalize(); }

  static RatPoly constant(const Rational& v) { return RatPoly({v}); }
  static RatPoly variable() { return RatPoly({Rational(0), Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->convert_to<double>();
    return acc;
  }

  RatPoly derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(BigInt(i));
    return RatPoly(std::move(d));
  }

  /// Multiply by x^k; turns curr(beta) into beta*curr(beta) for k = 1.
  RatPoly shifted_up(std::size_t k = 1) const {
    if (is_zero()) return RatPoly();
    std::vector<Rational> r(c_.size() + k, Rational(0));
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return RatPoly(std::move(r));
  }

  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return RatPoly(std::move(r));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return RatPoly(std::move(r));
  }
  RatPoly operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return RatPoly(std::move(r));
  }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(r));
  }
  RatPoly scaled(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= s;
    return RatPoly(std::move(r));
  }

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }
  friend bool operator<(const RatPoly& a, const RatPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
  }

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<RatPoly, RatPoly> divrem(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw InvalidInputError("division by the zero polynomial");
    std::vector<Rational> rem(num.c_);
    const int dn = den.degree();
    const int qn = num.degree() - dn;
    if (qn < 0) return {RatPoly(), num};
    std::vector<Rational> quot(qn + 1, Rational(0));
    for (int k = qn; k >= 0; --k) {
      const Rational factor = rem[k + dn] / den.c_.back();
      quot[k] = factor;
      if (factor == 0) continue;
      for (int i = 0; i <= dn; ++i) rem[k + i] -= factor * den.c_[i];
    }
    return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      const bool neg = c_[i] < 0;
      const Rational mag = neg ? Rational(-c_[i]) : c_[i];
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const std::string coef = format_scalar(mag);
      if (i == 0) {
        out += coef;
      } else {
        if (coef != "1") out += coef + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;  // ascending degree; empty means zero
};

inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = RatPoly::divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.leading());  // monic
}

inline RatPoly square_free_part(const RatPoly& p) {
  if (p.degree() <= 1) return p;
  const RatPoly g = gcd(p, p.derivative());
  if (g.degree() < 1) return p;
  return RatPoly::divrem(p, g).first;
}

/// Divide out a known root; the remainder must vanish.
inline RatPoly deflate(const RatPoly& p, const Rational& root) {
  const RatPoly linear({-root, Rational(1)});
  auto [quot, rem] = RatPoly::divrem(p, linear);
  if (!rem.is_zero()) throw InternalCheckError("deflation by a non-root");
  return quot;
}

/// Every real root of p lies strictly inside (-bound, bound).
inline Rational cauchy_root_bound(const RatPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    const Rational q = abs_value(p.coeff(i) / p.leading());
    if (q > m) m = q;
  }
  return Rational(1) + m;
}

class SturmChain {
public:
  explicit SturmChain(const RatPoly& square_free) {
    seq_.push_back(square_free);
    seq_.push_back(square_free.derivative());
    while (!seq_.back().is_zero() && seq_.back().degree() >= 0) {
      RatPoly r = RatPoly::divrem(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(-r);
      if (seq_.back().degree() == 0) break;
    }
  }

  int sign_variations(const Rational& x) const {
    int variations = 0;
    int last = 0;
    for (const auto& p : seq_) {
      const Rational v = p.eval(x);
      const int s = v == 0 ? 0 : (v < 0 ? -1 : 1);
      if (s != 0) {
        if (last != 0 && s != last) ++variations;
        last = s;
      }
    }
    return variations;
  }

  /// Distinct real roots in (lo, hi]; endpoints must not be roots of seq[0].
  int count_roots(const Rational& lo, const Rational& hi) const {
    return sign_variations(lo) - sign_variations(hi);
  }

private:
  std::vector<RatPoly> seq_;
};

// A real algebraic number: either an exact rational, or the unique root of
// a square-free polynomial inside an open isolating interval with rational
// endpoints that are not themselves roots. Comparisons refine intervals
// until they separate, with a gcd certificate to recognize equal numbers.
class AlgebraicRoot {
public:
  static AlgebraicRoot exact(const Rational& value, RatPoly defining = RatPoly()) {
    AlgebraicRoot r;
    if (defining.is_zero())
      defining = RatPoly({-value, Rational(1)});
    r.poly_ = std::move(defining);
    r.lo_ = r.hi_ = value;
    r.exact_ = true;
    return r;
  }

  static AlgebraicRoot isolated(RatPoly square_free, const Rational& lo, const Rational& hi) {
    AlgebraicRoot r;
    r.poly_ = std::move(square_free);
    r.lo_ = lo;
    r.hi_ = hi;
    r.exact_ = false;
    const Rational flo = r.poly_.eval(lo), fhi = r.poly_.eval(hi);
    if (flo == 0 || fhi == 0 || (flo < 0) == (fhi < 0))
      throw InvalidInputError("interval does not isolate a sign change");
    return r;
  }

  bool is_exact() const { return exact_; }
  const Rational& value() const { return lo_; }      // exact roots only
  const Rational& lower() const { return lo_; }      // strict bound unless exact
  const Rational& upper() const { return hi_; }
  const RatPoly& defining() const { return poly_; }
  Rational width() const { return hi_ - lo_; }

  void refine_once() {
    if (exact_) return;
    const Rational mid = (lo_ + hi_) / 2;
    const Rational fm = poly_.eval(mid);
    if (fm == 0) {
      lo_ = hi_ = mid;
      exact_ = true;
      return;
    }
    if ((fm < 0) == (poly_.eval(lo_) < 0)) lo_ = mid;
    else hi_ = mid;
  }

  void refine_below(const Rational& target_width) {
    while (!exact_ && width() >= target_width) refine_once();
  }

  double approx() {
    refine_below(Rational(BigInt(1), BigInt(1) << 60));
    return ((lo_ + hi_) / 2).convert_to<double>();
  }

  /// Three-way comparison; refines both operands as a side effect.
  static int compare(AlgebraicRoot& a, AlgebraicRoot& b) {
    for (;;) {
      if (a.exact_ && b.exact_) return a.lo_ < b.lo_ ? -1 : (a.lo_ == b.lo_ ? 0 : 1);
      if (a.hi_ < b.lo_) return -1;
      if (b.hi_ < a.lo_) return 1;
      if (a.exact_) return -compare_exact(a.lo_, b);
      if (b.exact_) return compare_exact(b.lo_, a);
      if (certified_equal(a, b)) return 0;
      a.refine_once();
      b.refine_once();
    }
  }

private:
  // Position of the isolated root of r relative to the exact value v:
  // -1 when root < v, 0 when equal, +1 when root > v.
  static int compare_exact(const Rational& v, AlgebraicRoot& r) {
    if (r.poly_.eval(v) == 0 && r.lo_ < v && v < r.hi_) {
      r.lo_ = r.hi_ = v;
      r.exact_ = true;
      return 0;
    }
    for (;;) {
      if (r.hi_ <= v) return -1;
      if (v <= r.lo_) return 1;
      r.refine_once();
      if (r.exact_) return r.lo_ < v ? -1 : (r.lo_ == v ? 0 : 1);
    }
  }

  static bool certified_equal(const AlgebraicRoot& a, const AlgebraicRoot& b) {
    const RatPoly g = gcd(a.poly_, b.poly_);
    if (g.degree() < 1) return false;
    const Rational lo = std::max(a.lo_, b.lo_);
    const Rational hi = std::min(a.hi_, b.hi_);
    if (!(lo < hi)) return false;
    if (g.eval(lo) == 0 || g.eval(hi) == 0) return false;  // resolved by refinement instead
    return SturmChain(g).count_roots(lo, hi) > 0;
  }

  RatPoly poly_;
  Rational lo_, hi_;
  bool exact_ = false;
};

namespace detail {

inline void isolate_rec(const RatPoly& f, const SturmChain& chain, const Rational& lo,
                        const Rational& hi, std::vector<AlgebraicRoot>& out) {
  const int n = chain.count_roots(lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back(AlgebraicRoot::isolated(f, lo, hi));
    return;
  }
  const Rational mid = (lo + hi) / 2;
  if (f.eval(mid) == 0) {
    const RatPoly g = deflate(f, mid);
    const SturmChain gchain(g);
    isolate_rec(g, gchain, lo, mid, out);
    out.push_back(AlgebraicRoot::exact(mid, f));
    isolate_rec(g, gchain, mid, hi, out);
  } else {
    isolate_rec(f, chain, lo, mid, out);
    isolate_rec(f, chain, mid, hi, out);
  }
}

}  // namespace detail

/// All real roots of p strictly inside (lo, hi), ascending.
inline std::vector<AlgebraicRoot> isolate_roots(const RatPoly& p, const Rational& lo,
                                                const Rational& hi) {
  std::vector<AlgebraicRoot> out;
  if (p.is_zero()) throw InvalidInputError("cannot isolate roots of the zero polynomial");
  RatPoly f = square_free_part(p);
  f = f.scaled(Rational(1) / f.leading());
  while (!f.is_zero() && f.degree() >= 1 && f.eval(lo) == 0) f = deflate(f, lo);
  while (!f.is_zero() && f.degree() >= 1 && f.eval(hi) == 0) f = deflate(f, hi);
  if (f.degree() < 1) return out;
  detail::isolate_rec(f, SturmChain(f), lo, hi, out);
  return out;
}

/// Roots with beta > 0, i.e. inside (0, cauchy bound).
inline std::vector<AlgebraicRoot> isolate_positive_roots(const RatPoly& p) {
  if (p.is_zero() || p.degree() < 1) return {};
  return isolate_roots(p, Rational(0), cauchy_root_bound(p));
}

}  // namespace randfib
