#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/ratpoly.hpp"
#include "randfib/tree.hpp"

namespace randfib {

// Tracks tree rows symbolically in beta: every node is a pair of
// polynomials (prev(beta), curr(beta)) valid on an open beta interval on
// which both are nonnegative. A difference child |prev - beta*curr| stops
// being resolvable by one sign exactly at the roots of prev - beta*curr
// inside the interval; those roots are where the fixed-level mean kinks as
// a function of beta. The scan splits the interval at every such root and
// recurses, so between two reported breakpoints each row sum is a single
// polynomial in beta.

struct Breakpoint {
  AlgebraicRoot location;  // refinable; exact when the root is rational
  double beta_star = 0;    // double approximation of the location
  int level = 0;           // level of the child whose value kinks here
  RatPoly origin_prev;     // the state whose difference child changes sign
  RatPoly origin_curr;
};

namespace detail {

struct SymState {
  RatPoly prev, curr;
  BigInt count;
};

struct PendingRoot {
  AlgebraicRoot root;
  RatPoly q;  // prev - beta*curr of the originating state
  RatPoly origin_prev, origin_curr;
};

// Open working interval; absent bounds mean 0 on the left, +infinity on
// the right.
struct IntervalBounds {
  std::optional<AlgebraicRoot> lo, hi;

  Rational hull_lo() const { return lo ? lo->lower() : Rational(0); }

  bool contains(AlgebraicRoot& candidate) {
    if (lo && AlgebraicRoot::compare(candidate, *lo) <= 0) return false;
    if (hi && AlgebraicRoot::compare(candidate, *hi) >= 0) return false;
    return true;
  }
};

class BreakpointScan {
public:
  BreakpointScan(const Rational& x0, const Rational& x1, int target_level)
      : target_(target_level) {
    root_.prev = RatPoly::constant(x0);
    root_.curr = RatPoly::constant(x1);
    root_.count = 1;
  }

  std::vector<Breakpoint> run() {
    expand({root_}, 0, IntervalBounds{});
    // Roots found at one level are interior to intervals already split at
    // shallower levels, so entries are pairwise distinct; only the order
    // needs fixing. Insertion sort because the comparator refines state.
    for (std::size_t i = 1; i < found_.size(); ++i)
      for (std::size_t j = i; j > 0; --j) {
        if (AlgebraicRoot::compare(found_[j].location, found_[j - 1].location) >= 0) break;
        std::swap(found_[j], found_[j - 1]);
      }
    for (auto& bp : found_) bp.beta_star = bp.location.approx();
    return std::move(found_);
  }

private:
  void expand(std::vector<SymState> states, int level, IntervalBounds bounds) {
    if (level >= target_) return;

    // Candidate split points: roots of every state's prev - beta*curr
    // strictly inside the interval, merged when two states share a root.
    std::vector<PendingRoot> splits;
    for (const auto& st : states) {
      const RatPoly q = st.prev - st.curr.shifted_up();
      if (q.is_zero() || q.degree() < 1) continue;
      const Rational hull_hi = bounds.hi ? bounds.hi->upper() : cauchy_root_bound(q);
      for (auto& found : isolate_roots(q, bounds.hull_lo(), hull_hi)) {
        if (!bounds.contains(found)) continue;
        bool duplicate = false;
        for (auto& existing : splits)
          if (AlgebraicRoot::compare(existing.root, found) == 0) {
            duplicate = true;
            break;
          }
        if (!duplicate)
          splits.push_back(PendingRoot{std::move(found), q, st.prev, st.curr});
      }
    }

    std::sort(splits.begin(), splits.end(), [](PendingRoot& a, PendingRoot& b) {
      return AlgebraicRoot::compare(a.root, b.root) < 0;
    });
    separate(splits, bounds);

    // Rational witnesses, one per sub-interval.
    const std::vector<Rational> witnesses = pick_witnesses(splits, bounds);

    std::vector<int> diff_signs;  // sign of each split's q at each witness
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      for (std::size_t s = 0; s < splits.size(); ++s) {
        const Rational v = splits[s].q.eval(witnesses[w]);
        diff_signs.push_back(v < 0 ? -1 : 1);
      }
    }
    const auto sign_at = [&](std::size_t w, std::size_t s) {
      return diff_signs[w * splits.size() + s];
    };
    for (std::size_t s = 0; s < splits.size(); ++s)
      if (sign_at(s, s) != sign_at(s + 1, s))
        found_.push_back(Breakpoint{splits[s].root, 0.0, level + 1, splits[s].origin_prev,
                                    splits[s].origin_curr});

    for (std::size_t w = 0; w < witnesses.size(); ++w) {
      IntervalBounds sub;
      sub.lo = w == 0 ? bounds.lo : std::optional<AlgebraicRoot>(splits[w - 1].root);
      sub.hi = w == witnesses.size() - 1 ? bounds.hi
                                         : std::optional<AlgebraicRoot>(splits[w].root);
      expand(resolve_children(states, witnesses[w]), level + 1, sub);
    }
  }

  static std::vector<SymState> resolve_children(const std::vector<SymState>& states,
                                                const Rational& witness) {
    std::map<std::pair<RatPoly, RatPoly>, BigInt> merged;
    for (const auto& st : states) {
      const RatPoly beta_curr = st.curr.shifted_up();
      RatPoly diff = st.prev - beta_curr;
      if (diff.eval(witness) < 0) diff = -diff;
      merged[{st.curr, std::move(diff)}] += st.count;
      merged[{st.curr, st.prev + beta_curr}] += st.count;
    }
    std::vector<SymState> out;
    out.reserve(merged.size());
    for (auto& [key, cnt] : merged)
      out.push_back(SymState{key.first, key.second, std::move(cnt)});
    return out;
  }

  // Refine until the chain lo < r_1 < r_2 < ... < r_k < hi is certified by
  // rational separators: upper(prev) < lower(next) for every consecutive
  // pair, and lower(r_1) > 0 when there is no left bound. Every gap then
  // holds a rational point strictly between the two roots.
  static void separate(std::vector<PendingRoot>& splits, IntervalBounds& bounds) {
    if (splits.empty()) return;
    for (;;) {
      bool ok = true;
      const Rational left = bounds.lo ? bounds.lo->upper() : Rational(0);
      if (!(left < splits.front().root.lower())) {
        if (bounds.lo) bounds.lo->refine_once();
        splits.front().root.refine_once();
        ok = false;
      }
      for (std::size_t i = 0; i + 1 < splits.size(); ++i)
        if (!(splits[i].root.upper() < splits[i + 1].root.lower())) {
          splits[i].root.refine_once();
          splits[i + 1].root.refine_once();
          ok = false;
        }
      if (bounds.hi && !(splits.back().root.upper() < bounds.hi->lower())) {
        splits.back().root.refine_once();
        bounds.hi->refine_once();
        ok = false;
      }
      if (ok) return;
    }
  }

  static std::vector<Rational> pick_witnesses(std::vector<PendingRoot>& splits,
                                              const IntervalBounds& bounds) {
    std::vector<Rational> ws;
    if (splits.empty()) {
      if (bounds.hi) {
        const Rational lo = bounds.lo ? bounds.lo->upper() : Rational(0);
        ws.push_back((lo + bounds.hi->lower()) / 2);
      } else {
        ws.push_back((bounds.lo ? bounds.lo->upper() : Rational(0)) + 1);
      }
      return ws;
    }
    const Rational first_lo = splits.front().root.lower();
    ws.push_back((bounds.lo ? bounds.lo->upper() + first_lo : first_lo) / 2);
    for (std::size_t i = 0; i + 1 < splits.size(); ++i)
      ws.push_back((splits[i].root.upper() + splits[i + 1].root.lower()) / 2);
    if (bounds.hi)
      ws.push_back((splits.back().root.upper() + bounds.hi->lower()) / 2);
    else
      ws.push_back(splits.back().root.upper() + 1);
    return ws;
  }

  int target_;
  SymState root_;
  std::vector<Breakpoint> found_;
};

}  // namespace detail

/// All beta > 0 where some difference child changes sign on a path of at
/// most `level` steps, ascending. Candidate kinks of beta -> S[level](beta).
inline std::vector<Breakpoint> breakpoints(const Rational& x0, const Rational& x1,
                                           int level, int level_cap = 12) {
  if (x0 < 0 || x1 < 0 || (x0 == 0 && x1 == 0))
    throw InvalidInputError("seed must be nonnegative and not both zero");
  if (level < 0) throw InvalidInputError("level must be nonnegative");
  if (level > level_cap)
    throw ResourceLimitError("symbolic tracking capped at level " +
                             std::to_string(level_cap));
  return detail::BreakpointScan(x0, x1, level).run();
}

/// Rational bounds [lo_i, hi_i] strictly inside each open interval cut out
/// by the sorted breakpoints: k+1 pairs covering (0, b_1), (b_1, b_2), ...,
/// (b_k, b_k + tail_span). Refines breakpoint locations as needed.
inline std::vector<std::pair<Rational, Rational>> interval_inner_bounds(
    std::vector<Breakpoint>& bps, const Rational& tail_span = Rational(1)) {
  std::vector<std::pair<Rational, Rational>> out;
  if (bps.empty()) {
    out.emplace_back(Rational(1, 2), Rational(1, 2) + tail_span);
    return out;
  }
  for (;;) {  // strict separation, including away from zero
    bool ok = bps.front().location.lower() > 0;
    for (std::size_t i = 0; ok && i + 1 < bps.size(); ++i)
      ok = bps[i].location.upper() < bps[i + 1].location.lower();
    if (ok) break;
    for (auto& bp : bps) bp.location.refine_once();
    if (bps.front().location.lower() <= 0) bps.front().location.refine_once();
  }
  const auto push_inner = [&out](const Rational& lo, const Rational& hi) {
    const Rational pad = (hi - lo) / 4;
    out.emplace_back(lo + pad, hi - pad);
  };
  push_inner(Rational(0), bps.front().location.lower());
  for (std::size_t i = 0; i + 1 < bps.size(); ++i)
    push_inner(bps[i].location.upper(), bps[i + 1].location.lower());
  const Rational last_hi = bps.back().location.upper();
  push_inner(last_hi, last_hi + tail_span);
  return out;
}

}  // namespace randfib
