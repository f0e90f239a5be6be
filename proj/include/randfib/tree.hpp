#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/rational.hpp"

namespace randfib {

// Level-by-level expansion of the sign tree of x_{n+1} = +-beta*x_n + x_{n-1}.
// Negative values are replaced by their absolute values as they appear (a
// relabeling of which child is the sum and which the difference), so a node
// is the nonnegative pair (prev, curr). Nodes with equal pairs are merged
// and carry a multiplicity, which keeps the row representation far below
// the 2^n raw leaves whenever values collide (dramatically so for beta = 1
// and integer seeds).

template <class S>
struct NodeState {
  S prev;
  S curr;
  BigInt count;
};

template <class S>
struct AggregatedRow {
  int level = 0;
  S beta{};
  // Sorted by (prev, curr), keys unique. Canonical order makes every
  // downstream reduction independent of how the row was assembled.
  std::vector<NodeState<S>> states;

  BigInt total_count() const {
    BigInt total = 0;
    for (const auto& st : states) total += st.count;
    return total;
  }
};

template <class S>
struct RowSummary {
  int level = 0;
  S sum_abs{};     // S[n]  = sum of count * curr
  S sum_sq{};      // SS[n] = sum of count * curr^2
  S mean_abs{};    // S[n] / 2^n
  S raw_second{};  // SS[n] / 2^n
  S variance{};    // raw_second - mean_abs^2
};

struct EnumerateLimits {
  int max_level = 26;
  std::size_t max_states = 2'000'000;

  /// Honors RANDFIB_STATE_CAP when set.
  static EnumerateLimits from_env() {
    EnumerateLimits lim;
    if (const char* cap = std::getenv("RANDFIB_STATE_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(cap, &end, 10);
      if (end && *end == '\0' && v > 0) lim.max_states = static_cast<std::size_t>(v);
    }
    return lim;
  }
};

template <class S>
AggregatedRow<S> root_row(const S& x0, const S& x1, const S& beta) {
  if (!(beta > S(0))) throw InvalidInputError("beta must be positive");
  if (x0 < S(0) || x1 < S(0)) throw InvalidInputError("seed values must be nonnegative");
  if (x0 == S(0) && x1 == S(0)) throw InvalidInputError("seed (0, 0) is rejected");
  AggregatedRow<S> row;
  row.level = 0;
  row.beta = beta;
  row.states.push_back(NodeState<S>{x0, x1, BigInt(1)});
  return row;
}

namespace detail {

template <class S>
struct StateKeyHash {
  std::size_t operator()(const std::pair<S, S>& key) const {
    std::size_t h = scalar_hash(key.first);
    h ^= scalar_hash(key.second) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

template <class S>
using StateMap = std::unordered_map<std::pair<S, S>, BigInt, StateKeyHash<S>>;

template <class S>
void expand_chunk(const AggregatedRow<S>& row, std::size_t begin, std::size_t end,
                  StateMap<S>& out) {
  out.reserve(2 * (end - begin));
  for (std::size_t i = begin; i < end; ++i) {
    const auto& st = row.states[i];
    out[{st.curr, abs_value(st.prev - row.beta * st.curr)}] += st.count;
    out[{st.curr, st.prev + row.beta * st.curr}] += st.count;
  }
}

}  // namespace detail

/// One level of expansion. Each state (p, c, k) spawns (c, |p - beta*c|, k)
/// and (c, p + beta*c, k); children landing on the same key merge with
/// counts added, so the total multiplicity doubles exactly. With
/// partitions > 1 the input is split into chunks expanded concurrently and
/// merged; the canonical sort makes the result partition-invariant.
template <class S>
AggregatedRow<S> step_row(const AggregatedRow<S>& row, int partitions = 1) {
  AggregatedRow<S> next;
  next.level = row.level + 1;
  next.beta = row.beta;

  const std::size_t n = row.states.size();
  detail::StateMap<S> merged;
  if (partitions <= 1 || n < 1024) {
    detail::expand_chunk(row, 0, n, merged);
  } else {
    const std::size_t parts = std::min<std::size_t>(partitions, n);
    std::vector<detail::StateMap<S>> partials(parts);
    std::vector<std::thread> workers;
    workers.reserve(parts);
    for (std::size_t j = 0; j < parts; ++j) {
      const std::size_t begin = n * j / parts;
      const std::size_t end = n * (j + 1) / parts;
      workers.emplace_back([&row, begin, end, &slot = partials[j]] {
        detail::expand_chunk(row, begin, end, slot);
      });
    }
    for (auto& w : workers) w.join();
    merged = std::move(partials[0]);
    for (std::size_t j = 1; j < parts; ++j)
      for (auto& [key, cnt] : partials[j]) merged[key] += cnt;
  }

  next.states.reserve(merged.size());
  for (auto& [key, cnt] : merged)
    next.states.push_back(NodeState<S>{key.first, key.second, std::move(cnt)});
  std::sort(next.states.begin(), next.states.end(), [](const auto& a, const auto& b) {
    if (a.prev != b.prev) return a.prev < b.prev;
    return a.curr < b.curr;
  });
  return next;
}

template <class S>
RowSummary<S> row_stats(const AggregatedRow<S>& row) {
  RowSummary<S> out;
  out.level = row.level;
  S sum{};
  S sum_sq{};
  for (const auto& st : row.states) {
    const S weight = static_cast<S>(st.count);
    sum += weight * st.curr;
    sum_sq += weight * st.curr * st.curr;
  }
  out.sum_abs = sum;
  out.sum_sq = sum_sq;
  out.mean_abs = div_pow2(sum, row.level);
  out.raw_second = div_pow2(sum_sq, row.level);
  out.variance = out.raw_second - out.mean_abs * out.mean_abs;
  return out;
}

/// Summaries for levels 0..n_max. Refuses to start above the level cap and
/// aborts mid-run if the aggregated state count would exceed the budget.
template <class S>
std::vector<RowSummary<S>> enumerate_rows(const S& x0, const S& x1, const S& beta,
                                          int n_max,
                                          const EnumerateLimits& limits = EnumerateLimits::from_env(),
                                          int partitions = 1) {
  if (n_max < 0) throw InvalidInputError("n_max must be nonnegative");
  if (n_max > limits.max_level)
    throw ResourceLimitError("requested level " + std::to_string(n_max) +
                             " exceeds the level cap " + std::to_string(limits.max_level));
  std::vector<RowSummary<S>> out;
  out.reserve(n_max + 1);
  AggregatedRow<S> row = root_row(x0, x1, beta);
  out.push_back(row_stats(row));
  for (int level = 1; level <= n_max; ++level) {
    if (2 * row.states.size() > limits.max_states)
      throw ResourceLimitError("aggregated state count would exceed the cap of " +
                               std::to_string(limits.max_states) + " states at level " +
                               std::to_string(level));
    row = step_row(row, partitions);
    out.push_back(row_stats(row));
  }
  return out;
}

}  // namespace randfib
