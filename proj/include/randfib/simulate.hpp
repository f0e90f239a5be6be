#pragma once

#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "randfib/errors.hpp"
#include "randfib/rational.hpp"
#include "randfib/rng.hpp"
#include "randfib/tree.hpp"

namespace randfib {

// Monte Carlo estimation of the almost-sure growth exponent
// gamma = lim log|x_n| / n, plus fixed-level mean sweeps over beta.
//
// The recursion comes in two scalings that coincide at beta = 1:
//
//   scale_current:  x_{n+1} = +-beta * x_n + x_{n-1}   (the tree's form)
//   scale_previous: x_{n+1} = x_n +- beta * x_{n-1}
//
// They behave very differently away from beta = 1. With the factor on the
// current term the product of steps is volume-preserving and gamma > 0 for
// every beta > 0; with the factor on the previous term the step is
// contracting for beta < 1 and gamma changes sign near beta ~ 0.70, which
// is the growth/decay transition growth_sign_crossing brackets. The
// simulation commands default to scale_previous for that reason.

enum class BetaPlacement {
  scale_current,
  scale_previous,
};

struct LyapunovEstimate {
  double beta = 0;
  double gamma = 0;          // mean over trials of log|x_steps| / steps
  double std_error = 0;      // sample standard deviation / sqrt(trials)
  double growth_factor = 0;  // exp(gamma)
  std::uint64_t steps = 0;
  std::uint32_t trials = 0;
  std::uint64_t rng_seed = 0;
};

struct McConfig {
  std::uint64_t steps = 100'000;
  std::uint32_t trials = 200;
  std::uint64_t rng_seed = 1;
  BetaPlacement placement = BetaPlacement::scale_previous;
  double x0 = 1.0;
  double x1 = 1.0;
  int renorm_cadence = 64;  // rescale the pair to unit max-norm this often
  int threads = 1;
};

namespace detail {

/// log|x_steps| for one signed trajectory, accumulated in log scale.
inline double log_final_abs(double beta, std::uint64_t steps, SplitMix64 rng,
                            BetaPlacement placement, double x0, double x1, int cadence) {
  double prev = x0, curr = x1;
  double log_scale = 0.0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    const double sign = rng.next_bit() ? 1.0 : -1.0;
    const double next = placement == BetaPlacement::scale_current
                            ? sign * beta * curr + prev
                            : curr + sign * beta * prev;
    prev = curr;
    curr = next;
    if ((i + 1) % static_cast<std::uint64_t>(cadence) == 0) {
      const double m = std::max(std::fabs(prev), std::fabs(curr));
      if (m > 0.0) {
        prev /= m;
        curr /= m;
        log_scale += std::log(m);
      }
    }
  }
  // A final value of exactly zero contributes through its neighbor (the
  // pair cannot both vanish for a nonzero seed).
  const double last = std::fabs(curr) > 0.0 ? std::fabs(curr) : std::fabs(prev);
  return log_scale + std::log(last);
}

template <class Fn>
void run_indexed(std::uint32_t count, int threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::uint32_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  const std::uint32_t n_workers = std::min<std::uint32_t>(threads, count);
  for (std::uint32_t w = 0; w < n_workers; ++w)
    workers.emplace_back([count, n_workers, w, &fn] {
      for (std::uint32_t i = w; i < count; i += n_workers) fn(i);
    });
  for (auto& t : workers) t.join();
}

}  // namespace detail

/// Estimate gamma at one beta. Trial t draws its signs from the substream
/// (rng_seed, t), and the reduction runs in trial order, so the result is
/// identical for any thread count.
inline LyapunovEstimate lyapunov_mc(double beta, const McConfig& cfg) {
  if (beta < 0) throw InvalidInputError("beta must be nonnegative");
  if (cfg.steps < 1 || cfg.trials < 1)
    throw InvalidInputError("steps and trials must be at least 1");
  if (cfg.renorm_cadence < 1) throw InvalidInputError("renorm cadence must be positive");

  std::vector<double> gammas(cfg.trials);
  detail::run_indexed(cfg.trials, cfg.threads, [&](std::uint32_t t) {
    const double log_abs = detail::log_final_abs(beta, cfg.steps, SplitMix64(cfg.rng_seed, t),
                                                 cfg.placement, cfg.x0, cfg.x1,
                                                 cfg.renorm_cadence);
    gammas[t] = log_abs / static_cast<double>(cfg.steps);
  });

  double mean = 0.0;
  for (double g : gammas) mean += g;
  mean /= cfg.trials;
  double var = 0.0;
  for (double g : gammas) var += (g - mean) * (g - mean);

  LyapunovEstimate est;
  est.beta = beta;
  est.gamma = mean;
  est.std_error = cfg.trials > 1
                      ? std::sqrt(var / (cfg.trials - 1)) / std::sqrt(double(cfg.trials))
                      : 0.0;
  est.growth_factor = std::exp(mean);
  est.steps = cfg.steps;
  est.trials = cfg.trials;
  est.rng_seed = cfg.rng_seed;
  return est;
}

enum class SweepMode { exact, mc };

template <class S>
struct SweepPoint {
  S beta{};
  int level = 0;
  S mean_abs{};
  SweepMode mode = SweepMode::exact;
};

struct McSweepPoint {
  double beta = 0;
  int level = 0;
  double mean_abs = 0;
  double std_error = 0;
};

/// Exact fixed-level means S[level] / 2^level per beta, from the
/// aggregated tree.
inline std::vector<SweepPoint<Rational>> mean_growth_sweep_exact(
    const std::vector<Rational>& betas, int level, const Rational& x0, const Rational& x1,
    const EnumerateLimits& limits = EnumerateLimits::from_env(), int partitions = 1) {
  std::vector<SweepPoint<Rational>> out;
  out.reserve(betas.size());
  for (const auto& beta : betas) {
    const auto rows = enumerate_rows(x0, x1, beta, level, limits, partitions);
    out.push_back(SweepPoint<Rational>{beta, level, rows.back().mean_abs, SweepMode::exact});
  }
  return out;
}

/// Sampled fixed-level means of |x_level| over random sign paths, in the
/// tree's scaling so it estimates the exact sweep.
inline std::vector<McSweepPoint> mean_growth_sweep_mc(const std::vector<double>& betas,
                                                      int level, std::uint32_t samples,
                                                      std::uint64_t rng_seed,
                                                      double x0 = 1.0, double x1 = 1.0,
                                                      int threads = 1) {
  if (level < 0) throw InvalidInputError("level must be nonnegative");
  if (samples < 1) throw InvalidInputError("samples must be at least 1");
  std::vector<McSweepPoint> out;
  out.reserve(betas.size());
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const double beta = betas[bi];
    std::vector<double> values(samples);
    detail::run_indexed(samples, threads, [&](std::uint32_t t) {
      SplitMix64 rng(SplitMix64::mix(rng_seed + 0x632BE59BD9B4E019ULL * bi), t);
      double prev = x0, curr = x1;
      for (int i = 0; i < level; ++i) {
        const double sign = rng.next_bit() ? 1.0 : -1.0;
        const double next = sign * beta * curr + prev;
        prev = curr;
        curr = next;
      }
      values[t] = std::fabs(curr);
    });
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= samples;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double se = samples > 1 ? std::sqrt(var / (samples - 1)) / std::sqrt(double(samples))
                                  : 0.0;
    out.push_back(McSweepPoint{beta, level, mean, se});
  }
  return out;
}

struct CrossingResult {
  double crossing = 0;
  double gamma_lo = 0;  // gamma at the initial bracket ends
  double gamma_hi = 0;
  int iterations = 0;
  std::vector<std::pair<double, double>> evaluations;  // (beta, gamma) in order
};

/// Bisection on the sign of gamma. The initial bracket must straddle the
/// transition; each endpoint is evaluated with the same MC configuration.
inline CrossingResult growth_sign_crossing(double beta_lo, double beta_hi, double tol,
                                           const McConfig& cfg) {
  if (!(beta_lo < beta_hi)) throw InvalidInputError("bracket must satisfy lo < hi");
  if (tol <= 0) throw InvalidInputError("tolerance must be positive");

  CrossingResult res;
  double glo = lyapunov_mc(beta_lo, cfg).gamma;
  double ghi = lyapunov_mc(beta_hi, cfg).gamma;
  res.gamma_lo = glo;
  res.gamma_hi = ghi;
  res.evaluations.push_back({beta_lo, glo});
  res.evaluations.push_back({beta_hi, ghi});
  if ((glo < 0) == (ghi < 0))
    throw InvalidInputError("gamma has the same sign at both bracket ends");

  while (beta_hi - beta_lo > tol) {
    const double mid = 0.5 * (beta_lo + beta_hi);
    const double gmid = lyapunov_mc(mid, cfg).gamma;
    res.evaluations.push_back({mid, gmid});
    ++res.iterations;
    if ((gmid < 0) == (glo < 0)) {
      beta_lo = mid;
      glo = gmid;
    } else {
      beta_hi = mid;
      ghi = gmid;
    }
  }
  res.crossing = 0.5 * (beta_lo + beta_hi);
  return res;
}

}  // namespace randfib
