// Statistics helpers for the Monte Carlo layers: Wilson intervals,
// chi-square goodness of fit, and deterministic multi-stream fan-out.
#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <thread>

#include "cpfq/numeric.hpp"
#include "cpfq/rng.hpp"

namespace cpfq {

struct WilsonCI {
  double low, high, point;
};

/// Two-sided Wilson score interval; z = 2.5758... is the 99% level.
inline WilsonCI wilson_ci(u64 successes, u64 trials,
                          double z = 2.5758293035489004) {
  if (trials == 0) throw error("wilson_ci: zero trials");
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half), p};
}

/// P(chi2_dof >= stat).
inline double chi_square_pvalue(double stat, u32 dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Chi-square uniformity p-value for observed cell counts.
inline double chi_square_uniform_pvalue(const std::vector<u64>& counts) {
  u64 total = 0;
  for (u64 c : counts) total += c;
  double expect = static_cast<double>(total) / counts.size();
  double stat = 0;
  for (u64 c : counts) {
    double d = static_cast<double>(c) - expect;
    stat += d * d / expect;
  }
  return chi_square_pvalue(stat, static_cast<u32>(counts.size()) - 1);
}

/// Run `trials` Bernoulli experiments across a fixed number of seeded
/// streams and sum the successes. The stream partition is independent of
/// hardware, so results are byte-reproducible; streams run on threads.
template <class PerTrial>
u64 run_streams(u64 trials, u64 seed, PerTrial&& fn, u32 streams = 8) {
  std::vector<u64> counts(streams, 0);
  std::vector<std::thread> pool;
  u32 hw = std::max(1u, std::thread::hardware_concurrency());
  u32 active = std::min(streams, hw);
  std::vector<u64> stream_trials(streams, trials / streams);
  for (u64 i = 0; i < trials % streams; ++i) stream_trials[i]++;
  auto work = [&](u32 s0) {
    for (u32 s = s0; s < streams; s += active) {
      Rng rng = Rng::stream(seed, s);
      u64 hits = 0;
      for (u64 t = 0; t < stream_trials[s]; ++t)
        if (fn(rng)) ++hits;
      counts[s] = hits;
    }
  };
  for (u32 t = 1; t < active; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

}  // namespace cpfq
