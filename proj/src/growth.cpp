#include <cmath>
#include <random>

#include "emgraph/graph.hpp"

namespace emgraph {

namespace {

// Switch from tracking L = log n to y = log L once log(n + 1) ~ L exactly in
// double precision.
constexpr double kLogSpaceLimit = 700.0;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

GrowthStats simulate_growth_model(std::size_t k_max, std::size_t trials, std::uint64_t seed,
                                  double log_n0) {
  if (k_max < 1 || trials < 1) {
    throw std::invalid_argument("simulate_growth_model: k_max and trials must be positive");
  }
  GrowthStats stats;
  std::mt19937_64 rng(seed);
  const double scale = std::sqrt(2.0 * static_cast<double>(k_max));
  for (std::size_t t = 0; t < trials; ++t) {
    double big_l = log_n0;
    std::size_t k = 0;
    for (; k < k_max && big_l < kLogSpaceLimit; ++k) {
      double theta = uniform01(rng);
      // log(n + 1) = L + log1p(e^-L)
      double log_succ = big_l + std::log1p(std::exp(-big_l));
      big_l += std::pow(log_succ, theta);
    }
    double y = std::log(big_l);
    for (; k < k_max; ++k) {
      double theta = uniform01(rng);
      y += std::log1p(std::exp((theta - 1.0) * y));
    }
    stats.ratios.push_back(y / scale);
  }
  double sum = 0;
  for (double r : stats.ratios) sum += r;
  stats.mean = sum / static_cast<double>(trials);
  double ss = 0;
  for (double r : stats.ratios) ss += (r - stats.mean) * (r - stats.mean);
  stats.stddev = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
  return stats;
}

}  // namespace emgraph
