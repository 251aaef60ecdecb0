#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "emgraph/nat.hpp"

namespace emgraph {

/// How hard factor() tries before leaving a composite cofactor behind.
struct EffortPolicy {
  std::uint32_t trial_bound = 10'000;
  std::uint64_t rho_iterations = 200'000;
  std::uint32_t ecm_curves = 400;
  std::uint64_t ecm_b1 = 50'000;
  double time_budget = 0.0;  // seconds; 0 = unlimited

  // Stable across platforms; used to tag checkpoints.
  std::string fingerprint() const;
  bool operator==(const EffortPolicy&) const = default;
};

struct PrimePower {
  Nat prime;
  unsigned exponent = 1;
  bool operator==(const PrimePower&) const = default;
};

/// input = prod(prime^exponent) * cofactor. A cofactor > 1 is a proven
/// composite that the effort policy could not split.
struct Factorization {
  Nat input = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes
  Nat cofactor = 1;

  bool complete() const { return cofactor == 1; }
  std::size_t omega() const { return factors.size(); }
  bool squarefree() const;  // only meaningful when complete()
  std::vector<Nat> primes() const;
};

/// Known nontrivial splits of hard composites, optionally persisted to a text
/// file with one `composite=factor,factor,...` entry per line. Reads may run
/// concurrently; appends are serialized.
class FactorCache {
 public:
  FactorCache() = default;
  explicit FactorCache(std::filesystem::path path);

  FactorCache(const FactorCache&) = delete;
  FactorCache& operator=(const FactorCache&) = delete;

  std::optional<std::vector<Nat>> lookup(const Nat& composite) const;

  // Validates the factors; appends to the backing file when one is open.
  void record(const Nat& composite, const std::vector<Nat>& factors);

  std::size_t size() const;

  // Parses one cache line. Throws FormatError on malformed input.
  static std::pair<Nat, std::vector<Nat>> parse_line(const std::string& line);
  static std::string format_line(const Nat& composite, const std::vector<Nat>& factors);

 private:
  void insert_locked(const Nat& composite, const std::vector<Nat>& factors);

  mutable std::shared_mutex mutex_;
  std::map<Nat, std::vector<Nat>> entries_;
  std::optional<std::filesystem::path> path_;
};

/// Trial division, then Pollard-Brent rho, then ECM, recursively on every
/// extracted piece. Consults and updates `cache` when given.
Factorization factor(const Nat& n, const EffortPolicy& policy = {},
                     FactorCache* cache = nullptr);

/// Least prime factor, or nullopt when the policy cannot certify it.
std::optional<Nat> least_prime_factor(const Nat& n, const EffortPolicy& policy = {},
                                      FactorCache* cache = nullptr);

// The individual splitting methods, exposed for testing. Each returns a
// nontrivial divisor of the odd composite n, or nullopt.
std::optional<Nat> pollard_brent(const Nat& n, std::uint64_t max_iterations,
                                 std::uint64_t seed = 1);
std::optional<Nat> ecm_one_curve(const Nat& n, std::uint64_t b1, std::uint64_t sigma);

}  // namespace emgraph
