#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "emgraph/factor.hpp"
#include "emgraph/nat.hpp"
#include "emgraph/tuples.hpp"

namespace emgraph {

/// A node of the graph rooted at `root`, reached along `edges`.
struct Node {
  Nat root = 1;
  std::vector<Nat> edges;
  Nat value = 1;  // root * product(edges)
  bool complete = true;

  std::size_t level() const { return edges.size(); }
  static Node make_root(const Nat& root);
  Node child(const Nat& p) const;

  bool operator==(const Node&) const = default;
};

/// One child per distinct prime factor of value + 1, ordered by prime. A
/// partial factorization yields children for the known primes only and marks
/// `v` incomplete.
std::vector<Node> expand_node(Node& v, const EffortPolicy& policy, FactorCache* cache = nullptr);

struct LevelSummary {
  std::size_t level = 0;
  std::size_t node_count = 0;
  // Nodes at the level above whose successor list could not be completed.
  std::size_t composite_count = 0;

  bool operator==(const LevelSummary&) const = default;
};

struct BfsOptions {
  std::optional<std::filesystem::path> checkpoint;
  unsigned workers = 1;
  std::function<void(const LevelSummary&)> on_level;
};

struct BfsResult {
  std::vector<LevelSummary> summaries;
  std::vector<std::vector<Node>> levels;  // sorted by value
};

/// Level-by-level expansion with deduplication by value. With a checkpoint
/// path, resumes from it when present and rewrites it after every level.
BfsResult bfs_levels(const Nat& root, std::size_t max_level, const EffortPolicy& policy,
                     FactorCache* cache = nullptr, const BfsOptions& options = {});

/// Same value reached along two different edge orders.
struct Collision {
  Node first;
  Node second;
};

struct ExploreStats {
  std::size_t nodes = 0;
  std::vector<Collision> collisions;
  bool truncated = false;  // some level was cut at level_cap
};

using NodeSink = std::function<void(const Node&)>;

/// Follows only edges p <= bound, found by trial division of value + 1.
/// Each level is deduplicated by value and visited in increasing value
/// order; level_cap > 0 keeps only that many of the smallest values.
ExploreStats bounded_explore(const std::vector<Node>& roots, std::uint64_t bound,
                             std::size_t max_level, const NodeSink& sink,
                             std::size_t level_cap = 0);
std::vector<Node> bounded_explore(const std::vector<Node>& roots, std::uint64_t bound,
                                  std::size_t max_level);

struct WatchHit {
  Node node;
  ResidueClass cls;
};

std::vector<ResidueClass> watch_matches(const Node& node, const std::vector<ResidueClass>& watch);
std::vector<WatchHit> watch_hits(const std::vector<Node>& nodes,
                                 const std::vector<ResidueClass>& watch);

/// p_1 | n + 1, p_2 | p_1 n + 1, ..., with distinct primes.
bool verify_path(const Nat& n, const std::vector<Nat>& primes);

struct VerificationCheck {
  std::string name;
  bool passed = false;
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;
  bool passed() const;
};

/// Checks the two level-21 nodes of G_1 that are reached by two paths each.
VerificationReport verify_theorem_main();

// The two nodes' edge primes in their stated order.
const std::vector<std::vector<Nat>>& two_path_nodes();

enum class EmRule { Least, Largest };

/// Euclid-Mullin style sequence from n. Stops early, returning the terms found
/// so far, when a step cannot be factored within the policy.
std::vector<Nat> euclid_mullin(const Nat& n, std::size_t steps, const EffortPolicy& policy,
                               EmRule rule, FactorCache* cache = nullptr);

/// True when value + 1 is prime at each of the next ell steps.
bool has_unique_chain(const Node& node, std::size_t ell);
std::vector<Node> unique_chain_scan(const std::vector<Node>& nodes, std::size_t ell);

struct GrowthStats {
  std::vector<double> ratios;  // y_kmax / sqrt(2 kmax), one per trial
  double mean = 0;
  double stddev = 0;
};

/// Random model n_{k+1} = n_k exp(log(n_k + 1)^theta), theta uniform on
/// [0, 1], tracked as y = log log n. log_n0 is log n_0; 0 means n_0 = 1.
GrowthStats simulate_growth_model(std::size_t k_max, std::size_t trials, std::uint64_t seed,
                                  double log_n0 = 0);

}  // namespace emgraph
