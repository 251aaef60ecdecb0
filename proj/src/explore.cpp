#include "emgraph/graph.hpp"

#include <map>

#include "emgraph/arith.hpp"

namespace emgraph {

namespace {

// Primes <= bound packed into groups whose product fits in 64 bits, so one
// bignum remainder serves several primes.
struct PrimeGroups {
  std::vector<std::uint64_t> products;
  std::vector<std::vector<std::uint32_t>> members;

  explicit PrimeGroups(std::uint64_t bound) {
    if (bound > UINT32_MAX) throw std::invalid_argument("explore bound must be below 2^32");
    std::uint64_t prod = 1;
    std::vector<std::uint32_t> group;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(bound))) {
      if (prod > UINT64_MAX / p) {
        products.push_back(prod);
        members.push_back(std::move(group));
        group.clear();
        prod = 1;
      }
      prod *= p;
      group.push_back(p);
    }
    if (!group.empty()) {
      products.push_back(prod);
      members.push_back(std::move(group));
    }
  }

  std::vector<std::uint32_t> small_divisors(const Nat& n) const {
    std::vector<std::uint32_t> out;
    for (std::size_t g = 0; g < products.size(); ++g) {
      std::uint64_t r = mpz_fdiv_ui(n.get_mpz_t(), products[g]);
      for (std::uint32_t p : members[g]) {
        if (r % p == 0) out.push_back(p);
      }
    }
    return out;
  }
};

}  // namespace

ExploreStats bounded_explore(const std::vector<Node>& roots, std::uint64_t bound,
                             std::size_t max_level, const NodeSink& sink,
                             std::size_t level_cap) {
  if (bound < 2) throw std::invalid_argument("explore bound must be at least 2");
  PrimeGroups groups(bound);
  ExploreStats stats;

  std::map<Nat, Node> frontier;
  auto add = [&](std::map<Nat, Node>& level, Node n) {
    auto it = level.find(n.value);
    if (it == level.end()) {
      Nat key = n.value;
      level.emplace(std::move(key), std::move(n));
      return;
    }
    if (it->second.root == n.root && it->second.edges != n.edges) {
      stats.collisions.push_back({it->second, n});
    }
    if (n.root == it->second.root && n.edges < it->second.edges) it->second = std::move(n);
  };
  for (const auto& r : roots) add(frontier, r);

  while (!frontier.empty()) {
    if (level_cap > 0 && frontier.size() > level_cap) {
      stats.truncated = true;
      auto cut = frontier.begin();
      std::advance(cut, static_cast<std::ptrdiff_t>(level_cap));
      frontier.erase(cut, frontier.end());
    }
    std::map<Nat, Node> next;
    for (const auto& [value, node] : frontier) {
      ++stats.nodes;
      if (sink) sink(node);
      if (node.level() >= max_level) continue;
      Nat succ = node.value + 1;
      for (std::uint32_t p : groups.small_divisors(succ)) add(next, node.child(Nat(p)));
    }
    frontier = std::move(next);
  }
  return stats;
}

std::vector<Node> bounded_explore(const std::vector<Node>& roots, std::uint64_t bound,
                                  std::size_t max_level) {
  std::vector<Node> out;
  bounded_explore(roots, bound, max_level, [&](const Node& n) { out.push_back(n); });
  return out;
}

std::vector<ResidueClass> watch_matches(const Node& node, const std::vector<ResidueClass>& watch) {
  std::vector<ResidueClass> out;
  for (const auto& c : watch) {
    if (c.contains(node.value)) out.push_back(c);
  }
  return out;
}

std::vector<WatchHit> watch_hits(const std::vector<Node>& nodes,
                                 const std::vector<ResidueClass>& watch) {
  std::vector<WatchHit> out;
  for (const auto& n : nodes) {
    for (auto& c : watch_matches(n, watch)) out.push_back({n, std::move(c)});
  }
  return out;
}

}  // namespace emgraph
