#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "emgraph/arith.hpp"
#include "emgraph/graph.hpp"

using namespace emgraph;

namespace {

std::vector<std::size_t> counts(const BfsResult& r) {
  std::vector<std::size_t> out;
  for (const auto& s : r.summaries) out.push_back(s.node_count);
  return out;
}

void check_node(const Node& n) {
  Nat v = n.root;
  std::set<Nat> seen;
  for (const auto& p : n.edges) {
    CHECK(seen.insert(p).second);
    Nat g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), n.root.get_mpz_t());
    CHECK(g == 1);
    v *= p;
  }
  CHECK(v == n.value);
  CHECK(verify_path(n.root, n.edges));
}

}  // namespace

TEST_CASE("expand_node") {
  Node one = Node::make_root(1);
  auto c = expand_node(one, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0].value == 2);
  CHECK(c[0].edges == std::vector<Nat>{2});

  Node n = Node::make_root(1806);
  auto kids = expand_node(n, {});
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].value == 1806 * 13);
  CHECK(kids[1].value == 1806 * 139);
  CHECK(n.complete);

  Node two = Node::make_root(2);
  auto k2 = expand_node(two, {});
  REQUIRE(k2.size() == 1);
  CHECK(k2[0].value == 6);
}

TEST_CASE("bfs_levels shallow counts") {
  auto r = bfs_levels(1, 7, {});
  CHECK(counts(r) == std::vector<std::size_t>{1, 1, 1, 1, 1, 2, 4, 9});
  for (const auto& s : r.summaries) CHECK(s.composite_count == 0);
  for (const auto& level : r.levels) {
    for (const auto& n : level) check_node(n);
  }
  auto r2 = bfs_levels(2, 1, {});
  CHECK(r2.summaries.back().node_count == 1);
  CHECK(r2.levels.back()[0].value == 6);
}

TEST_CASE("bfs_levels is independent of worker count") {
  BfsOptions par;
  par.workers = 4;
  auto a = bfs_levels(1, 8, {});
  auto b = bfs_levels(1, 8, {}, nullptr, par);
  CHECK(a.summaries == b.summaries);
  REQUIRE(a.levels.size() == b.levels.size());
  for (std::size_t l = 0; l < a.levels.size(); ++l) CHECK(a.levels[l] == b.levels[l]);
  CHECK(a.summaries.back().node_count == 24);
}

TEST_CASE("bfs_levels resumes from a checkpoint") {
  auto path = std::filesystem::temp_directory_path() / "emgraph_bfs_cp.jsonl";
  std::filesystem::remove(path);
  BfsOptions opts;
  opts.checkpoint = path;
  auto first = bfs_levels(1, 5, {}, nullptr, opts);
  CHECK(std::filesystem::exists(path));
  auto resumed = bfs_levels(1, 8, {}, nullptr, opts);
  auto fresh = bfs_levels(1, 8, {});
  CHECK(resumed.summaries == fresh.summaries);
  CHECK(resumed.levels == fresh.levels);
  CHECK_THROWS(bfs_levels(2, 3, {}, nullptr, opts));
  std::filesystem::remove(path);
}

TEST_CASE("incomplete nodes are retried after the cache grows") {
  // 1807 = 13 * 139 cannot be split by trial division to 10 without rho.
  EffortPolicy weak;
  weak.trial_bound = 10;
  weak.rho_iterations = 0;
  weak.ecm_curves = 0;
  auto path = std::filesystem::temp_directory_path() / "emgraph_bfs_retry.jsonl";
  std::filesystem::remove(path);
  BfsOptions opts;
  opts.checkpoint = path;
  auto partial = bfs_levels(1, 5, weak, nullptr, opts);
  CHECK(partial.summaries[5].composite_count == 1);
  CHECK(partial.summaries[5].node_count == 0);
  FactorCache cache;
  cache.record(1807, {13, 139});
  auto fixed = bfs_levels(1, 5, weak, &cache, opts);
  CHECK(fixed.summaries[5].node_count == 2);
  CHECK(fixed.summaries[5].composite_count == 0);
  std::filesystem::remove(path);
}

TEST_CASE("bounded_explore") {
  auto values = [](const std::vector<Node>& ns) {
    std::set<Nat> out;
    for (const auto& n : ns) out.insert(n.value);
    return out;
  };
  CHECK(values(bounded_explore({Node::make_root(1)}, 5, 3)) == std::set<Nat>{1, 2, 6});
  CHECK(values(bounded_explore({Node::make_root(1)}, 3, 10)) == std::set<Nat>{1, 2, 6});
  CHECK(values(bounded_explore({Node::make_root(1)}, 2, 1)) == std::set<Nat>{1, 2});

  ExploreStats stats = bounded_explore({Node::make_root(1)}, 1 << 12, 12, [](const Node& n) {
    check_node(n);
    for (const auto& p : n.edges) CHECK(p <= (1 << 12));
  });
  CHECK(stats.nodes > 10);
  for (const auto& c : stats.collisions) CHECK(equivalent(PrimeTuple(c.first.edges), PrimeTuple(c.second.edges)));

  auto capped = bounded_explore({Node::make_root(1)}, 1 << 12, 12, {}, 1);
  CHECK(capped.truncated);
}

TEST_CASE("collisions from a loop base") {
  // 19 is the start of the (2,3,5) loop: both orders reach 19 * 30.
  auto stats = bounded_explore({Node::make_root(19)}, 7, 3, {});
  REQUIRE(stats.collisions.size() == 1);
  CHECK(stats.collisions[0].first.value == 19 * 30);
  CHECK(equivalent(PrimeTuple(stats.collisions[0].first.edges),
                   PrimeTuple(stats.collisions[0].second.edges)));
}

TEST_CASE("watch_hits") {
  std::vector<ResidueClass> w = {{19, 30}, {1125513, 2813785}};
  CHECK(watch_matches(Node::make_root(19), w).size() == 1);
  CHECK(watch_matches(Node::make_root(20), w).empty());
  CHECK(watch_matches(Node::make_root(1125513 + 2813785), w).size() == 1);
  auto hits = watch_hits({Node::make_root(19), Node::make_root(20), Node::make_root(49)}, w);
  REQUIRE(hits.size() == 2);
  CHECK(hits[1].node.value == 49);
}

TEST_CASE("verify_path") {
  CHECK(verify_path(1, {2, 3, 7, 43, 13}));
  CHECK_FALSE(verify_path(1, {2, 5}));
  CHECK(verify_path(1, {}));
  CHECK_FALSE(verify_path(1, {2, 3, 7, 43, 13, 13}));
  CHECK(verify_path(19, {2, 3, 5}));
  CHECK(verify_path(19, {5, 3, 2}));
}

TEST_CASE("two-path nodes") {
  auto rep = verify_theorem_main();
  CHECK(rep.passed());
  for (const auto& c : rep.checks) CHECK_MESSAGE(c.passed, c.name);
  for (const auto& primes : two_path_nodes()) {
    for (const auto& p : primes) CHECK(is_prime(p));
  }
}

TEST_CASE("euclid_mullin") {
  auto least = euclid_mullin(1, 9, {}, EmRule::Least);
  std::vector<Nat> expect = {2, 3, 7, 43, 13, 53, 5, 6221671};
  REQUIRE(least.size() == 9);
  CHECK(std::vector<Nat>(least.begin(), least.begin() + 8) == expect);
  // Term 9 is 1 + the product of the first eight terms; confirm primality by
  // trial division to the square root.
  Nat n9 = product(expect) + 1;
  CHECK(least[8] == n9);
  auto small = to_u64(n9).value();
  bool prime = true;
  for (std::uint64_t d = 2; d * d <= small; ++d) {
    if (small % d == 0) {
      prime = false;
      break;
    }
  }
  CHECK(prime);
  CHECK(euclid_mullin(1, 6, {}, EmRule::Largest) == std::vector<Nat>{2, 3, 7, 43, 139, 50207});
}

TEST_CASE("euclid_mullin follows the smallest-edge branch of the graph") {
  auto levels = bfs_levels(1, 8, {}).levels;
  auto seq = euclid_mullin(1, 8, {}, EmRule::Least);
  Nat value = 1;
  for (std::size_t l = 1; l <= 8; ++l) {
    const Node* best = nullptr;
    for (const auto& n : levels[l]) {
      if (n.value / n.edges.back() != value) continue;
      if (!best || n.edges.back() < best->edges.back()) best = &n;
    }
    REQUIRE(best != nullptr);
    CHECK(best->edges.back() == seq[l - 1]);
    value = best->value;
  }
}

TEST_CASE("unique chains") {
  CHECK(has_unique_chain(Node::make_root(1), 4));
  CHECK_FALSE(has_unique_chain(Node::make_root(1), 5));
  CHECK(has_unique_chain(Node::make_root(6), 1));
  CHECK_FALSE(has_unique_chain(Node::make_root(1806), 1));
  auto out = unique_chain_scan({Node::make_root(1), Node::make_root(1806), Node::make_root(6)}, 1);
  CHECK(out.size() == 2);
}

TEST_CASE("growth model") {
  auto one = simulate_growth_model(1, 5, 1, 1.5);
  for (double r : one.ratios) {
    CHECK(std::isfinite(r));
    CHECK(r > 0);
  }
  auto a = simulate_growth_model(2000, 4, 42);
  auto b = simulate_growth_model(2000, 4, 42);
  CHECK(a.ratios == b.ratios);
  CHECK(a.mean == b.mean);
  auto c = simulate_growth_model(2000, 4, 43);
  CHECK(a.ratios != c.ratios);
  CHECK(a.ratios.size() == 4);
}
