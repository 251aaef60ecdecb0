#include "emgraph/graph.hpp"

#include <algorithm>
#include <set>

#include "emgraph/arith.hpp"

namespace emgraph {

bool verify_path(const Nat& n, const std::vector<Nat>& primes) {
  std::set<Nat> seen;
  Nat value = n;
  for (const auto& p : primes) {
    if (!seen.insert(p).second || !is_prime(p)) return false;
    if (!mpz_divisible_p(Nat(value + 1).get_mpz_t(), p.get_mpz_t())) return false;
    value *= p;
  }
  return true;
}

bool VerificationReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const VerificationCheck& c) { return c.passed; });
}

const std::vector<std::vector<Nat>>& two_path_nodes() {
  static const std::vector<std::vector<Nat>> nodes = [] {
    const std::vector<std::vector<const char*>> digits = {
        {"2", "3", "7", "43", "139", "50207", "1607", "38891", "71609249149971437", "104851",
         "5914302068415095755097398828253214149923", "103",
         "1750880132687750604376675981842334069", "103451", "193", "22133",
         "5587528960270206397663051", "73", "5", "13", "593"},
        {"2", "3", "7", "43", "139", "50207", "23", "217733", "4024572619121", "539402497343",
         "72208156847017648587223", "79",
         "7269452239696911635939429787229069136737446558564286318153183", "8689", "107",
         "2895777621755988962510175673615781760909999040975810951", "531543631", "73", "5",
         "13", "593"},
    };
    std::vector<std::vector<Nat>> out;
    for (const auto& row : digits) {
      std::vector<Nat> primes;
      for (const char* d : row) primes.push_back(parse_nat(d));
      out.push_back(std::move(primes));
    }
    return out;
  }();
  return nodes;
}

namespace {

std::vector<Nat> swapped(std::vector<Nat> primes, unsigned long a, unsigned long b) {
  auto ia = std::find(primes.begin(), primes.end(), Nat(a));
  auto ib = std::find(primes.begin(), primes.end(), Nat(b));
  if (ia != primes.end() && ib != primes.end()) std::iter_swap(ia, ib);
  return primes;
}

}  // namespace

VerificationReport verify_theorem_main() {
  VerificationReport rep;
  const PrimeTuple block{73, 5, 13, 593};
  const ResidueClass block_class = residue_class(block);
  const std::set<Nat> listed = {Nat(1125513), Nat(1861426)};

  int index = 0;
  for (const auto& stated : two_path_nodes()) {
    std::string tag = "node " + std::to_string(++index) + ": ";
    auto other = swapped(stated, 73, 593);
    rep.checks.push_back({tag + "21 edge primes", stated.size() == 21});
    rep.checks.push_back({tag + "stated order is a path from 1", verify_path(1, stated)});
    rep.checks.push_back({tag + "73/593 swapped order is a path from 1", verify_path(1, other)});
    rep.checks.push_back({tag + "swapped order is a distinct tuple with the same value",
                          other != stated && product(other) == product(stated)});

    bool block_ok = stated.size() >= 4;
    if (block_ok) {
      std::vector<Nat> tail(stated.end() - 4, stated.end());
      std::vector<Nat> base(stated.begin(), stated.end() - 4);
      std::vector<Nat> sorted_tail = tail;
      std::sort(sorted_tail.begin(), sorted_tail.end());
      Nat n = product(base);
      block_ok = sorted_tail == std::vector<Nat>{5, 13, 73, 593} &&
                 PrimeTuple(tail) == block && block_class.contains(n) &&
                 listed.count(block_class.a) == 1 && equivalent(block, PrimeTuple(swapped(tail, 73, 593)));
    }
    rep.checks.push_back({tag + "level-17 node starts the (5,13,73,593) loop", block_ok});
    rep.checks.push_back(
        {tag + "5/13 swapped order is rejected", !verify_path(1, swapped(stated, 5, 13))});
  }
  return rep;
}

std::vector<Nat> euclid_mullin(const Nat& n, std::size_t steps, const EffortPolicy& policy,
                               EmRule rule, FactorCache* cache) {
  std::vector<Nat> terms;
  Nat prod = n;
  for (std::size_t i = 0; i < steps; ++i) {
    Nat next = prod + 1;
    Nat term;
    if (rule == EmRule::Least) {
      auto lpf = least_prime_factor(next, policy, cache);
      if (!lpf) break;
      term = *lpf;
    } else {
      auto fz = factor(next, policy, cache);
      if (!fz.complete() || fz.factors.empty()) break;
      term = fz.factors.back().prime;
    }
    terms.push_back(term);
    prod *= term;
  }
  return terms;
}

bool has_unique_chain(const Node& node, std::size_t ell) {
  Nat value = node.value;
  for (std::size_t i = 0; i < ell; ++i) {
    Nat succ = value + 1;
    if (!is_prime(succ)) return false;
    value *= succ;
  }
  return true;
}

std::vector<Node> unique_chain_scan(const std::vector<Node>& nodes, std::size_t ell) {
  if (ell < 1) throw std::invalid_argument("unique_chain_scan: ell must be at least 1");
  std::vector<Node> out;
  for (const auto& n : nodes) {
    if (has_unique_chain(n, ell)) out.push_back(n);
  }
  return out;
}

}  // namespace emgraph
