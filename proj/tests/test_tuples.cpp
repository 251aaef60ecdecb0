#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "emgraph/arith.hpp"
#include "emgraph/errors.hpp"
#include "emgraph/tuples.hpp"
#include "tables.hpp"

using namespace emgraph;

namespace {

// P ~ Q straight from the congruence definition: for each prime, the product
// of the primes before it in P and the product before it in Q agree mod it.
bool equivalent_by_congruence(const PrimeTuple& p, const PrimeTuple& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto where = std::find(q.primes().begin(), q.primes().end(), p[i]);
    if (where == q.primes().end()) return false;
    std::size_t j = static_cast<std::size_t>(where - q.primes().begin());
    Nat diff = p.prefix_product(i) - q.prefix_product(j);
    if (!mpz_divisible_p(diff.get_mpz_t(), p[i].get_mpz_t())) return false;
  }
  return true;
}

bool on_path(const Nat& n, const PrimeTuple& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    Nat v = p.prefix_product(i) * n + 1;
    if (!mpz_divisible_p(v.get_mpz_t(), p[i].get_mpz_t())) return false;
  }
  return true;
}

std::vector<PrimeTuple> orderings(std::vector<Nat> primes) {
  std::sort(primes.begin(), primes.end());
  std::vector<PrimeTuple> out;
  do out.push_back(PrimeTuple::trusted(primes));
  while (std::next_permutation(primes.begin(), primes.end()));
  return out;
}

std::vector<Nat> random_primes(std::mt19937_64& rng, std::size_t k, std::uint32_t bound) {
  auto ps = primes_up_to(bound);
  std::vector<Nat> out;
  while (out.size() < k) {
    Nat p = ps[rng() % ps.size()];
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("PrimeTuple validation") {
  CHECK_THROWS_AS(PrimeTuple({2, 3, 2}), InvalidTuple);
  CHECK_THROWS_AS(PrimeTuple({2, 4}), InvalidTuple);
  PrimeTuple p{2, 3, 5};
  CHECK(p.modulus() == 30);
  CHECK(p.prefix_product(0) == 1);
  CHECK(p.prefix_product(2) == 6);
  CHECK(p.to_string() == "(2,3,5)");
  CHECK(PrimeTuple{2, 3, 5} < PrimeTuple{3, 2, 5});
  CHECK(reverse(p) == PrimeTuple{5, 3, 2});
}

TEST_CASE("Permutation") {
  Permutation pi({2, 0, 1});
  PrimeTuple p{2, 3, 5};
  CHECK(pi.apply(p) == PrimeTuple{3, 5, 2});
  CHECK(pi.inverse().apply(pi.apply(p)) == p);
  CHECK(Permutation::reversal(3).apply(p) == reverse(p));
  CHECK(Permutation::identity(4).is_identity());
  CHECK_THROWS(Permutation({0, 0, 1}));
}

TEST_CASE("residue_class on published triples") {
  for (const auto& row : fixtures::kTriples) {
    PrimeTuple p(std::vector<Nat>(row.p.begin(), row.p.end()));
    auto rc = residue_class(p);
    CHECK(rc.m == parse_nat(row.modulus));
    CHECK(rc.a == parse_nat(row.a));
    CHECK(on_path(rc.a, p));
    CHECK(on_path(rc.a + rc.m, p));
    CHECK(equivalent(p, reverse(p)));
    CHECK(multiplicity(p) == 2);
    CHECK(is_irreducible_pair(p, reverse(p)));
  }
}

TEST_CASE("residue_class is exactly the set of valid starts") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto primes = random_primes(rng, 1 + rng() % 3, 30);
    PrimeTuple p(primes);
    auto rc = residue_class(p);
    for (Nat n = 0; n < 3 * p.modulus(); ++n) CHECK(on_path(n, p) == rc.contains(n));
  }
}

TEST_CASE("equivalence matches the congruence definition") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    auto all = orderings(random_primes(rng, 3 + rng() % 3, 60));
    for (const auto& p : all) {
      std::size_t count = 0;
      for (const auto& q : all) {
        bool eq = equivalent_by_congruence(p, q);
        REQUIRE(equivalent(p, q) == eq);
        count += eq;
      }
      CHECK(multiplicity(p) == count);
      auto cls = equivalence_class(p);
      CHECK(cls.size() == count);
      CHECK(std::is_sorted(cls.begin(), cls.end()));
      for (const auto& q : cls) CHECK(equivalent_by_congruence(p, q));
    }
  }
  CHECK_FALSE(equivalent(PrimeTuple{2, 3, 5}, PrimeTuple{2, 3, 7}));
}

TEST_CASE("irreducibility") {
  // Shares the prefix {7}, so the pair splits at length 1.
  PrimeTuple p{7, 2, 3, 5}, q{7, 5, 3, 2};
  CHECK(equivalent(p, q));
  CHECK_FALSE(is_irreducible_pair(p, q));
  CHECK(is_irreducible_pair(PrimeTuple{2, 5, 7, 3}, PrimeTuple{3, 7, 2, 5}));
  CHECK_FALSE(is_irreducible_pair(p, p));
}

TEST_CASE("multiplicity limits") {
  std::vector<Nat> eleven;
  for (auto p : primes_up_to(31)) eleven.push_back(p);
  CHECK_THROWS_AS(multiplicity(PrimeTuple(eleven)), TupleTooLong);
  CHECK(multiplicity(PrimeTuple{2}) == 1);
}

TEST_CASE("pair records") {
  auto r = make_pair_record(PrimeTuple{5, 3, 2}, PrimeTuple{2, 3, 5}, PairKind::Triple);
  CHECK(r.p == PrimeTuple{2, 3, 5});
  CHECK(r.q == PrimeTuple{5, 3, 2});
  CHECK(r.modulus == 30);
  REQUIRE(r.residues.size() == 1);
  CHECK(r.residues[0].a == 19);
  CHECK(r.irreducible);
  for (auto k : {PairKind::Triple, PairKind::QuadrupleI, PairKind::QuadrupleII,
                 PairKind::QuadrupleIII, PairKind::QuadrupleIV, PairKind::General}) {
    CHECK(pair_kind_from_string(to_string(k)) == k);
  }
  CHECK(to_string(PairKind::QuadrupleIII) == "quadruple-case-III");
  CHECK_THROWS_AS(pair_kind_from_string("pentuple"), FormatError);
}
