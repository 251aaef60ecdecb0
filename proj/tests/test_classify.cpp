#include <doctest.h>

#include <set>

#include "emgraph/arith.hpp"
#include "emgraph/classify.hpp"
#include "emgraph/errors.hpp"
#include "tables.hpp"

using namespace emgraph;

namespace {

bool divides(const Int& d, const Int& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// The triple congruences on integers, read with |p_i| as the modulus.
bool is_integer_solution(const IntTriple& t) {
  if (t.p1 == 0 || t.p2 == 0 || t.p3 == 0) return false;
  Int lhs = t.p2 * (t.p1 + t.p3) - 1;
  return divides(t.p1 * t.p3, lhs) && divides(t.p2, t.p1 - t.p3);
}

Int fib_reference(long n, const Int& x) {
  Int a = 0, b = 1;  // F_0, F_1
  if (n >= 0) {
    for (long i = 0; i < n; ++i) {
      Int c = x * b + a;
      a = b;
      b = c;
    }
    return a;
  }
  // F_{j-1} = F_{j+1} - x F_j
  for (long i = 0; i > n; --i) {
    Int prev = b - x * a;
    b = a;
    a = prev;
  }
  return a;
}

}  // namespace

TEST_CASE("published triples satisfy the triple congruences") {
  for (const auto& row : fixtures::kTriples) {
    CHECK(is_multiple_triple(row.p[0], row.p[1], row.p[2]));
    auto r = classify_pair_kind(PrimeTuple(std::vector<Nat>(row.p.begin(), row.p.end())),
                                PrimeTuple(std::vector<Nat>(row.p.rbegin(), row.p.rend())));
    CHECK(r == PairKind::Triple);
  }
  CHECK_FALSE(is_multiple_triple(2, 5, 3));
}

TEST_CASE("quadruple_case on published quadruples") {
  std::size_t normalized = 0;
  for (const auto& row : fixtures::kQuadruples) {
    PrimeTuple p(std::vector<Nat>(row.p.begin(), row.p.end()));
    auto match = locate_quadruple(p);
    REQUIRE_MESSAGE(match.has_value(), p.to_string());
    CHECK(match->cases.tag == row.tag);
    auto direct = quadruple_case(row.p[0], row.p[1], row.p[2], row.p[3]);
    if (direct) {
      ++normalized;
      CHECK(direct->tag == row.tag);
      CHECK(match->params == std::array<Nat, 4>{row.p[0], row.p[1], row.p[2], row.p[3]});
    }
    std::set<Nat> residues;
    for (const auto& cls : match->cases.classes) {
      CHECK(equivalent(cls[0], cls[1]));
      CHECK(cls[0] != cls[1]);
      CHECK(is_irreducible_pair(cls[0], cls[1]));
      residues.insert(residue_class(cls[0]).a);
    }
    std::set<Nat> expect;
    for (auto a : row.residues) expect.insert(parse_nat(a));
    CHECK(residues == expect);
  }
  CHECK(normalized == 17);  // seven rows list the other member of their class
  CHECK_FALSE(quadruple_case(2, 3, 5, 7).has_value());
  CHECK_FALSE(locate_quadruple(PrimeTuple{2, 3, 5, 7}).has_value());
}

TEST_CASE("Fibonacci and Lucas polynomials") {
  for (long x = -4; x <= 4; ++x) {
    for (long n = -12; n <= 12; ++n) {
      CHECK(fib_poly(n, x) == fib_reference(n, x));
      CHECK(lucas_poly(n, x) == fib_reference(n - 1, x) + fib_reference(n + 1, x));
    }
  }
  CHECK(fib_poly(10, 1) == 55);
  CHECK(lucas_poly(5, 1) == 11);
  CHECK(fib_poly(-3, 1) == 2);
  CHECK(fib_poly(-4, 1) == -3);
}

TEST_CASE("parametric lines produce solutions with witnesses") {
  for (int line = 1; line <= 4; ++line) {
    for (long n = -6; n <= 6; ++n) {
      for (long x = -5; x <= 5; ++x) {
        for (int delta : {1, -1}) {
          ParametricLine pl{line, n, x, delta};
          auto t = evaluate(pl);
          if (!is_integer_solution(t)) continue;
          auto pt = parametric_triple(pl);
          CHECK(pt.triple == t);
          CHECK(t.p3 - t.p1 == pt.witness.q * t.p2);
          CHECK(t.p2 * (t.p1 + t.p3) == 1 + pt.witness.r * t.p1 * t.p3);
        }
      }
    }
  }
}

TEST_CASE("classify_integer_triple covers a small box") {
  const long M = 12;
  std::size_t solutions = 0;
  for (long a = -M; a <= M; ++a) {
    for (long b = -M; b <= M; ++b) {
      for (long c = -M; c <= M; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        IntTriple t{a, b, c};
        bool sol = is_integer_solution(t);
        auto cls = classify_integer_triple(t);
        REQUIRE(cls.has_value() == sol);
        if (!sol) continue;
        ++solutions;
        for (const auto& line : cls->lines) CHECK(evaluate(line) == t);
      }
    }
  }
  CHECK(solutions > 0);
}

TEST_CASE("generate_prime_triples") {
  CHECK(generate_prime_triples(0).empty());
  auto recs = generate_prime_triples(2);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].p == PrimeTuple{3, 2, 5});
  CHECK(recs[1].p == PrimeTuple{7, 5, 17});
  CHECK(recs[1].residues[0].a == 237);
  for (const auto& r : generate_prime_triples(60)) {
    CHECK(is_multiple_triple(r.p[0], r.p[1], r.p[2]));
    CHECK(equivalent(r.p, r.q));
    CHECK(r.kind == PairKind::Triple);
  }
}

TEST_CASE("embedding a block-level equivalence") {
  // Blocks (3, 2, 5) are a multiple triple; splitting none of them gives the
  // triple back.
  BlockTuple bt{{3, 2, 5}, {}};
  auto e = embed(bt, Permutation({2, 1, 0}));
  CHECK(e.p == PrimeTuple{3, 2, 5});
  CHECK(e.image == PrimeTuple{5, 2, 3});
  CHECK(equivalent(e.p, e.image));
  CHECK_THROWS_AS(embed(BlockTuple{{4, 2, 5}, {}}, Permutation({2, 1, 0})), NotSquarefree);
  CHECK_THROWS_AS(embed(BlockTuple{{2, 3, 7}, {}}, Permutation({2, 1, 0})),
                  BlockCongruenceFailed);
  CHECK_THROWS(embed(bt, Permutation::identity(3)));
}

TEST_CASE("manypairs records are genuine pairs") {
  for (auto mode : {ManypairsMode::CoprimeToQ, ManypairsMode::DivisibleByQ}) {
    auto recs = manypairs_generator(5, 40, mode);
    CHECK_FALSE(recs.empty());
    for (const auto& r : recs) {
      CHECK(r.p != r.q);
      CHECK(equivalent(r.p, r.q));
      bool div5 = mpz_divisible_ui_p(r.modulus.get_mpz_t(), 5) != 0;
      CHECK(div5 == (mode == ManypairsMode::DivisibleByQ));
    }
  }
}
