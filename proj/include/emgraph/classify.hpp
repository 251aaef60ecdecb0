#pragma once

#include <array>
#include <optional>
#include <vector>

#include "emgraph/factor.hpp"
#include "emgraph/nat.hpp"
#include "emgraph/tuples.hpp"

namespace emgraph {

using Int = mpz_class;  // signed

/// p3 - p1 = q*p2 and p2*(p1 + p3) = 1 + r*p1*p3.
struct TripleWitness {
  Int q;
  Int r;
  bool operator==(const TripleWitness&) const = default;
};

struct IntTriple {
  Int p1, p2, p3;
  bool operator==(const IntTriple&) const = default;
};

/// One of the four parametric families of integer solutions to the triple
/// congruences:
///   line 1: delta*(F_{n-1}+F_n, F_{-n}, F_n+F_{n+1})
///   line 2: delta*(F_n, F_{-n}+F_{-(n+1)}, F_{n+1})
///   line 3: delta*(1, x, 1)
///   line 4: delta*(x, 1, 1-x)
/// with F_j = F_j(x). Lines 3 and 4 ignore n.
struct ParametricLine {
  int line = 1;
  long n = 0;
  Int x = 0;
  int delta = 1;
  bool operator==(const ParametricLine&) const = default;
};

enum class QuadCase { I, II, III, IV };

struct QuadrupleCase {
  QuadCase tag;
  // Each class is an unordered pair of equivalent orderings.
  std::vector<std::array<PrimeTuple, 2>> classes;
};

/// p2(p1+p3) = 1 (mod p1 p3) and p1 = p3 (mod p2).
bool is_multiple_triple(const Nat& p1, const Nat& p2, const Nat& p3);

/// The case of the quadruple classification whose conditions (including the
/// normalization inequalities) hold for (p1, p2, p3, p4), checked in the
/// order I, II, III, IV.
std::optional<QuadrupleCase> quadruple_case(const Nat& p1, const Nat& p2, const Nat& p3,
                                            const Nat& p4);

PairKind to_pair_kind(QuadCase c);

struct QuadrupleMatch {
  std::array<Nat, 4> params;  // (p1, p2, p3, p4) satisfying the case conditions
  QuadrupleCase cases;
  std::size_t class_index;  // the class of `cases` containing the tuple
};

/// Finds the parameters whose case table lists p in one of its classes. A
/// tuple need not be the normalized (p1, p2, p3, p4) of its own class.
std::optional<QuadrupleMatch> locate_quadruple(const PrimeTuple& p);

/// F_0 = 0, F_1 = 1, F_n = x F_{n-1} + F_{n-2}; F_{-n} = (-1)^{n-1} F_n.
Int fib_poly(long n, const Int& x);
/// L_n = F_{n+1} + F_{n-1}.
Int lucas_poly(long n, const Int& x);

IntTriple evaluate(const ParametricLine& line);

/// The (q, r) of an integer triple, or nullopt if it does not satisfy the
/// congruences. When p2 = 0 (resp. p1*p3 = 0) q (resp. r) is unconstrained
/// and reported as 0.
std::optional<TripleWitness> triple_witness(const IntTriple& t);

struct ParametricTriple {
  IntTriple triple;
  TripleWitness witness;
};
ParametricTriple parametric_triple(const ParametricLine& line);

struct TripleClassification {
  TripleWitness witness;
  std::vector<ParametricLine> lines;  // every representation found, nonempty
};

/// Finds the parametric representations of a solution by bounded enumeration;
/// nullopt when the triple is not a solution.
std::optional<TripleClassification> classify_integer_triple(const IntTriple& t);

/// Prime triples (x^2+x+1, x^2+1, x^3+x^2+2x+1) for x in [1, x_max].
std::vector<PairRecord> generate_prime_triples(long x_max);

/// Blocks P_1..P_k with a chosen ordering of each block's prime factors.
struct BlockTuple {
  std::vector<Nat> blocks;
  std::vector<std::vector<Nat>> orderings;
};

struct EmbeddedPair {
  PrimeTuple p;        // concatenated block orderings
  PrimeTuple image;    // Pi.P
  Permutation lifted;  // Pi
  bool irreducible;
};

/// Lifts a block-level equivalence P_blocks ~ pi.P_blocks to an equivalence of
/// the concatenated prime tuples. Throws NotSquarefree or
/// BlockCongruenceFailed when the preconditions fail.
EmbeddedPair embed(const BlockTuple& blocks, const Permutation& pi);

enum class ManypairsMode { CoprimeToQ, DivisibleByQ };

/// Mode CoprimeToQ: blocks (x^2+x+1, x^2+1, x^3+x^2+2x+1) whenever their
/// product f(x) is squarefree and coprime to q. Mode DivisibleByQ: blocks
/// (x, x^2-x+1, x^2+1) whenever g(x) = x(x^2-x+1)(x^2+1) has (g, q^2) = q and
/// g/q squarefree. Each solution is embedded with pi = (13).
std::vector<PairRecord> manypairs_generator(const Nat& q, long x_max, ManypairsMode mode,
                                            const EffortPolicy& policy = {});

}  // namespace emgraph

namespace emgraph {

/// Triple when q is the reversal of a 3-tuple p; the quadruple case whose
/// table entry contains {p, q} for 4-tuples; General otherwise.
PairKind classify_pair_kind(const PrimeTuple& p, const PrimeTuple& q);

}  // namespace emgraph
