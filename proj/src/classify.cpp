#include "emgraph/classify.hpp"

#include <algorithm>
#include <cmath>

#include "emgraph/arith.hpp"
#include "emgraph/errors.hpp"

namespace emgraph {

namespace {

bool congruent(const Int& a, const Int& b, const Int& m) {
  Int d = a - b;
  return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0;
}

PrimeTuple tuple4(const Nat& a, const Nat& b, const Nat& c, const Nat& d) {
  return PrimeTuple::trusted({a, b, c, d});
}

}  // namespace

bool is_multiple_triple(const Nat& p1, const Nat& p2, const Nat& p3) {
  return congruent(p2 * (p1 + p3), 1, p1 * p3) && congruent(p1, p3, p2);
}

std::optional<QuadrupleCase> quadruple_case(const Nat& p1, const Nat& p2, const Nat& p3,
                                            const Nat& p4) {
  if (congruent(p4, 1, p1) && congruent(p3 * (p1 * p2 + p4), 1, p2 * p4) &&
      congruent(p2, p4, p3)) {
    return QuadrupleCase{QuadCase::I,
                         {{tuple4(p1, p2, p3, p4), tuple4(p4, p1, p3, p2)},
                          {tuple4(p4, p3, p2, p1), tuple4(p2, p3, p1, p4)}}};
  }
  if (p1 < p2 && congruent(p3 * (p1 * p2 + p4), 1, p1 * p2 * p4) &&
      congruent(p1 * p2, p4, p3)) {
    return QuadrupleCase{QuadCase::II,
                         {{tuple4(p1, p2, p3, p4), tuple4(p4, p3, p1, p2)},
                          {tuple4(p4, p3, p2, p1), tuple4(p2, p1, p3, p4)}}};
  }
  if (p1 < p4 && p2 < p3 && congruent((p1 + p4) * p2 * p3, 1, p1 * p4) &&
      congruent(p1, p4, p2 * p3)) {
    return QuadrupleCase{QuadCase::III,
                         {{tuple4(p1, p2, p3, p4), tuple4(p4, p2, p3, p1)},
                          {tuple4(p4, p3, p2, p1), tuple4(p1, p3, p2, p4)}}};
  }
  if (p1 < p4 && congruent((p1 + p4) * p2 * p3, 1, p1 * p4) && congruent(p1, p3 * p4, p2) &&
      congruent(p1 * p2, p4, p3)) {
    return QuadrupleCase{QuadCase::IV, {{tuple4(p1, p2, p3, p4), tuple4(p4, p3, p2, p1)}}};
  }
  return std::nullopt;
}

PairKind to_pair_kind(QuadCase c) {
  switch (c) {
    case QuadCase::I: return PairKind::QuadrupleI;
    case QuadCase::II: return PairKind::QuadrupleII;
    case QuadCase::III: return PairKind::QuadrupleIII;
    case QuadCase::IV: return PairKind::QuadrupleIV;
  }
  return PairKind::General;
}

std::optional<QuadrupleMatch> locate_quadruple(const PrimeTuple& p) {
  if (p.size() != 4) return std::nullopt;
  auto order = p.primes();
  std::sort(order.begin(), order.end());
  do {
    auto qc = quadruple_case(order[0], order[1], order[2], order[3]);
    if (!qc) continue;
    for (std::size_t i = 0; i < qc->classes.size(); ++i) {
      const auto& cls = qc->classes[i];
      if (cls[0] == p || cls[1] == p) {
        return QuadrupleMatch{{order[0], order[1], order[2], order[3]}, std::move(*qc), i};
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

PairKind classify_pair_kind(const PrimeTuple& p, const PrimeTuple& q) {
  if (p.size() == 3 && q == reverse(p) && p != q) return PairKind::Triple;
  auto match = locate_quadruple(p);
  if (!match) return PairKind::General;
  const auto& cls = match->cases.classes[match->class_index];
  if (cls[0] == q || cls[1] == q) return to_pair_kind(match->cases.tag);
  return PairKind::General;
}

// ---------------------------------------------------------------------------
// Fibonacci and Lucas polynomials

namespace {

// F_0(x) .. F_count(x)
std::vector<Int> fib_table(const Int& x, long count) {
  std::vector<Int> f(static_cast<std::size_t>(std::max(count, 1L)) + 1);
  f[0] = 0;
  f[1] = 1;
  for (long i = 2; i <= count; ++i) f[i] = x * f[i - 1] + f[i - 2];
  return f;
}

Int signed_fib(const std::vector<Int>& table, long n) {
  if (n >= 0) return table[n];
  long m = -n;
  return (m % 2 == 1) ? table[m] : Int(-table[m]);  // (-1)^{m-1} F_m
}

}  // namespace

Int fib_poly(long n, const Int& x) {
  long m = n < 0 ? -n : n;
  return signed_fib(fib_table(x, m), n);
}

Int lucas_poly(long n, const Int& x) { return fib_poly(n + 1, x) + fib_poly(n - 1, x); }

namespace {

IntTriple evaluate_with(const std::vector<Int>& f, const ParametricLine& l) {
  const Int d = l.delta;
  switch (l.line) {
    case 1:
      return {d * (signed_fib(f, l.n - 1) + signed_fib(f, l.n)), d * signed_fib(f, -l.n),
              d * (signed_fib(f, l.n) + signed_fib(f, l.n + 1))};
    case 2:
      return {d * signed_fib(f, l.n), d * (signed_fib(f, -l.n) + signed_fib(f, -(l.n + 1))),
              d * signed_fib(f, l.n + 1)};
    case 3: return {d, d * l.x, d};
    case 4: return {d * l.x, d, d * (1 - l.x)};
  }
  throw std::invalid_argument("ParametricLine: line must be 1..4");
}

void check_line(const ParametricLine& l) {
  if (l.line < 1 || l.line > 4) throw std::invalid_argument("ParametricLine: line must be 1..4");
  if (l.delta != 1 && l.delta != -1) throw std::invalid_argument("ParametricLine: delta must be +-1");
}

}  // namespace

IntTriple evaluate(const ParametricLine& line) {
  check_line(line);
  long m = std::abs(line.n) + 2;
  return evaluate_with(fib_table(line.x, m), line);
}

std::optional<TripleWitness> triple_witness(const IntTriple& t) {
  TripleWitness w;
  Int diff = t.p3 - t.p1;
  if (t.p2 != 0) {
    if (!mpz_divisible_p(diff.get_mpz_t(), t.p2.get_mpz_t())) return std::nullopt;
    mpz_divexact(w.q.get_mpz_t(), diff.get_mpz_t(), t.p2.get_mpz_t());
  } else if (diff != 0) {
    return std::nullopt;
  }
  Int num = t.p2 * (t.p1 + t.p3) - 1;
  Int den = t.p1 * t.p3;
  if (den != 0) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return std::nullopt;
    mpz_divexact(w.r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else if (num != 0) {
    return std::nullopt;
  }
  return w;
}

ParametricTriple parametric_triple(const ParametricLine& line) {
  IntTriple t = evaluate(line);
  auto w = triple_witness(t);
  if (!w) {
    throw std::logic_error("parametric_triple: line " + std::to_string(line.line) +
                           " produced a non-solution");
  }
  return {t, *w};
}

std::optional<TripleClassification> classify_integer_triple(const IntTriple& t) {
  auto w = triple_witness(t);
  if (!w) return std::nullopt;
  TripleClassification out{*w, {}};

  Int a1 = abs(t.p1), a2 = abs(t.p2), a3 = abs(t.p3);
  Int bound = std::max({a1, a2, a3});
  // Lines 3 and 4 are linear in x.
  for (int d : {1, -1}) {
    if (t.p1 == d && t.p3 == d) out.lines.push_back({3, 0, Int(d * t.p2), d});
    if (t.p2 == d && t.p3 == d * (1 - d * t.p1)) out.lines.push_back({4, 0, Int(d * t.p1), d});
  }

  // Every line-1/line-2 match has |F_n(x)| <= bound, which limits |n| once
  // |x| >= 2; the strip |x| <= 1 gets a fixed logarithmic window.
  const double log_bound = std::log2(std::max(2.0, bound.get_d()));
  const long strip_n = static_cast<long>(2 * log_bound) + 4;
  const Int x_max = bound + 1;
  for (Int x = -x_max; x <= x_max; ++x) {
    long n_max;
    if (abs(x) <= 1) {
      n_max = strip_n;
    } else {
      n_max = 1;
      Int a = 1, b = x;  // F_1, F_2
      while (abs(b) <= bound) {
        Int c = x * b + a;
        a = b;
        b = c;
        ++n_max;
      }
      ++n_max;
    }
    const auto f = fib_table(x, n_max + 2);
    for (long n = -n_max; n <= n_max; ++n) {
      for (int line : {1, 2}) {
        for (int d : {1, -1}) {
          ParametricLine l{line, n, x, d};
          if (evaluate_with(f, l) == t) out.lines.push_back(l);
        }
      }
    }
  }
  if (out.lines.empty()) return std::nullopt;
  return out;
}

std::vector<PairRecord> generate_prime_triples(long x_max) {
  std::vector<PairRecord> out;
  for (long xi = 1; xi <= x_max; ++xi) {
    Int x = xi;
    Nat p1 = x * x + x + 1, p2 = x * x + 1, p3 = x * x * x + x * x + 2 * x + 1;
    if (!is_prime(p1) || !is_prime(p2) || !is_prime(p3)) continue;
    PrimeTuple p = PrimeTuple::trusted({p1, p2, p3});
    out.push_back(make_pair_record(p, reverse(p), PairKind::Triple));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Block embedding

EmbeddedPair embed(const BlockTuple& b, const Permutation& pi) {
  const std::size_t k = b.blocks.size();
  if (pi.size() != k) throw std::invalid_argument("embed: permutation size differs from block count");
  if (k == 0 || pi.is_identity()) throw std::invalid_argument("embed: permutation must be non-trivial");
  if (!b.orderings.empty() && b.orderings.size() != k) {
    throw std::invalid_argument("embed: one ordering per block is required");
  }

  std::vector<std::vector<Nat>> orderings(k);
  std::vector<Nat> all;
  for (std::size_t i = 0; i < k; ++i) {
    if (b.blocks[i] <= 1) throw std::invalid_argument("embed: blocks must exceed 1");
    if (!b.orderings.empty() && !b.orderings[i].empty()) {
      orderings[i] = b.orderings[i];
      for (const auto& p : orderings[i]) {
        if (!is_prime(p)) throw std::invalid_argument("embed: " + to_decimal(p) + " is not prime");
      }
      if (product(orderings[i]) != b.blocks[i]) {
        throw std::invalid_argument("embed: ordering does not multiply to block " +
                                    to_decimal(b.blocks[i]));
      }
    } else {
      auto fz = factor(b.blocks[i]);
      if (!fz.complete()) throw IncompleteFactorization("embed: cannot factor block");
      if (!fz.squarefree()) throw NotSquarefree("embed: block " + to_decimal(b.blocks[i]));
      orderings[i] = fz.primes();
    }
    for (const auto& p : orderings[i]) {
      if (std::find(all.begin(), all.end(), p) != all.end()) {
        throw NotSquarefree("embed: prime " + to_decimal(p) + " repeats across blocks");
      }
      all.push_back(p);
    }
  }

  // Block-level congruences, with Q = pi.(P_1..P_k).
  const auto qblocks = pi.apply(b.blocks);
  for (std::size_t i = 0; i < k; ++i) {
    Nat lhs = 1, rhs = 1;
    for (std::size_t j = 0; j < i; ++j) lhs *= b.blocks[j];
    for (std::size_t j = 0; j < pi(i); ++j) rhs *= qblocks[j];
    if (!congruent(lhs, rhs, b.blocks[i])) {
      throw BlockCongruenceFailed("embed: congruence fails at block " + std::to_string(i + 1));
    }
  }

  // s[i]: offset of block i in P; t[j]: offset of Q's block j in Pi.P.
  const auto inv = pi.inverse();
  std::vector<std::size_t> s(k + 1, 0), t(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    s[i + 1] = s[i] + orderings[i].size();
    t[i + 1] = t[i] + orderings[inv(i)].size();
  }
  std::vector<std::size_t> images(all.size());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < orderings[i].size(); ++j) images[s[i] + j] = t[pi(i)] + j;
  }
  Permutation lifted(std::move(images));

  bool irreducible = true;
  Nat pp = 1, qq = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    pp *= b.blocks[i];
    qq *= qblocks[i];
    if (pp == qq) irreducible = false;
  }

  PrimeTuple p = PrimeTuple::trusted(all);
  PrimeTuple image = lifted.apply(p);
  return {std::move(p), std::move(image), std::move(lifted), irreducible};
}

std::vector<PairRecord> manypairs_generator(const Nat& q, long x_max, ManypairsMode mode,
                                            const EffortPolicy& policy) {
  if (q < 1) throw std::invalid_argument("manypairs_generator: q must be >= 1");
  std::vector<PairRecord> out;
  const Permutation swap13({2, 1, 0});
  for (long xi = 1; xi <= x_max; ++xi) {
    Int x = xi;
    std::vector<Nat> blocks;
    if (mode == ManypairsMode::CoprimeToQ) {
      blocks = {x * x + x + 1, x * x + 1, x * x * x + x * x + 2 * x + 1};
    } else {
      blocks = {x, x * x - x + 1, x * x + 1};
    }
    if (std::any_of(blocks.begin(), blocks.end(), [](const Nat& v) { return v <= 1; })) continue;
    Nat value = product(blocks);
    if (mode == ManypairsMode::CoprimeToQ) {
      if (gcd(value, q) != 1) continue;
    } else {
      if (gcd(value, Nat(q * q)) != q) continue;
    }

    BlockTuple bt{blocks, {}};
    bool usable = true;
    for (const auto& block : blocks) {
      auto fz = factor(block, policy);
      if (!fz.complete() || !fz.squarefree()) {
        usable = false;
        break;
      }
      bt.orderings.push_back(fz.primes());
    }
    if (!usable) continue;
    // Blocks must also be pairwise coprime for the product to be squarefree.
    if (gcd(blocks[0], blocks[1]) != 1 || gcd(blocks[0], blocks[2]) != 1 ||
        gcd(blocks[1], blocks[2]) != 1) {
      continue;
    }

    auto pair = embed(bt, swap13);
    auto kind = classify_pair_kind(pair.p, pair.image);
    out.push_back(make_pair_record(pair.p, pair.image, kind));
  }
  return out;
}

}  // namespace emgraph
