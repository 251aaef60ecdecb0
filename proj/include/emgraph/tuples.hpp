#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "emgraph/nat.hpp"

namespace emgraph {

/// An ordered tuple of distinct primes: a candidate sequence of edge labels.
class PrimeTuple {
 public:
  PrimeTuple() = default;
  // Throws InvalidTuple if an entry is not prime or entries repeat.
  explicit PrimeTuple(std::vector<Nat> primes);
  PrimeTuple(std::initializer_list<unsigned long> primes);

  // Skips validation; for callers that already hold distinct primes.
  static PrimeTuple trusted(std::vector<Nat> primes);

  const std::vector<Nat>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  const Nat& operator[](std::size_t i) const { return primes_[i]; }
  const Nat& modulus() const { return modulus_; }

  // Product of the first i entries.
  Nat prefix_product(std::size_t i) const;

  std::string to_string() const;  // "(2,3,5)"

  bool operator==(const PrimeTuple& other) const { return primes_ == other.primes_; }
  // Lexicographic on the entries.
  std::strong_ordering operator<=>(const PrimeTuple& other) const;

 private:
  std::vector<Nat> primes_;
  Nat modulus_ = 1;
};

/// A bijection on {0..k-1}. Acting on a tuple, Q = pi.P places P[i] at Q[pi(i)].
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images);  // throws if not a bijection
  static Permutation identity(std::size_t k);
  static Permutation reversal(std::size_t k);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t>& images() const { return images_; }
  bool is_identity() const;
  Permutation inverse() const;

  template <class T>
  std::vector<T> apply(const std::vector<T>& items) const {
    std::vector<T> out(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) out[images_[i]] = items[i];
    return out;
  }
  PrimeTuple apply(const PrimeTuple& p) const { return PrimeTuple::trusted(apply(p.primes())); }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> images_;
};

/// The progression {n : n = a (mod m)}, 0 <= a < m, gcd(a, m) = 1.
struct ResidueClass {
  Nat a;
  Nat m;

  bool contains(const Nat& n) const;
  bool operator==(const ResidueClass& o) const { return a == o.a && m == o.m; }
  bool operator<(const ResidueClass& o) const { return m != o.m ? m < o.m : a < o.a; }
};

/// Starting values n from which P is a valid edge path, i.e.
/// p_i | p_1...p_{i-1} n + 1 for every i.
ResidueClass residue_class(const PrimeTuple& p);

bool equivalent(const PrimeTuple& p, const PrimeTuple& q);

inline constexpr std::size_t kMaxPermutationLength = 10;

/// Number of orderings of P's primes equivalent to P (throws TupleTooLong
/// beyond kMaxPermutationLength).
std::size_t multiplicity(const PrimeTuple& p);
/// The orderings themselves, sorted, P included.
std::vector<PrimeTuple> equivalence_class(const PrimeTuple& p);

bool is_irreducible_pair(const PrimeTuple& p, const PrimeTuple& q);

PrimeTuple reverse(const PrimeTuple& p);

enum class PairKind { Triple, QuadrupleI, QuadrupleII, QuadrupleIII, QuadrupleIV, General };

std::string to_string(PairKind kind);
PairKind pair_kind_from_string(const std::string& s);  // throws FormatError

/// An unordered pair of equivalent orderings, stored with p < q.
struct PairRecord {
  PrimeTuple p;
  PrimeTuple q;
  Nat modulus;
  std::vector<ResidueClass> residues;
  PairKind kind = PairKind::General;
  bool irreducible = false;

  bool operator==(const PairRecord&) const = default;
};

// Canonicalizes the order and fills modulus, residue and irreducibility.
PairRecord make_pair_record(PrimeTuple a, PrimeTuple b, PairKind kind = PairKind::General);

}  // namespace emgraph
