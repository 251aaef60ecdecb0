#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "emgraph/factor.hpp"
#include "emgraph/nat.hpp"

namespace emgraph {

/// Primality. Deterministic below 2^64; above that a Baillie-PSW probable
/// prime test (strong base-2 Miller-Rabin plus strong Lucas).
bool is_prime(const Nat& n);
bool is_prime_u64(std::uint64_t n);

/// All primes <= bound, ascending. The underlying sieve is memoized.
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

/// x in [1, m) with a*x = 1 (mod m). Throws NotInvertible if gcd(a, m) > 1.
Nat mod_inverse(const Nat& a, const Nat& m);

struct Congruence {
  Nat residue;
  Nat modulus;
};

/// Combines pairwise-coprime congruences into (r, M) with M the product of
/// the moduli and 0 <= r < M. Throws ModuliNotCoprime.
std::pair<Nat, Nat> crt(std::span<const Congruence> congruences);

/// A squarefree integer from a sieve together with its complete factorization.
struct SquarefreeEntry {
  std::uint64_t value = 0;
  std::vector<std::uint64_t> primes;  // ascending

  Factorization factorization() const;
};

/// Segmented sieve over [lo, hi] that yields every squarefree m with at least
/// `min_omega` prime factors and gcd(m, coprime_to) = 1. Never calls the
/// general factoring ladder.
class SquarefreeStream {
 public:
  SquarefreeStream(std::uint64_t lo, std::uint64_t hi, unsigned min_omega,
                   Nat coprime_to = 1);

  std::optional<SquarefreeEntry> next();

 private:
  void fill_segment();

  std::uint64_t hi_;
  unsigned min_omega_;
  Nat coprime_to_;
  std::vector<std::uint32_t> base_primes_;
  std::uint64_t segment_lo_;
  std::uint64_t segment_hi_ = 0;  // exclusive
  bool exhausted_ = false;
  std::vector<SquarefreeEntry> buffer_;
  std::size_t cursor_ = 0;
};

std::vector<SquarefreeEntry> squarefree_stream(std::uint64_t lo, std::uint64_t hi,
                                               unsigned min_omega,
                                               const Nat& coprime_to = 1);

// Euler's totient for a completely factored number.
Nat euler_phi(const Factorization& fz);

}  // namespace emgraph
