#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace emgraph {

// Arbitrary-precision integer. Node values, moduli and primes are all Nat;
// signed quantities in the Fibonacci machinery use the same type.
using Nat = mpz_class;

// Throws std::invalid_argument unless `text` is a plain decimal integer
// (optional leading '-', no whitespace).
Nat parse_nat(std::string_view text);
std::string to_decimal(const Nat& n);

inline Nat from_u64(std::uint64_t v) {
  Nat n;
  mpz_import(n.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return n;
}

// nullopt when n is negative or needs more than 64 bits.
std::optional<std::uint64_t> to_u64(const Nat& n);

Nat product(const std::vector<Nat>& values);

}  // namespace emgraph
