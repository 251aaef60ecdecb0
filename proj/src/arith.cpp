#include "emgraph/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "emgraph/errors.hpp"

namespace emgraph {

Nat parse_nat(std::string_view text) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  return Nat(std::string(text), 10);
}

std::string to_decimal(const Nat& n) { return n.get_str(10); }

std::optional<std::uint64_t> to_u64(const Nat& n) {
  if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) return std::nullopt;
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, n.get_mpz_t());
  return v;
}

Nat product(const std::vector<Nat>& values) {
  Nat p = 1;
  for (const auto& v : values) p *= v;
  return p;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                          1795265022ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Nat& n) {
  if (auto small = to_u64(n)) return is_prime_u64(*small);
  if (sgn(n) <= 0) return false;
  // GMP >= 6.2 runs Baillie-PSW followed by extra Miller-Rabin rounds.
  return mpz_probab_prime_p(n.get_mpz_t(), 25) > 0;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  static std::mutex mutex;
  static std::vector<std::uint32_t> sieved_primes;
  static std::uint32_t sieved_bound = 0;
  std::lock_guard lock(mutex);
  if (bound > sieved_bound) {
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    sieved_primes.clear();
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      sieved_primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    sieved_bound = bound;
  }
  auto end = std::upper_bound(sieved_primes.begin(), sieved_primes.end(), bound);
  return {sieved_primes.begin(), end};
}

Nat mod_inverse(const Nat& a, const Nat& m) {
  if (m < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  Nat x;
  if (mpz_invert(x.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw NotInvertible("mod_inverse: " + to_decimal(a) + " is not invertible mod " +
                        to_decimal(m));
  }
  return x;
}

std::pair<Nat, Nat> crt(std::span<const Congruence> congruences) {
  Nat r = 0;
  Nat big_m = 1;
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    const auto& c = congruences[i];
    if (c.modulus < 1) throw std::invalid_argument("crt: modulus must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      Nat g = gcd(c.modulus, congruences[j].modulus);
      if (g != 1) {
        throw ModuliNotCoprime("crt: gcd(" + to_decimal(c.modulus) + ", " +
                               to_decimal(congruences[j].modulus) + ") = " + to_decimal(g));
      }
    }
    Nat residue = c.residue % c.modulus;
    if (residue < 0) residue += c.modulus;
    // r + M*t = residue (mod m)  =>  t = (residue - r) * M^-1 (mod m)
    Nat t = residue - r;
    if (c.modulus > 1) {
      t = (t * mod_inverse(big_m % c.modulus, c.modulus)) % c.modulus;
      if (t < 0) t += c.modulus;
    } else {
      t = 0;
    }
    r += big_m * t;
    big_m *= c.modulus;
  }
  return {r, big_m};
}

Factorization SquarefreeEntry::factorization() const {
  Factorization fz;
  fz.input = from_u64(value);
  for (auto p : primes) fz.factors.push_back({from_u64(p), 1});
  return fz;
}

namespace {
constexpr std::uint64_t kSegment = 1u << 16;
constexpr std::size_t kMaxOmega = 15;  // 2*3*...*47 > 2^64
}  // namespace

SquarefreeStream::SquarefreeStream(std::uint64_t lo, std::uint64_t hi, unsigned min_omega,
                                   Nat coprime_to)
    : hi_(hi), min_omega_(min_omega), coprime_to_(std::move(coprime_to)), segment_lo_(lo) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("squarefree_stream: need 1 <= lo <= hi");
  if (coprime_to_ < 1) throw std::invalid_argument("squarefree_stream: coprime_to must be >= 1");
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  base_primes_ = primes_up_to(static_cast<std::uint32_t>(root));
}

void SquarefreeStream::fill_segment() {
  buffer_.clear();
  cursor_ = 0;
  if (exhausted_) return;
  const std::uint64_t lo = segment_lo_;
  const std::uint64_t end = (hi_ - lo >= kSegment) ? lo + kSegment : hi_ + 1;  // exclusive
  const std::size_t len = end - lo;

  std::vector<std::uint64_t> rest(len);
  std::vector<std::uint8_t> count(len, 0);
  std::vector<std::uint8_t> squarefree(len, 1);
  std::vector<std::uint32_t> found(len * kMaxOmega);
  for (std::size_t i = 0; i < len; ++i) rest[i] = lo + i;

  for (std::uint32_t p : base_primes_) {
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t v = first; v < end; v += p) {
      std::size_t i = v - lo;
      if (!squarefree[i]) continue;
      rest[i] /= p;
      if (rest[i] % p == 0) {
        squarefree[i] = 0;
        continue;
      }
      found[i * kMaxOmega + count[i]++] = p;
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    if (!squarefree[i]) continue;
    unsigned omega = count[i] + (rest[i] > 1 ? 1 : 0);
    if (omega < min_omega_) continue;
    SquarefreeEntry e;
    e.value = lo + i;
    e.primes.assign(found.begin() + i * kMaxOmega, found.begin() + i * kMaxOmega + count[i]);
    if (rest[i] > 1) e.primes.push_back(rest[i]);
    if (coprime_to_ != 1) {
      bool ok = std::none_of(e.primes.begin(), e.primes.end(), [&](std::uint64_t p) {
        return mpz_divisible_ui_p(coprime_to_.get_mpz_t(), p) != 0;
      });
      if (!ok) continue;
    }
    buffer_.push_back(std::move(e));
  }

  if (end > hi_) {
    exhausted_ = true;
  } else {
    segment_lo_ = end;
  }
}

std::optional<SquarefreeEntry> SquarefreeStream::next() {
  while (cursor_ == buffer_.size()) {
    if (exhausted_) return std::nullopt;
    fill_segment();
  }
  return std::move(buffer_[cursor_++]);
}

std::vector<SquarefreeEntry> squarefree_stream(std::uint64_t lo, std::uint64_t hi,
                                               unsigned min_omega, const Nat& coprime_to) {
  std::vector<SquarefreeEntry> out;
  SquarefreeStream stream(lo, hi, min_omega, coprime_to);
  while (auto e = stream.next()) out.push_back(std::move(*e));
  return out;
}

Nat euler_phi(const Factorization& fz) {
  if (!fz.complete()) throw IncompleteFactorization("euler_phi needs a complete factorization");
  Nat phi = 1;
  for (const auto& pp : fz.factors) {
    Nat pk;
    mpz_pow_ui(pk.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent - 1);
    phi *= pk * (pp.prime - 1);
  }
  return phi;
}

}  // namespace emgraph
