// Pollard-Brent rho and Montgomery-curve ECM (Suyama parametrization) with a
// baby-step/giant-step stage 2.
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "emgraph/arith.hpp"
#include "emgraph/factor.hpp"

namespace emgraph {

namespace {

void mod_reduce(Nat& x, const Nat& n) {
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
}

std::optional<Nat> nontrivial(const Nat& g, const Nat& n) {
  if (g > 1 && g < n) return g;
  return std::nullopt;
}

}  // namespace

std::optional<Nat> pollard_brent(const Nat& n, std::uint64_t max_iterations, std::uint64_t seed) {
  if (n < 4) return std::nullopt;
  if (mpz_even_p(n.get_mpz_t())) return Nat(2);

  constexpr std::uint64_t kBatch = 128;
  std::uint64_t spent = 0;
  for (std::uint64_t c_seed = seed; spent < max_iterations; ++c_seed) {
    const Nat c = Nat(static_cast<unsigned long>(c_seed % 1'000'003 + 1));
    Nat y = 2 + c_seed % 97;
    Nat x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    auto step = [&](Nat& v) {
      v = v * v + c;
      mod_reduce(v, n);
    };
    while (g == 1 && spent < max_iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        std::uint64_t lim = std::min(kBatch, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          Nat diff = x - y;
          q *= abs(diff);
          mod_reduce(q, n);
        }
        g = gcd(q, n);
        k += lim;
        spent += lim;
      }
      r *= 2;
    }
    if (g == n) {
      // Batch overshot; replay one step at a time from the saved point.
      do {
        step(ys);
        g = gcd(Nat(abs(x - ys)), n);
      } while (g == 1);
    }
    if (auto d = nontrivial(g, n)) return d;
  }
  return std::nullopt;
}

namespace {

struct Point {
  Nat x, z;
};

struct Curve {
  const Nat& n;
  Nat a24;  // (A + 2) / 4

  Point dbl(const Point& p) const {
    Nat s = p.x + p.z, d = p.x - p.z;
    Nat s2 = s * s, d2 = d * d;
    mod_reduce(s2, n);
    mod_reduce(d2, n);
    Nat t = s2 - d2;
    Point r;
    r.x = s2 * d2;
    mod_reduce(r.x, n);
    Nat w = d2 + a24 * t;
    mod_reduce(w, n);
    r.z = t * w;
    mod_reduce(r.z, n);
    return r;
  }

  // p + q given diff = p - q.
  Point add(const Point& p, const Point& q, const Point& diff) const {
    Nat u = (p.x - p.z) * (q.x + q.z);
    Nat v = (p.x + p.z) * (q.x - q.z);
    mod_reduce(u, n);
    mod_reduce(v, n);
    Nat sum = u + v, dif = u - v;
    Point r;
    r.x = sum * sum;
    mod_reduce(r.x, n);
    r.x *= diff.z;
    mod_reduce(r.x, n);
    r.z = dif * dif;
    mod_reduce(r.z, n);
    r.z *= diff.x;
    mod_reduce(r.z, n);
    return r;
  }

  Point mul(const Point& p, std::uint64_t k) const {
    if (k == 1) return p;
    Point r0 = p, r1 = dbl(p);
    int top = 63 - __builtin_clzll(k);
    for (int bit = top - 1; bit >= 0; --bit) {
      if ((k >> bit) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r1, r0, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }
};

}  // namespace

std::optional<Nat> ecm_one_curve(const Nat& n, std::uint64_t b1, std::uint64_t sigma_seed) {
  if (n < 4) return std::nullopt;
  if (mpz_even_p(n.get_mpz_t())) return Nat(2);

  const Nat sigma = Nat(static_cast<unsigned long>(sigma_seed + 6));
  Nat u = sigma * sigma - 5;
  Nat v = 4 * sigma;
  mod_reduce(u, n);
  Nat u3 = u * u * u, v3 = v * v * v;
  mod_reduce(u3, n);
  mod_reduce(v3, n);
  Nat vmu = v - u;
  Nat num = vmu * vmu * vmu * (3 * u + v);
  mod_reduce(num, n);
  Nat den = 16 * u3 * v;
  mod_reduce(den, n);
  Nat g = gcd(den, n);
  if (g != 1) return nontrivial(g, n);
  Nat den_inv;
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  Curve curve{n, num * den_inv};
  mod_reduce(curve.a24, n);

  Point q{u3, v3};

  // Stage 1: multiply by every prime power <= b1.
  const auto primes = primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(b1, 0xFFFFFFFFu)));
  for (std::uint32_t p : primes) {
    std::uint64_t pk = p;
    while (pk <= b1 / p) pk *= p;
    q = curve.mul(q, pk);
  }
  g = gcd(q.z, n);
  if (g != 1) return nontrivial(g, n);

  // Stage 2: primes in (b1, b2] written as m*D +- j with gcd(j, D) = 1.
  constexpr std::uint64_t kD = 2310;
  const std::uint64_t b2 = b1 * 100;
  std::vector<Point> baby(kD / 2 + 1);
  Point q2 = curve.dbl(q);
  baby[1] = q;
  baby[3] = curve.add(q2, q, q);
  for (std::uint64_t j = 5; j <= kD / 2; j += 2) baby[j] = curve.add(baby[j - 2], q2, baby[j - 4]);
  std::vector<std::uint64_t> coprime_j;
  for (std::uint64_t j = 1; j <= kD / 2; j += 2) {
    if (std::gcd(j, kD) == 1) coprime_j.push_back(j);
  }

  const Point qd = curve.mul(q, kD);
  std::uint64_t m = b1 / kD;
  if (m == 0) m = 1;
  Point giant = curve.mul(q, m * kD);
  // (0:0) marks "no predecessor": the first step doubles instead.
  Point giant_prev = (m == 1) ? Point{Nat(0), Nat(0)} : curve.mul(q, (m - 1) * kD);

  const auto stage2_primes = primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(b2 + kD, 0xFFFFFFFFu)));
  std::vector<char> is_p(kD + 1);
  Nat acc = 1;
  std::size_t pi = std::upper_bound(stage2_primes.begin(), stage2_primes.end(), b1) - stage2_primes.begin();
  for (; m * kD <= b2 + kD / 2; ++m) {
    const std::uint64_t centre = m * kD;
    // mark primes in (centre - D/2, centre + D/2]
    std::fill(is_p.begin(), is_p.end(), 0);
    while (pi < stage2_primes.size() && stage2_primes[pi] <= centre + kD / 2) {
      std::uint64_t p = stage2_primes[pi++];
      if (p + kD / 2 >= centre && p > b1) is_p[p + kD / 2 - centre] = 1;
    }
    for (std::uint64_t j : coprime_j) {
      bool hit = is_p[kD / 2 + j] || (centre >= j && is_p[kD / 2 - j]);
      if (!hit) continue;
      Nat t = giant.x * baby[j].z - baby[j].x * giant.z;
      acc *= t;
      mod_reduce(acc, n);
    }
    Point next = (giant_prev.x == 0 && giant_prev.z == 0) ? curve.dbl(giant)
                                                         : curve.add(giant, qd, giant_prev);
    giant_prev = giant;
    giant = next;
  }
  g = gcd(acc, n);
  return nontrivial(g, n);
}

}  // namespace emgraph
