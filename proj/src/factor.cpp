#include "emgraph/factor.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "emgraph/arith.hpp"
#include "emgraph/errors.hpp"

namespace emgraph {

std::string EffortPolicy::fingerprint() const {
  std::ostringstream os;
  os << "trial=" << trial_bound << ";rho=" << rho_iterations << ";curves=" << ecm_curves
     << ";b1=" << ecm_b1;
  // FNV-1a, so the tag does not depend on the standard library's std::hash.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

bool Factorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::vector<Nat> Factorization::primes() const {
  std::vector<Nat> out;
  out.reserve(factors.size());
  for (const auto& pp : factors) out.push_back(pp.prime);
  return out;
}

// ---------------------------------------------------------------------------
// FactorCache

FactorCache::FactorCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(*path_);
  if (!in) return;  // created on first record()
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      auto [composite, factors] = parse_line(line);
      insert_locked(composite, factors);
    } catch (const std::exception& e) {
      throw FormatError(path_->string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::pair<Nat, std::vector<Nat>> FactorCache::parse_line(const std::string& line) {
  auto eq = line.find('=');
  if (eq == std::string::npos) throw FormatError("missing '='");
  Nat composite;
  std::vector<Nat> factors;
  try {
    composite = parse_nat(std::string_view(line).substr(0, eq));
    std::string_view rest = std::string_view(line).substr(eq + 1);
    while (true) {
      auto comma = rest.find(',');
      factors.push_back(parse_nat(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  for (const auto& f : factors) {
    if (f <= 1 || f >= composite || composite % f != 0) {
      throw FormatError(to_decimal(f) + " is not a nontrivial divisor of " + to_decimal(composite));
    }
  }
  return {std::move(composite), std::move(factors)};
}

std::string FactorCache::format_line(const Nat& composite, const std::vector<Nat>& factors) {
  std::string out = to_decimal(composite) + "=";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ',';
    out += to_decimal(factors[i]);
  }
  return out;
}

void FactorCache::insert_locked(const Nat& composite, const std::vector<Nat>& factors) {
  auto& slot = entries_[composite];
  for (const auto& f : factors) {
    if (std::find(slot.begin(), slot.end(), f) == slot.end()) slot.push_back(f);
  }
}

std::optional<std::vector<Nat>> FactorCache::lookup(const Nat& composite) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(composite);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void FactorCache::record(const Nat& composite, const std::vector<Nat>& factors) {
  for (const auto& f : factors) {
    if (f <= 1 || f >= composite || composite % f != 0) {
      throw std::invalid_argument("FactorCache::record: bad factor " + to_decimal(f));
    }
  }
  std::unique_lock lock(mutex_);
  auto it = entries_.find(composite);
  if (it != entries_.end() &&
      std::all_of(factors.begin(), factors.end(), [&](const Nat& f) {
        return std::find(it->second.begin(), it->second.end(), f) != it->second.end();
      })) {
    return;
  }
  insert_locked(composite, factors);
  if (path_) {
    std::ofstream out(*path_, std::ios::app);
    out << format_line(composite, factors) << '\n';
  }
}

std::size_t FactorCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

// ---------------------------------------------------------------------------
// factor()

namespace {

class Ladder {
 public:
  Ladder(const EffortPolicy& policy, FactorCache* cache)
      : policy_(policy), cache_(cache), start_(std::chrono::steady_clock::now()) {}

  std::map<Nat, unsigned> primes;
  std::vector<std::pair<Nat, unsigned>> stuck;

  // Splits `n` (coprime to all primes <= trial_bound) into primes.
  void run(const Nat& n, unsigned multiplicity) {
    std::vector<std::pair<Nat, unsigned>> work{{n, multiplicity}};
    while (!work.empty()) {
      auto [c, mult] = std::move(work.back());
      work.pop_back();
      if (c == 1) continue;
      if (is_prime(c)) {
        primes[c] += mult;
        continue;
      }
      if (auto root = perfect_power(c)) {
        work.emplace_back(root->first, mult * root->second);
        continue;
      }
      auto d = split(c);
      if (!d) {
        stuck.emplace_back(c, mult);
        continue;
      }
      Nat g = gcd(*d, c);
      work.emplace_back(g, mult);
      work.emplace_back(Nat(c / g), mult);
    }
  }

 private:
  bool out_of_time() const {
    if (policy_.time_budget <= 0) return false;
    std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start_;
    return spent.count() > policy_.time_budget;
  }

  static std::optional<std::pair<Nat, unsigned>> perfect_power(const Nat& c) {
    if (!mpz_perfect_power_p(c.get_mpz_t())) return std::nullopt;
    std::size_t bits = mpz_sizeinbase(c.get_mpz_t(), 2);
    for (unsigned long e = bits; e >= 2; --e) {
      Nat r;
      if (mpz_root(r.get_mpz_t(), c.get_mpz_t(), e) != 0) return std::make_pair(r, unsigned(e));
    }
    return std::nullopt;
  }

  std::optional<Nat> split(const Nat& c) {
    if (cache_) {
      if (auto known = cache_->lookup(c)) {
        for (const auto& f : *known) {
          Nat g = gcd(f, c);
          if (g > 1 && g < c) return g;
        }
      }
    }
    if (out_of_time()) return std::nullopt;
    std::optional<Nat> d;
    if (policy_.rho_iterations > 0) d = pollard_brent(c, policy_.rho_iterations);
    for (std::uint32_t curve = 0; !d && curve < policy_.ecm_curves; ++curve) {
      if (out_of_time()) return std::nullopt;
      d = ecm_one_curve(c, policy_.ecm_b1, curve);
    }
    if (d && cache_) cache_->record(c, {*d, Nat(c / *d)});
    return d;
  }

  const EffortPolicy& policy_;
  FactorCache* cache_;
  std::chrono::steady_clock::time_point start_;
};

// Divides out primes <= bound; returns the remaining part.
Nat trial_divide(const Nat& n, std::uint32_t bound, std::map<Nat, unsigned>& primes,
                 bool stop_at_first = false) {
  Nat rest = n;
  for (std::uint32_t p : primes_up_to(bound)) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      primes[Nat(static_cast<unsigned long>(p))] += e;
      if (stop_at_first) break;
    }
    Nat p2 = Nat(static_cast<unsigned long>(p)) * p;
    if (p2 > rest) {
      // Whatever is left has no factor <= p, so it is 1 or prime.
      if (rest > 1) primes[rest] += 1;
      rest = 1;
      break;
    }
  }
  return rest;
}

}  // namespace

Factorization factor(const Nat& n, const EffortPolicy& policy, FactorCache* cache) {
  if (n < 1) throw std::invalid_argument("factor: n must be >= 1");
  Factorization fz;
  fz.input = n;
  std::map<Nat, unsigned> primes;
  Nat rest = trial_divide(n, policy.trial_bound, primes);

  Ladder ladder(policy, cache);
  ladder.primes = std::move(primes);
  if (rest > 1) ladder.run(rest, 1);

  for (const auto& [p, e] : ladder.primes) fz.factors.push_back({p, e});
  for (const auto& [c, e] : ladder.stuck) {
    Nat ce;
    mpz_pow_ui(ce.get_mpz_t(), c.get_mpz_t(), e);
    fz.cofactor *= ce;
  }
  return fz;
}

std::optional<Nat> least_prime_factor(const Nat& n, const EffortPolicy& policy,
                                      FactorCache* cache) {
  if (n < 2) return std::nullopt;
  std::map<Nat, unsigned> small;
  Nat rest = trial_divide(n, policy.trial_bound, small, /*stop_at_first=*/true);
  if (!small.empty()) return small.begin()->first;  // found in ascending order
  if (is_prime(n)) return n;
  auto fz = factor(n, policy, cache);
  if (!fz.complete()) return std::nullopt;
  return fz.factors.front().prime;
}

}  // namespace emgraph
