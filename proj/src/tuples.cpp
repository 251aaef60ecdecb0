#include "emgraph/tuples.hpp"

#include <algorithm>
#include <functional>

#include "emgraph/arith.hpp"
#include "emgraph/errors.hpp"

namespace emgraph {

PrimeTuple::PrimeTuple(std::vector<Nat> primes) : primes_(std::move(primes)) {
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i])) throw InvalidTuple(to_decimal(primes_[i]) + " is not prime");
    for (std::size_t j = 0; j < i; ++j) {
      if (primes_[i] == primes_[j]) throw InvalidTuple(to_decimal(primes_[i]) + " repeats");
    }
  }
  modulus_ = product(primes_);
}

PrimeTuple::PrimeTuple(std::initializer_list<unsigned long> primes)
    : PrimeTuple([&] {
        std::vector<Nat> v;
        for (auto p : primes) v.emplace_back(p);
        return v;
      }()) {}

PrimeTuple PrimeTuple::trusted(std::vector<Nat> primes) {
  PrimeTuple t;
  t.primes_ = std::move(primes);
  t.modulus_ = product(t.primes_);
  return t;
}

Nat PrimeTuple::prefix_product(std::size_t i) const {
  Nat p = 1;
  for (std::size_t j = 0; j < i && j < primes_.size(); ++j) p *= primes_[j];
  return p;
}

std::string PrimeTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ',';
    s += to_decimal(primes_[i]);
  }
  return s + ")";
}

std::strong_ordering PrimeTuple::operator<=>(const PrimeTuple& other) const {
  std::size_t n = std::min(primes_.size(), other.primes_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(primes_[i], other.primes_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return primes_.size() <=> other.primes_.size();
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = i;
  return Permutation(std::move(v));
}

Permutation Permutation::reversal(std::size_t k) {
  std::vector<std::size_t> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = k - 1 - i;
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> v(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) v[images_[i]] = i;
  return Permutation(std::move(v));
}

bool ResidueClass::contains(const Nat& n) const {
  Nat r = n % m;
  if (r < 0) r += m;
  return r == a;
}

ResidueClass residue_class(const PrimeTuple& p) {
  std::vector<Congruence> system;
  system.reserve(p.size());
  Nat prefix = 1;
  for (const auto& pi : p.primes()) {
    // n = -(p_1...p_{i-1})^{-1} (mod p_i)
    Nat r = pi - mod_inverse(prefix % pi, pi);
    if (r == pi) r = 0;
    system.push_back({r, pi});
    prefix *= pi;
  }
  auto [a, m] = crt(system);
  return {a, m};
}

namespace {

std::vector<Nat> sorted_primes(const PrimeTuple& p) {
  auto v = p.primes();
  std::sort(v.begin(), v.end());
  return v;
}

// Every ordering Q of `primes` that is a valid edge path from `start`; the
// walk keeps value = start * q_1...q_j and takes q_{j+1} | value + 1.
void walk_paths(const Nat& start, const std::vector<Nat>& primes,
                const std::function<void(const std::vector<Nat>&)>& emit) {
  std::vector<Nat> path;
  std::vector<bool> used(primes.size(), false);
  std::function<void(const Nat&)> go = [&](const Nat& value) {
    if (path.size() == primes.size()) {
      emit(path);
      return;
    }
    Nat next = value + 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (used[i] || !mpz_divisible_p(next.get_mpz_t(), primes[i].get_mpz_t())) continue;
      used[i] = true;
      path.push_back(primes[i]);
      go(Nat(value * primes[i]));
      path.pop_back();
      used[i] = false;
    }
  };
  go(start);
}

}  // namespace

bool equivalent(const PrimeTuple& p, const PrimeTuple& q) {
  if (p.size() != q.size()) return false;
  if (sorted_primes(p) != sorted_primes(q)) return false;
  return residue_class(p) == residue_class(q);
}

std::vector<PrimeTuple> equivalence_class(const PrimeTuple& p) {
  if (p.size() > kMaxPermutationLength) {
    throw TupleTooLong("equivalence_class: k = " + std::to_string(p.size()) + " exceeds " +
                       std::to_string(kMaxPermutationLength));
  }
  // Q ~ P exactly when a(P) lies in N(Q), so the class is the set of paths
  // from a(P) that use P's primes.
  std::vector<PrimeTuple> out;
  walk_paths(residue_class(p).a, sorted_primes(p),
             [&](const std::vector<Nat>& path) { out.push_back(PrimeTuple::trusted(path)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t multiplicity(const PrimeTuple& p) {
  if (p.size() > kMaxPermutationLength) {
    throw TupleTooLong("multiplicity: k = " + std::to_string(p.size()) + " exceeds " +
                       std::to_string(kMaxPermutationLength));
  }
  return equivalence_class(p).size();
}

bool is_irreducible_pair(const PrimeTuple& p, const PrimeTuple& q) {
  if (p == q || !equivalent(p, q)) return false;
  Nat pp = 1, qq = 1;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    pp *= p[i];
    qq *= q[i];
    if (pp == qq) return false;
  }
  return true;
}

PrimeTuple reverse(const PrimeTuple& p) {
  auto v = p.primes();
  std::reverse(v.begin(), v.end());
  return PrimeTuple::trusted(std::move(v));
}

std::string to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Triple: return "triple";
    case PairKind::QuadrupleI: return "quadruple-case-I";
    case PairKind::QuadrupleII: return "quadruple-case-II";
    case PairKind::QuadrupleIII: return "quadruple-case-III";
    case PairKind::QuadrupleIV: return "quadruple-case-IV";
    case PairKind::General: return "general";
  }
  return "general";
}

PairKind pair_kind_from_string(const std::string& s) {
  for (auto k : {PairKind::Triple, PairKind::QuadrupleI, PairKind::QuadrupleII,
                 PairKind::QuadrupleIII, PairKind::QuadrupleIV, PairKind::General}) {
    if (to_string(k) == s) return k;
  }
  throw FormatError("unknown pair kind '" + s + "'");
}

PairRecord make_pair_record(PrimeTuple a, PrimeTuple b, PairKind kind) {
  if (b < a) std::swap(a, b);
  PairRecord r;
  r.modulus = a.modulus();
  r.residues = {residue_class(a)};
  r.irreducible = is_irreducible_pair(a, b);
  r.kind = kind;
  r.p = std::move(a);
  r.q = std::move(b);
  return r;
}

}  // namespace emgraph
