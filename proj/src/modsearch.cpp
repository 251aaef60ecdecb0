#include "emgraph/modsearch.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "emgraph/arith.hpp"
#include "emgraph/classify.hpp"
#include "emgraph/errors.hpp"

namespace emgraph {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Mask = std::uint32_t;

// Largest k whose primorial-sized product still fits in 64 bits.
constexpr std::size_t kMaxSearchFactors = 15;

class ChainSearch {
 public:
  ChainSearch(std::span<const u64> primes, bool irreducible_only)
      : primes_(primes.begin(), primes.end()),
        k_(primes.size()),
        full_((Mask{1} << k_) - 1),
        irreducible_only_(irreducible_only) {
    build_residues();
    build_buckets();
  }

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> run() {
    order_.clear();
    chain_.clear();
    dfs(0);
    return std::move(found_);
  }

 private:
  struct Link {
    Mask d;         // primes before `prime` in Q
    std::size_t prime;
  };

  // res_[mask * k + j] = (product of primes in mask) mod primes[j]
  void build_residues() {
    res_.assign((std::size_t{1} << k_) * k_, 0);
    for (std::size_t j = 0; j < k_; ++j) res_[j] = 1 % primes_[j];
    for (Mask mask = 1; mask <= full_; ++mask) {
      int low = std::countr_zero(mask);
      Mask rest = mask & (mask - 1);
      for (std::size_t j = 0; j < k_; ++j) {
        u64 p = primes_[j];
        res_[mask * k_ + j] =
            static_cast<u64>(static_cast<u128>(res_[rest * k_ + j]) * (primes_[low] % p) % p);
      }
    }
  }

  void build_buckets() {
    buckets_.assign(k_, {});
    for (std::size_t j = 0; j < k_; ++j) {
      Mask bit = Mask{1} << j;
      for (Mask mask = 0; mask <= full_; ++mask) {
        if (mask & bit) continue;
        buckets_[j].emplace_back(res_[mask * k_ + j], mask);
      }
      std::sort(buckets_[j].begin(), buckets_[j].end());
    }
  }

  bool consistent(Mask d, std::size_t j) const {
    Mask with = d | (Mask{1} << j);
    for (const Link& c : chain_) {
      if (c.d == d) return false;
      Mask c_with = c.d | (Mask{1} << c.prime);
      if ((c.d & ~d) == 0) {
        if ((c_with & ~d) != 0) return false;
      } else if ((d & ~c.d) == 0) {
        if ((with & ~c.d) != 0) return false;
      } else {
        return false;
      }
    }
    return true;
  }

  void dfs(Mask prefix) {
    std::size_t i = order_.size();
    if (i == k_) {
      leaf();
      return;
    }
    for (std::size_t j = 0; j < k_; ++j) {
      if (prefix & (Mask{1} << j)) continue;
      u64 r = res_[prefix * k_ + j];
      const auto& bucket = buckets_[j];
      auto lo = std::lower_bound(bucket.begin(), bucket.end(), std::make_pair(r, Mask{0}));
      for (auto it = lo; it != bucket.end() && it->first == r; ++it) {
        Mask d = it->second;
        if (irreducible_only_ && d == prefix) continue;
        if (!consistent(d, j)) continue;
        order_.push_back(j);
        chain_.push_back({d, j});
        dfs(prefix | (Mask{1} << j));
        chain_.pop_back();
        order_.pop_back();
      }
    }
  }

  void leaf() {
    std::vector<std::size_t> q(k_);
    std::vector<Mask> q_prefix(k_);
    for (const Link& c : chain_) {
      auto pos = static_cast<std::size_t>(std::popcount(c.d));
      q[pos] = c.prime;
      q_prefix[pos] = c.d;
    }
    if (q == order_) return;
    // Each unordered pair is reached from both ends; keep one.
    if (!(order_ < q)) return;
    if (irreducible_only_) {
      Mask p_prefix = 0;
      for (std::size_t s = 1; s < k_; ++s) {
        p_prefix |= Mask{1} << order_[s - 1];
        if (p_prefix == q_prefix[s]) return;
      }
    }
    found_.emplace_back(order_, std::move(q));
  }

  std::vector<u64> primes_;
  std::size_t k_;
  Mask full_;
  bool irreducible_only_;
  std::vector<u64> res_;
  std::vector<std::vector<std::pair<u64, Mask>>> buckets_;
  std::vector<std::size_t> order_;
  std::vector<Link> chain_;
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> found_;
};

PrimeTuple tuple_from_indices(std::span<const u64> primes, const std::vector<std::size_t>& idx) {
  std::vector<Nat> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(from_u64(primes[i]));
  return PrimeTuple::trusted(std::move(out));
}

void sort_records(std::vector<PairRecord>& records) {
  std::sort(records.begin(), records.end(), [](const PairRecord& a, const PairRecord& b) {
    if (a.modulus != b.modulus) return a.modulus < b.modulus;
    if (a.p != b.p) return a.p < b.p;
    return a.q < b.q;
  });
}

void check_modulus(const Nat& m, const Factorization& fz) {
  if (!fz.complete()) {
    throw IncompleteFactorization("modulus " + to_decimal(m) + " is not completely factored");
  }
  if (fz.input != m) {
    throw std::invalid_argument("factorization does not match modulus " + to_decimal(m));
  }
  if (!fz.squarefree()) throw NotSquarefree("modulus " + to_decimal(m) + " is not squarefree");
}

}  // namespace

std::vector<PairRecord> search_modulus(std::span<const u64> primes, bool irreducible_only) {
  std::vector<PairRecord> out;
  if (primes.size() < 3) return out;
  if (primes.size() > kMaxSearchFactors) {
    throw TooManyFactors("search_modulus: more than 15 prime factors");
  }
  ChainSearch search(primes, irreducible_only);
  for (auto& [pi, qi] : search.run()) {
    auto p = tuple_from_indices(primes, pi);
    auto q = tuple_from_indices(primes, qi);
    auto kind = classify_pair_kind(p, q);
    out.push_back(make_pair_record(std::move(p), std::move(q), kind));
  }
  sort_records(out);
  return out;
}

std::vector<PairRecord> search_modulus(const Nat& m, const Factorization& fz,
                                       bool irreducible_only) {
  check_modulus(m, fz);
  std::vector<u64> primes;
  for (const auto& f : fz.factors) {
    auto v = to_u64(f.prime);
    if (!v) throw std::invalid_argument("search_modulus: prime factor exceeds 64 bits");
    primes.push_back(*v);
  }
  std::sort(primes.begin(), primes.end());
  if (primes.size() >= 3) {
    u128 prod = 1;
    for (u64 p : primes) {
      prod *= p;
      if (prod >> 64) throw std::invalid_argument("search_modulus: modulus exceeds 64 bits");
    }
  }
  return search_modulus(std::span<const u64>(primes), irreducible_only);
}

std::vector<PairRecord> brute_force_pairs(const Nat& m, const Factorization& fz) {
  check_modulus(m, fz);
  if (fz.factors.size() > kMaxBruteForceFactors) {
    throw TooManyFactors("brute_force_pairs: more than 8 prime factors");
  }
  std::vector<Nat> order = fz.primes();
  std::sort(order.begin(), order.end());
  std::map<Nat, std::vector<PrimeTuple>> classes;
  do {
    auto t = PrimeTuple::trusted(order);
    classes[residue_class(t).a].push_back(std::move(t));
  } while (std::next_permutation(order.begin(), order.end()));

  std::vector<PairRecord> out;
  for (const auto& [a, tuples] : classes) {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      for (std::size_t j = i + 1; j < tuples.size(); ++j) {
        out.push_back(make_pair_record(tuples[i], tuples[j],
                                       classify_pair_kind(tuples[i], tuples[j])));
      }
    }
  }
  sort_records(out);
  return out;
}

std::string DensityReport::inverse_density() const {
  if (integral()) return to_decimal(numerator);
  return to_decimal(numerator) + "/" + to_decimal(denominator);
}

DensityReport density_report(std::span<const PairRecord> records) {
  DensityReport rep;
  if (records.empty()) {
    rep.numerator = 0;
    return rep;
  }
  rep.modulus = records.front().modulus;
  std::set<Nat> classes;
  for (const auto& r : records) {
    if (r.modulus != rep.modulus) {
      throw std::invalid_argument("density_report: records span several moduli");
    }
    for (const auto& rc : r.residues) classes.insert(rc.a);
  }
  Nat phi = 1;
  for (const auto& p : records.front().p.primes()) phi *= p - 1;
  rep.class_count = classes.size();
  Nat count = static_cast<unsigned long>(rep.class_count);
  Nat g;
  mpz_gcd(g.get_mpz_t(), phi.get_mpz_t(), count.get_mpz_t());
  rep.numerator = phi / g;
  rep.denominator = count / g;
  return rep;
}

namespace {

constexpr u64 kBlockSize = u64{1} << 15;

std::vector<PairRecord> search_block(u64 lo, u64 hi, const SearchConfig& cfg) {
  std::vector<PairRecord> out;
  SquarefreeStream stream(lo, hi, cfg.min_k, cfg.coprime_to);
  while (auto e = stream.next()) {
    auto recs = search_modulus(std::span<const u64>(e->primes), cfg.irreducible_only);
    for (auto& r : recs) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

void search_range(const SearchConfig& cfg, const RecordSink& sink, const ProgressSink& progress) {
  if (cfg.min_k < 3) throw std::invalid_argument("search_range: min_k must be at least 3");
  if (cfg.lo > cfg.hi) throw std::invalid_argument("search_range: lo exceeds hi");
  auto hi_opt = to_u64(cfg.hi);
  if (!hi_opt || *hi_opt == UINT64_MAX) {
    throw std::invalid_argument("search_range: hi must be below 2^64 - 1");
  }
  u64 lo = std::max<u64>(to_u64(cfg.lo).value_or(0), 2);
  u64 hi = *hi_opt;
  if (lo > hi) return;
  u64 blocks = (hi - lo) / kBlockSize + 1;
  auto block_lo = [&](u64 b) { return lo + b * kBlockSize; };
  auto block_hi = [&](u64 b) { return std::min(hi, block_lo(b) + kBlockSize - 1); };

  unsigned workers = std::max(1u, cfg.worker_count);
  if (workers == 1 || blocks == 1) {
    for (u64 b = 0; b < blocks; ++b) {
      for (const auto& r : search_block(block_lo(b), block_hi(b), cfg)) sink(r);
      if (progress) progress(block_hi(b));
    }
    return;
  }

  const u64 window = 4ull * workers;
  std::mutex mu;
  std::condition_variable cv;
  std::map<u64, std::vector<PairRecord>> ready;
  u64 next_block = 0;
  u64 emitted = 0;
  bool stop = false;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      u64 b;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop || next_block >= blocks || next_block < emitted + window; });
        if (stop || next_block >= blocks) return;
        b = next_block++;
      }
      std::vector<PairRecord> recs;
      try {
        recs = search_block(block_lo(b), block_hi(b), cfg);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      ready.emplace(b, std::move(recs));
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  auto shutdown = [&] {
    {
      std::lock_guard lock(mu);
      stop = true;
    }
    cv.notify_all();
    for (auto& t : pool) t.join();
  };

  try {
    while (emitted < blocks) {
      std::vector<PairRecord> recs;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return failure || ready.count(emitted) > 0; });
        if (failure) break;
        auto node = ready.extract(emitted);
        recs = std::move(node.mapped());
      }
      for (const auto& r : recs) sink(r);
      if (progress) progress(block_hi(emitted));
      {
        std::lock_guard lock(mu);
        ++emitted;
      }
      cv.notify_all();
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
  if (failure) std::rethrow_exception(failure);
}

std::vector<PairRecord> search_range(const SearchConfig& cfg) {
  std::vector<PairRecord> out;
  search_range(cfg, [&](const PairRecord& r) { out.push_back(r); });
  return out;
}

std::optional<SearchCheckpoint> read_search_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  SearchCheckpoint cp;
  if (!(in >> cp.last_modulus >> cp.line_count)) {
    throw FormatError(path.string() + ": malformed search checkpoint");
  }
  return cp;
}

void write_search_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << cp.last_modulus << ' ' << cp.line_count << '\n';
    out.flush();
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace emgraph
