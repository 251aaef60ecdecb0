#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emgraph/factor.hpp"
#include "emgraph/nat.hpp"
#include "emgraph/tuples.hpp"

namespace emgraph {

struct SearchConfig {
  Nat lo = 2;
  Nat hi = 2;
  unsigned min_k = 3;
  Nat coprime_to = 1;
  bool irreducible_only = false;
  unsigned worker_count = 1;
};

/// Every unordered pair {P, Q} of distinct equivalent orderings of the primes
/// of the squarefree modulus m (only irreducible pairs when asked), found by
/// the divisor-chain backtracking search. Sorted by (p, q). Moduli with fewer
/// than three prime factors yield nothing.
/// Throws NotSquarefree or IncompleteFactorization.
std::vector<PairRecord> search_modulus(const Nat& m, const Factorization& fz,
                                       bool irreducible_only);

// Same search on a squarefree modulus given by its ascending prime factors.
std::vector<PairRecord> search_modulus(std::span<const std::uint64_t> primes,
                                       bool irreducible_only);

/// Reference enumeration: all orderings grouped by residue class. Returns
/// every equivalent unordered pair; `irreducible` is set per record.
/// Throws TooManyFactors above eight prime factors.
std::vector<PairRecord> brute_force_pairs(const Nat& m, const Factorization& fz);

inline constexpr std::size_t kMaxBruteForceFactors = 8;

struct DensityReport {
  Nat modulus;
  std::size_t class_count = 0;
  // phi(modulus) / class_count in lowest terms.
  Nat numerator;
  Nat denominator = 1;

  bool integral() const { return denominator == 1; }
  std::string inverse_density() const;  // "1022976" or "15/2"
};

/// Density of loop starting points among the invertible residues. All
/// records must share one modulus; an empty span gives class_count 0.
DensityReport density_report(std::span<const PairRecord> records);

using RecordSink = std::function<void(const PairRecord&)>;
// Called after all moduli <= last_modulus have been emitted.
using ProgressSink = std::function<void(std::uint64_t last_modulus)>;

/// Runs search_modulus over every squarefree candidate in [lo, hi] with at
/// least min_k prime factors and coprime to coprime_to. Records arrive in
/// modulus order regardless of worker_count.
void search_range(const SearchConfig& cfg, const RecordSink& sink,
                  const ProgressSink& progress = {});
std::vector<PairRecord> search_range(const SearchConfig& cfg);

/// Resumption point for search_range: the last fully processed modulus and
/// how many output lines had been written by then.
struct SearchCheckpoint {
  std::uint64_t last_modulus = 0;
  std::uint64_t line_count = 0;
};

std::optional<SearchCheckpoint> read_search_checkpoint(const std::filesystem::path& path);
// Written to a temporary file and renamed into place.
void write_search_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& cp);

}  // namespace emgraph
