#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsd/design.hpp"
#include "tsd/exact_rank.hpp"
#include "tsd/trades.hpp"

namespace tsd {

struct CensusRecord {
  Design canonical;
  std::uint64_t automorphisms = 0;
  RankReport rank_report;  // N_2 over Q, plus primes 2 and 3
  std::vector<RepeatedBlock> repeated;
};

struct SpectrumReport {
  int v = 0;
  int lambda = 0;
  std::size_t class_count = 0;
  std::vector<std::size_t> rank_multiset;  // ascending
  std::vector<std::size_t> distinct_ranks;
  std::size_t nonsingular_count = 0;
};

struct EnumerationProgress {
  std::size_t roots_done = 0;
  std::size_t roots_total = 0;
  std::size_t classes = 0;
  std::uint64_t completions = 0;
};

struct EnumerationOptions {
  int threads = 1;
  /// Resumable search state; read on start if present, rewritten after each root.
  std::optional<std::filesystem::path> checkpoint;
  /// Seed for the rank screening prime.
  std::uint64_t seed = 0;
  std::function<void(const EnumerationProgress&)> progress;
};

struct ClassRepresentative {
  Design canonical;
  std::uint64_t automorphisms = 0;
};

/// One canonical representative per isomorphism class of TS_lambda(v), sorted
/// by canonical serialization, with automorphism group orders.
///
/// The search fixes the blocks through point 0 (a lambda-regular multigraph on
/// the remaining points) up to isomorphism, completes each such root with
/// triples in lexicographic pair order, keeps completions whose point 0 has a
/// minimal local invariant, and deduplicates by canonical form.
std::vector<ClassRepresentative> enumerate_classes(int v, int lambda, const EnumerationOptions& options = {});

/// enumerate_classes plus a certified rank report for each class.
std::vector<CensusRecord> enumerate_ts(int v, int lambda, const EnumerationOptions& options = {});

SpectrumReport summarize_spectrum(int v, int lambda, std::span<const CensusRecord> census);
SpectrumReport rank_spectrum(int v, int lambda, const EnumerationOptions& options = {});

/// `class_id  q_rank  rank_mod2  rank_mod3  aut_order  repeated_blocks` with a header row.
std::string census_summary_tsv(std::span<const CensusRecord> census);

/// One `class_<id>.ts` per record plus `summary.tsv`.
void write_census(const std::filesystem::path& dir, std::span<const CensusRecord> census);

struct RankDisagreement {
  std::size_t class_id = 0;
  std::uint64_t prime = 0;
  std::size_t q_rank = 0;
  std::size_t p_rank = 0;
};

/// Classes whose rank over F_p differs from the rank over Q, for each prime.
std::vector<RankDisagreement> compare_q_and_p_ranks(std::span<const CensusRecord> census,
                                                    std::span<const std::uint64_t> primes);

}  // namespace tsd
