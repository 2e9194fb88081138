#pragma once

// Line-JSON store of exact extremal values keyed by the canonical pattern.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "patex/extremal.hpp"

namespace patex {

/// One line of the cache file:
/// {"pattern": "RxC:bits", "n": n, "value": v, "exact": true, "witness": [...]}
/// The pattern is canonical and the witness avoids it.
struct CacheRecord {
  std::string pattern;
  std::size_t n = 0;
  std::size_t value = 0;
  bool exact = false;
  std::optional<Matrix01> witness;
};

std::string format_cache_record(const CacheRecord& record);

/// Reads every record. Malformed lines are skipped, each with a warning
/// naming its 1-based line number. A missing file is an empty cache; an
/// unreadable one throws Error(Io).
std::vector<CacheRecord> read_cache(const std::filesystem::path& path,
                                    std::vector<std::string>& warnings);

/// Appends one record with a single O_APPEND write. Throws Error(Io).
void append_cache_record(const std::filesystem::path& path, const CacheRecord& record);

/// $PATEX_CACHE, else $XDG_CACHE_HOME/patex/ex_cache.jsonl, else
/// $HOME/.cache/patex/ex_cache.jsonl.
std::filesystem::path default_cache_path();

struct CachedExtremal {
  ExtremalResult result;
  bool cache_hit = false;
  std::vector<std::string> warnings;
};

/// Looks up (canonical(P), n). On a miss the canonical pattern is solved by
/// ex_exact warm-started from ex_lower_greedy(n, canonical(P), seed), and an
/// exact result is appended. The witness is mapped back onto P's orientation,
/// so hits and misses print the same witness. Cache I/O failures become
/// warnings; the computation still runs. `path == nullopt` disables the cache.
CachedExtremal cache_lookup_or_compute(std::size_t n, const Matrix01& pattern,
                                       const std::optional<std::filesystem::path>& path,
                                       std::uint64_t node_budget = kDefaultNodeBudget,
                                       std::uint64_t seed = 0);

}  // namespace patex
