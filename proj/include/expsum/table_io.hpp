#pragma once

#include <filesystem>
#include <string>

#include "expsum/families.hpp"

namespace expsum {

/// Binary table cache. Layout, all little-endian:
///   8 bytes magic "EXPSUM01"
///   u64 p
///   u32 family id
///   3 x i64 family parameters (b-or-m, member a, sign: 0 minus / 1 plus)
///   u8 method (0 direct, 1 chirp)
///   p pairs of IEEE-754 f64 (re, im)
/// Laurent families have no fixed parameter encoding and are not cacheable.

std::string cache_key(const FamilySpec& family, OddPrime p, std::int64_t member_a);

std::filesystem::path cache_path(const std::filesystem::path& dir, const FamilySpec& family, OddPrime p,
                                 std::int64_t member_a);

void cache_table(const SumTable& table, const std::filesystem::path& file);

/// Verifies magic and length, then re-checks the Weil-cap/realness invariant
/// on 64 seeded random entries. Corruption raises integrity_error.
SumTable load_table(const std::filesystem::path& file);

/// Cache directory resolution: explicit flag, else EXPSUM_CACHE_DIR, else
/// ./expsum-cache.
std::filesystem::path resolve_cache_dir(const std::string& flag_value);

}  // namespace expsum
