#pragma once

#include <filesystem>
#include <iosfwd>

#include "imark/sg_table.hpp"

namespace imark {

// Cache file layout, all integers little-endian:
//   "IMRK" | u8 version=1 | u8 bits_per_value | u32 |S| | u32 |D|
//   | u64 S... | u64 D... | u64 N | ceil((N+1)*bits/8) packed bytes
inline constexpr std::uint8_t kCacheVersion = 1;

enum class LoadCheck {
    None,
    Spot,  // deterministic sample of positions
    Full,  // every position
};

void save_table(const SgTable& table, std::ostream& out);
void save_table(const SgTable& table, const std::filesystem::path& path);

/// Throws CorruptFile on bad magic, version, width, set contents, length, or
/// a failed consistency check.
SgTable load_table(std::istream& in, LoadCheck check = LoadCheck::Spot);
SgTable load_table(const std::filesystem::path& path, LoadCheck check = LoadCheck::Spot);

enum class CacheAction { Reused, Extended, Built };

struct CachedTable {
    SgTable table;
    CacheAction action;
};

/// Loads `path` if it exists, extending it when it does not reach `limit`, or
/// builds a fresh table. The file is rewritten whenever its contents changed.
/// Throws SpecMismatch when the cached spec differs from `spec`.
CachedTable load_or_build(const std::filesystem::path& path, const GameSpec& spec, Position limit,
                          const BuildOptions& opts = {});

}  // namespace imark
