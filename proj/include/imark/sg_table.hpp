#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imark/game.hpp"

namespace imark {

using SgValue = std::uint32_t;

enum class Outcome { P, N };

inline constexpr char to_char(Outcome o) noexcept { return o == Outcome::P ? 'P' : 'N'; }

/// Smallest nonnegative integer absent from `values`. Duplicates are fine.
SgValue mex(std::span<const SgValue> values);

/// |S| + |D|: no position has more options, so no SG value exceeds it.
std::uint64_t sg_bound(const GameSpec& spec);

/// Smallest of {2, 4, 8} bits that holds every value up to `bound`.
/// Throws ResourceLimit when bound > 255.
unsigned packing_width(std::uint64_t bound);

struct BuildOptions {
    std::uint64_t mem_limit_bytes = std::uint64_t{1} << 30;
};

/// Packed bytes needed for positions 0..limit at the given width.
std::uint64_t packed_size(Position limit, unsigned bits_per_value);

/// SG values of positions 0..limit of one game, packed LSB-first within each
/// byte at 2, 4 or 8 bits per value. Immutable except through extend().
class SgTable {
public:
    /// Single ascending pass; every option of n is < n.
    static SgTable build(const GameSpec& spec, Position limit, const BuildOptions& opts = {});

    /// Adopts already-packed values (used by the cache loader). Validates the
    /// width and byte count but not the values themselves.
    static SgTable from_packed(GameSpec spec, Position limit, unsigned bits_per_value,
                               std::vector<std::uint8_t> bytes);

    /// Grows the table to `new_limit`, reusing the existing prefix.
    void extend(Position new_limit, const BuildOptions& opts = {});

    const GameSpec& spec() const noexcept { return spec_; }
    Position limit() const noexcept { return limit_; }
    unsigned bits_per_value() const noexcept { return bits_; }
    std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }

    /// Unchecked lookup.
    SgValue operator[](Position n) const noexcept {
        const auto bit = n * bits_;
        return (bytes_[bit >> 3] >> (bit & 7)) & mask_;
    }

    /// Throws OutOfRange when n > limit().
    SgValue at(Position n) const;

    friend bool operator==(const SgTable& a, const SgTable& b) {
        return a.limit_ == b.limit_ && a.bits_ == b.bits_ && a.spec_ == b.spec_ && a.bytes_ == b.bytes_;
    }

private:
    SgTable(GameSpec spec, unsigned bits) : spec_(std::move(spec)), bits_(bits), mask_((1u << bits) - 1) {}

    void set(Position n, SgValue v) noexcept {
        const auto bit = n * bits_;
        bytes_[bit >> 3] |= static_cast<std::uint8_t>(v << (bit & 7));
    }
    void fill(Position from, Position to);

    GameSpec spec_;
    Position limit_ = 0;
    unsigned bits_;
    unsigned mask_;
    std::vector<std::uint8_t> bytes_;
};

inline SgTable build_table(const GameSpec& spec, Position limit, const BuildOptions& opts = {}) {
    return SgTable::build(spec, limit, opts);
}

inline SgValue sg(const SgTable& table, Position n) { return table.at(n); }

inline Outcome outcome(const SgTable& table, Position n) {
    return table.at(n) == 0 ? Outcome::P : Outcome::N;
}

/// Recomputes mex over stored option values at each sampled position and
/// returns the first position whose stored value disagrees (or exceeds the
/// option count).
std::optional<Position> find_inconsistency(const SgTable& table, std::span<const Position> positions);

/// Same check over every position 0..limit.
std::optional<Position> find_inconsistency(const SgTable& table);

}  // namespace imark
