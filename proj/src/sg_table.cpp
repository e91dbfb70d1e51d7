#include "imark/sg_table.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "imark/error.hpp"

namespace imark {

namespace {

// Seen-value set for mex over at most 256 distinct values.
template <std::size_t Words>
struct SeenSet {
    std::array<std::uint64_t, Words> w{};

    void insert(SgValue v) noexcept { w[v >> 6] |= std::uint64_t{1} << (v & 63); }

    SgValue mex() const noexcept {
        for (std::size_t i = 0; i < Words; ++i)
            if (~w[i]) return static_cast<SgValue>(i * 64 + std::countr_one(w[i]));
        return static_cast<SgValue>(Words * 64);
    }
};

SgValue recompute(const SgTable& table, Position n) {
    const auto opts = options(table.spec(), n);
    std::vector<SgValue> values;
    values.reserve(opts.size());
    for (auto w : opts) values.push_back(table[w]);
    return mex(values);
}

}  // namespace

SgValue mex(std::span<const SgValue> values) {
    // mex of k values is at most k, so anything larger can be ignored.
    std::vector<bool> seen(values.size() + 1, false);
    for (auto v : values)
        if (v < seen.size()) seen[v] = true;
    return static_cast<SgValue>(std::find(seen.begin(), seen.end(), false) - seen.begin());
}

std::uint64_t sg_bound(const GameSpec& spec) { return spec.subtractions().size() + spec.divisors().size(); }

unsigned packing_width(std::uint64_t bound) {
    if (bound <= 3) return 2;
    if (bound <= 15) return 4;
    if (bound <= 255) return 8;
    throw Error(Errc::ResourceLimit, "SG bound " + std::to_string(bound) + " exceeds 8-bit packing");
}

std::uint64_t packed_size(Position limit, unsigned bits_per_value) {
    if (limit >= kMaxPosition) throw Error(Errc::Overflow, "table limit " + std::to_string(limit) + " too large");
    return ((limit + 1) * bits_per_value + 7) / 8;
}

SgTable SgTable::build(const GameSpec& spec, Position limit, const BuildOptions& opts) {
    SgTable table(spec, packing_width(sg_bound(spec)));
    const auto size = packed_size(limit, table.bits_);
    if (size > opts.mem_limit_bytes)
        throw Error(Errc::ResourceLimit, "table to " + std::to_string(limit) + " needs " + std::to_string(size) +
                                             " bytes, budget is " + std::to_string(opts.mem_limit_bytes));
    table.bytes_.assign(size, 0);
    table.limit_ = limit;
    table.fill(0, limit);
    return table;
}

SgTable SgTable::from_packed(GameSpec spec, Position limit, unsigned bits_per_value, std::vector<std::uint8_t> bytes) {
    const auto expected = packing_width(sg_bound(spec));
    if (bits_per_value != expected)
        throw Error(Errc::CorruptFile, "width " + std::to_string(bits_per_value) + " does not match spec (expected " +
                                           std::to_string(expected) + ")");
    if (bytes.size() != packed_size(limit, bits_per_value))
        throw Error(Errc::CorruptFile, "payload length does not match limit");
    SgTable table(std::move(spec), bits_per_value);
    table.limit_ = limit;
    table.bytes_ = std::move(bytes);
    return table;
}

void SgTable::extend(Position new_limit, const BuildOptions& opts) {
    if (new_limit <= limit_) return;
    const auto size = packed_size(new_limit, bits_);
    if (size > opts.mem_limit_bytes)
        throw Error(Errc::ResourceLimit, "extending to " + std::to_string(new_limit) + " needs " +
                                             std::to_string(size) + " bytes");
    const auto from = limit_ + 1;
    bytes_.resize(size, 0);
    limit_ = new_limit;
    fill(from, new_limit);
}

SgValue SgTable::at(Position n) const {
    if (n > limit_)
        throw Error(Errc::OutOfRange, "position " + std::to_string(n) + " beyond table limit " + std::to_string(limit_));
    return (*this)[n];
}

void SgTable::fill(Position from, Position to) {
    const auto& sub = spec_.subtractions();
    const auto& div = spec_.divisors();
    auto run = [&]<std::size_t Words>() {
        for (Position n = from; n <= to; ++n) {
            SeenSet<Words> seen;
            for (auto s : sub) {
                if (s > n) break;
                seen.insert((*this)[n - s]);
            }
            if (n > 0)
                for (auto d : div)
                    if (n % d == 0) seen.insert((*this)[n / d]);
            set(n, seen.mex());
        }
    };
    if (bits_ <= 4)
        run.template operator()<1>();
    else
        run.template operator()<4>();
}

std::optional<Position> find_inconsistency(const SgTable& table, std::span<const Position> positions) {
    for (auto n : positions) {
        if (n > table.limit()) continue;
        if (table[n] != recompute(table, n)) return n;
    }
    return std::nullopt;
}

std::optional<Position> find_inconsistency(const SgTable& table) {
    for (Position n = 0; n <= table.limit(); ++n)
        if (table[n] != recompute(table, n)) return n;
    return std::nullopt;
}

}  // namespace imark
