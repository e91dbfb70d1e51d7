#include "imark/table_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "imark/error.hpp"

namespace imark {

namespace {

constexpr std::array<char, 4> kMagic{'I', 'M', 'R', 'K'};
constexpr std::size_t kSpotSamples = 4096;
// Sanity cap on set sizes read from a header, far beyond any packable spec.
constexpr std::uint32_t kMaxSetSize = 1u << 16;

template <typename UInt>
void put_le(std::ostream& out, UInt v) {
    std::array<char, sizeof(UInt)> buf;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf.data(), buf.size());
}

template <typename UInt>
UInt get_le(std::istream& in, const char* field) {
    std::array<unsigned char, sizeof(UInt)> buf;
    if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
        throw Error(Errc::CorruptFile, std::string("truncated at ") + field);
    UInt v = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) v |= static_cast<UInt>(buf[i]) << (8 * i);
    return v;
}

std::vector<std::int64_t> read_set(std::istream& in, std::uint32_t count, const char* field) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto v = get_le<std::uint64_t>(in, field);
        if (v > static_cast<std::uint64_t>(INT64_MAX)) throw Error(Errc::CorruptFile, std::string(field) + " element too large");
        if (!out.empty() && static_cast<std::int64_t>(v) <= out.back())
            throw Error(Errc::CorruptFile, std::string(field) + " not strictly ascending");
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

std::vector<Position> spot_positions(Position limit) {
    std::vector<Position> out;
    if (limit + 1 <= kSpotSamples) {
        for (Position n = 0; n <= limit; ++n) out.push_back(n);
        return out;
    }
    // Evenly strided, always including both ends.
    const Position stride = limit / (kSpotSamples - 1);
    for (Position n = 0; n < limit; n += stride) out.push_back(n);
    out.push_back(limit);
    return out;
}

}  // namespace

void save_table(const SgTable& table, std::ostream& out) {
    const auto& spec = table.spec();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint8_t>(out, kCacheVersion);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(table.bits_per_value()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.subtractions().size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(spec.divisors().size()));
    for (auto s : spec.subtractions()) put_le<std::uint64_t>(out, s);
    for (auto d : spec.divisors()) put_le<std::uint64_t>(out, d);
    put_le<std::uint64_t>(out, table.limit());
    const auto bytes = table.bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(Errc::Io, "write failed");
}

void save_table(const SgTable& table, const std::filesystem::path& path) {
    // Write-then-rename so an interrupted save never leaves a half file behind.
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::Io, "cannot open " + tmp.string());
        save_table(table, out);
        out.flush();
        if (!out) throw Error(Errc::Io, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

SgTable load_table(std::istream& in, LoadCheck check) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw Error(Errc::CorruptFile, "bad magic");
    const auto version = get_le<std::uint8_t>(in, "version");
    if (version != kCacheVersion)
        throw Error(Errc::CorruptFile, "unsupported version " + std::to_string(version));
    const auto bits = get_le<std::uint8_t>(in, "bits_per_value");
    if (bits != 2 && bits != 4 && bits != 8)
        throw Error(Errc::CorruptFile, "invalid bits_per_value " + std::to_string(bits));
    const auto ns = get_le<std::uint32_t>(in, "|S|");
    const auto nd = get_le<std::uint32_t>(in, "|D|");
    if (ns > kMaxSetSize || nd > kMaxSetSize) throw Error(Errc::CorruptFile, "set size out of range");
    auto sub = read_set(in, ns, "S");
    auto div = read_set(in, nd, "D");

    std::optional<GameSpec> spec;
    try {
        spec = GameSpec::validate(std::move(sub), std::move(div));
    } catch (const Error& e) {
        throw Error(Errc::CorruptFile, std::string("invalid spec in header: ") + e.what());
    }
    if (packing_width(sg_bound(*spec)) != bits)
        throw Error(Errc::CorruptFile, "bits_per_value does not match spec");

    const auto limit = get_le<std::uint64_t>(in, "N");
    if (limit >= kMaxPosition) throw Error(Errc::CorruptFile, "N out of range");
    const auto size = packed_size(limit, bits);

    // Compare against the bytes actually present before allocating.
    const auto here = in.tellg();
    if (here != std::streampos(-1)) {
        in.seekg(0, std::ios::end);
        const auto end = in.tellg();
        in.seekg(here);
        const auto available = static_cast<std::uint64_t>(end - here);
        if (available != size)
            throw Error(Errc::CorruptFile, "payload is " + std::to_string(available) + " bytes, header implies " +
                                               std::to_string(size));
    }
    std::vector<std::uint8_t> bytes(size);
    if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size)))
        throw Error(Errc::CorruptFile, "truncated payload");
    if (in.peek() != std::char_traits<char>::eof()) throw Error(Errc::CorruptFile, "trailing bytes after payload");

    const auto used_bits = ((limit + 1) * bits) % 8;
    if (used_bits != 0 && (bytes.back() >> used_bits) != 0) throw Error(Errc::CorruptFile, "nonzero padding bits");

    auto table = SgTable::from_packed(std::move(*spec), limit, bits, std::move(bytes));
    std::optional<Position> bad;
    switch (check) {
        case LoadCheck::None: break;
        case LoadCheck::Spot: bad = find_inconsistency(table, spot_positions(limit)); break;
        case LoadCheck::Full: bad = find_inconsistency(table); break;
    }
    if (bad) throw Error(Errc::CorruptFile, "value at position " + std::to_string(*bad) + " fails mex check");
    return table;
}

SgTable load_table(const std::filesystem::path& path, LoadCheck check) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    return load_table(in, check);
}

CachedTable load_or_build(const std::filesystem::path& path, const GameSpec& spec, Position limit,
                          const BuildOptions& opts) {
    if (!std::filesystem::exists(path)) {
        auto table = SgTable::build(spec, limit, opts);
        save_table(table, path);
        return {std::move(table), CacheAction::Built};
    }
    auto table = load_table(path);
    if (!(table.spec() == spec))
        throw Error(Errc::SpecMismatch, path.string() + " holds " + table.spec().to_string() + ", requested " +
                                            spec.to_string());
    if (table.limit() >= limit) return {std::move(table), CacheAction::Reused};
    table.extend(limit, opts);
    save_table(table, path);
    return {std::move(table), CacheAction::Extended};
}

}  // namespace imark
