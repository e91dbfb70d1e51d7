#include <doctest.h>

#include <random>

#include "imark/sg_table.hpp"
#include "naive_oracle.hpp"
#include "test_util.hpp"

using namespace imark;

namespace {

std::vector<SgValue> prefix(const SgTable& table) {
    std::vector<SgValue> out;
    for (Position n = 0; n <= table.limit(); ++n) out.push_back(table[n]);
    return out;
}

}  // namespace

TEST_CASE("mex") {
    CHECK(mex({}) == 0);
    const std::vector<SgValue> a{0, 1, 3};
    CHECK(mex(a) == 2);
    const std::vector<SgValue> b{1, 2};
    CHECK(mex(b) == 0);
    const std::vector<SgValue> c{2, 0, 1, 1, 0};
    CHECK(mex(c) == 3);
}

TEST_CASE("sg_bound and packing width") {
    CHECK(sg_bound(GameSpec::validate({1}, {2, 3})) == 3);
    CHECK(sg_bound(GameSpec::validate({2}, {5})) == 2);
    CHECK(sg_bound(GameSpec::validate({1, 2, 3, 4}, {6})) == 5);
    CHECK(packing_width(3) == 2);
    CHECK(packing_width(4) == 4);
    CHECK(packing_width(15) == 4);
    CHECK(packing_width(16) == 8);
    CHECK(packing_width(255) == 8);
    CHECK(error_of([] { packing_width(256); }) == Errc::ResourceLimit);
}

TEST_CASE("build_table: small known prefixes") {
    // Values cross-checked against an independent Python mex recursion.
    CHECK(prefix(build_table(GameSpec::validate({1}, {2, 3}), 12)) ==
          std::vector<SgValue>{0, 1, 0, 2, 1, 0, 1, 0, 2, 0, 1, 0, 2});
    CHECK(prefix(build_table(GameSpec::validate({2}, {3}), 12)) ==
          std::vector<SgValue>{0, 0, 1, 1, 0, 0, 2, 1, 0, 0, 1, 1, 2});
    CHECK(prefix(build_table(GameSpec::validate({1}, {7}), 0)) == std::vector<SgValue>{0});
}

TEST_CASE("sg and outcome lookups") {
    const auto m123 = build_table(GameSpec::validate({1}, {2, 3}), 100);
    CHECK(sg(m123, 3) == 2);
    CHECK(sg(m123, 0) == 0);
    CHECK(outcome(m123, 0) == Outcome::P);
    CHECK(outcome(m123, 3) == Outcome::N);
    CHECK(error_of([&] { sg(m123, 101); }) == Errc::OutOfRange);
    CHECK(error_of([&] { outcome(m123, 101); }) == Errc::OutOfRange);

    CHECK(sg(build_table(GameSpec::validate({2}, {5}), 10), 5) == 2);
    CHECK(outcome(build_table(GameSpec::validate({1}, {2}), 10), 5) == Outcome::P);
    // Pile 1 has no move when S = {2}.
    CHECK(sg(build_table(GameSpec::validate({2}, {3}), 10), 1) == 0);
}

TEST_CASE("build_table agrees with the naive oracle across random specs and widths") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::int64_t> sub, div;
        for (int i = 0, k = 1 + rng() % 6; i < k; ++i) sub.push_back(1 + rng() % 12);
        for (int i = 0, k = 1 + rng() % 4; i < k; ++i) div.push_back(2 + rng() % 12);
        const auto spec = GameSpec::validate(sub, div);
        const auto table = build_table(spec, 2000);
        CHECK(table.bits_per_value() == packing_width(sg_bound(spec)));
        const auto expected = naive::sg_sequence(spec.subtractions(), spec.divisors(), 2000);
        for (Position n = 0; n <= 2000; ++n) {
            REQUIRE(table[n] == expected[n]);
            REQUIRE(table[n] <= options(spec, n).size());
        }
    }
}

TEST_CASE("8-bit packing") {
    std::vector<std::int64_t> sub;
    for (int s = 1; s <= 20; ++s) sub.push_back(s);
    const auto spec = GameSpec::validate(sub, {3});
    const auto table = build_table(spec, 3000);
    CHECK(table.bits_per_value() == 8);
    const auto expected = naive::sg_sequence(spec.subtractions(), spec.divisors(), 3000);
    for (Position n = 0; n <= 3000; ++n) REQUIRE(table[n] == expected[n]);
}

TEST_CASE("per-residue bounds for {1}/{2,3}") {
    const auto table = build_table(GameSpec::validate({1}, {2, 3}), 200000);
    const SgValue bound[6] = {3, 1, 2, 2, 2, 1};
    for (Position n = 0; n <= table.limit(); ++n) REQUIRE(table[n] <= bound[n % 6]);
    CHECK_FALSE(find_inconsistency(table).has_value());
}

TEST_CASE("extend reuses the prefix and matches a fresh build") {
    const auto spec = GameSpec::validate({1, 2}, {2, 5});
    auto table = build_table(spec, 777);
    table.extend(5001);
    CHECK(table.limit() == 5001);
    CHECK(table == build_table(spec, 5001));
    table.extend(100);  // shrinking is a no-op
    CHECK(table.limit() == 5001);
}

TEST_CASE("memory budget is a hard limit") {
    const auto spec = GameSpec::validate({1}, {2, 3});
    BuildOptions tiny{1000};
    CHECK(error_of([&] { build_table(spec, 4000, tiny); }) == Errc::ResourceLimit);
    CHECK(build_table(spec, 3995, tiny).bytes().size() == 999);
    auto table = build_table(spec, 100, tiny);
    CHECK(error_of([&] { table.extend(10000, tiny); }) == Errc::ResourceLimit);
    CHECK(table.limit() == 100);
    CHECK(error_of([&] { build_table(spec, kMaxPosition); }) == Errc::Overflow);
}

TEST_CASE("find_inconsistency flags a tampered value") {
    const auto spec = GameSpec::validate({1}, {2, 3});
    const auto good = build_table(spec, 1000);
    std::vector<std::uint8_t> bytes(good.bytes().begin(), good.bytes().end());
    bytes[100] ^= 0x0c;  // bits 2-3: position 401
    const auto bad = SgTable::from_packed(spec, 1000, 2, bytes);
    CHECK(find_inconsistency(bad) == Position{401});
    const std::vector<Position> sample{0, 10, 401, 999};
    CHECK(find_inconsistency(bad, sample) == Position{401});
}
