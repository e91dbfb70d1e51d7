#include <doctest.h>

#include "imark/closed_form.hpp"
#include "naive_oracle.hpp"
#include "test_util.hpp"

using namespace imark;

namespace {

using u128 = unsigned __int128;

// d + d^2 + ... + d^{m+1}, summed term by term.
u128 alpha_by_sum(unsigned m, u128 d) {
    u128 term = 1, sum = 0;
    for (unsigned i = 0; i <= m; ++i) {
        term *= d;
        sum += term;
    }
    return sum;
}

// t*d^{m+1} + d + ... + d^m
u128 beta_by_sum(unsigned m, u128 t, u128 d) {
    u128 term = 1, sum = 0;
    for (unsigned i = 0; i < m; ++i) {
        term *= d;
        sum += term;
    }
    return sum + t * term * d;
}

std::vector<Position> values(const std::vector<Threshold>& ths) {
    std::vector<Position> out;
    for (const auto& th : ths) out.push_back(th.value);
    return out;
}

std::vector<std::string> labels(const std::vector<Threshold>& ths) {
    std::vector<std::string> out;
    for (const auto& th : ths) out.push_back(label(th));
    return out;
}

const std::pair<std::uint64_t, std::uint64_t> kTheorem1Pairs[] = {{2, 3}, {2, 5}, {3, 4}, {3, 7}, {4, 5},
                                                                  {5, 6}, {5, 11}, {2, 9}, {6, 13}};

}  // namespace

TEST_CASE("alpha and beta values") {
    CHECK(alpha(0, 5, 6) == 6);
    CHECK(alpha(1, 5, 6) == 42);
    CHECK(beta(0, 5, 6) == 30);
    CHECK(beta(1, 2, 3) == 21);
    CHECK(error_of([] { alpha(0, 2, 2); }) == Errc::PreconditionViolated);
    CHECK(error_of([] { beta(0, 3, 5); }) == Errc::PreconditionViolated);
    CHECK(error_of([] { alpha(0, 1, 3); }) == Errc::PreconditionViolated);
    CHECK(error_of([] { alpha(200, 2, 3); }) == Errc::Overflow);
    CHECK(error_of([] { beta(60, 5, 11); }) == Errc::Overflow);
}

TEST_CASE("alpha/beta: closed formula, term sums, recurrence, congruences, ordering") {
    for (auto [t, d] : kTheorem1Pairs) {
        Position prev = 0;
        for (unsigned m = 0;; ++m) {
            Position a, b;
            try {
                a = alpha(m, t, d);
                b = beta(m, t, d);
            } catch (const Error& e) {
                CHECK(e.code() == Errc::Overflow);
                break;
            }
            CHECK(u128{a} == alpha_by_sum(m, d));
            CHECK(u128{b} == beta_by_sum(m, t, d));
            CHECK(a % t == (m + 1) % t);
            CHECK(b % t == m % t);
            CHECK(prev < a);
            CHECK(a < b);
            prev = b;
            if (m > 0) {
                CHECK(a == d * (alpha(m - 1, t, d) + 1));
                CHECK(b == d * (beta(m - 1, t, d) + 1));
            }
        }
    }
}

TEST_CASE("interval lengths divide evenly") {
    for (auto [t, d] : kTheorem1Pairs) {
        const auto ths = thresholds(family::Theorem1{t, d}, kMaxPosition);
        CHECK((ths.at(0).value - 1) % t == 0);  // A_0 = [0, alpha_0 - 1]
        for (std::size_t i = 0; i + 1 < ths.size(); ++i) {
            const auto lo = ths[i].value, hi = ths[i + 1].value;
            if (ths[i].mark == Mark::Alpha)
                CHECK((hi - lo - t + 1) % t == 0);  // z'_m
            else
                CHECK((hi - lo - 2) % t == 0);  // z_{m+1}
        }
    }
    for (std::uint64_t k : {3, 7, 11, 15, 19}) {
        const auto ths = thresholds(family::Theorem2{k}, kMaxPosition);
        CHECK((ths.at(0).value - 2) % 4 == 0);
        for (std::size_t i = 0; i + 1 < ths.size(); ++i) CHECK((ths[i + 1].value - ths[i].value - 2) % 4 == 0);
    }
    for (std::uint64_t k : {5, 9, 13, 17}) {
        const auto ths = thresholds(family::Theorem3{k}, kMaxPosition);
        const auto a0 = ths.at(0).value, b = ths.at(1).value, c0 = ths.at(2).value;
        CHECK((a0 - 1) % 4 == 0);
        CHECK((b - a0 - 1) % 4 == 0);
        CHECK((c0 - b - 2) % 4 == 0);
        for (std::size_t i = 2; i + 1 < ths.size(); ++i) CHECK((ths[i + 1].value - ths[i].value - 3) % 4 == 0);
    }
}

TEST_CASE("thresholds") {
    const auto t2 = thresholds(family::Theorem2{3}, 150);
    CHECK(values(t2) == std::vector<Position>{6, 12, 42, 132});
    CHECK(labels(t2) == std::vector<std::string>{"b", "c_0", "c_1", "c_2"});

    const auto t3 = thresholds(family::Theorem3{5}, 120);
    CHECK(values(t3) == std::vector<Position>{5, 10, 20, 35, 110});
    CHECK(labels(t3) == std::vector<std::string>{"a_0", "b", "c_0", "a_1", "c_1"});

    const auto t1 = thresholds(family::Theorem1{2, 3}, 7);
    CHECK(values(t1) == std::vector<Position>{3, 6});
    CHECK(labels(t1) == std::vector<std::string>{"alpha_0", "beta_0"});

    CHECK(thresholds(family::General{}, 1000).empty());
    CHECK(thresholds(family::Theorem2{3}, 5).empty());

    const auto all = thresholds(family::Theorem1{5, 11}, kMaxPosition);
    CHECK(all.back().value <= kMaxPosition);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].value < all[i].value);
}

TEST_CASE("sg_theorem1") {
    CHECK(sg_theorem1(6, 2, 3) == 2);
    CHECK(sg_theorem1(4, 2, 3) == 0);
    CHECK(sg_theorem1(5, 2, 3) == 1);
    CHECK(sg_theorem1(0, 2, 3) == 0);
    CHECK(sg_theorem1(0, 5, 11) == 0);
    CHECK(sg_theorem1(30, 5, 6) == 5);
    CHECK(error_of([] { sg_theorem1(4, 2, 4); }) == Errc::PreconditionViolated);
    CHECK(error_of([] { sg_theorem1(kMaxPosition + 1, 2, 3); }) == Errc::Overflow);
    CHECK_NOTHROW(sg_theorem1(kMaxPosition, 2, 3));
    CHECK(sg_theorem1(beta(14, 5, 11), 5, 11) == 5);

    // t = 2: alpha_m for m >= 1 is not a top-value position. {1}/{3}:
    // SG(12) = mex{SG(11), SG(4)} = mex{0, 0} = 1.
    CHECK(sg_theorem1(alpha(1, 2, 3), 2, 3) == 1);
    CHECK(sg_theorem1(alpha(0, 2, 3), 2, 3) == 2);
    CHECK(sg_theorem1(beta(1, 2, 3), 2, 3) == 2);
    CHECK(sg_theorem1(alpha(3, 2, 5), 2, 5) == 1);

    CHECK(to_string(locate_theorem1(4, 2, 3)) == "B_0");
    CHECK(to_string(locate_theorem1(3, 2, 3)) == "alpha_0");
    CHECK(to_string(locate_theorem1(7, 2, 3)) == "A_1");
    CHECK(locate_theorem1(9, 2, 3).offset(9) == 2);
}

TEST_CASE("sg_theorem2 and sg_theorem3") {
    CHECK(sg_theorem2(6, 3) == 2);
    CHECK(sg_theorem2(8, 3) == 0);
    CHECK(sg_theorem2(1, 3) == 0);
    CHECK(to_string(locate_theorem2(8, 3)) == "I_1");
    CHECK(to_string(locate_theorem2(50, 3)) == "I_3");
    CHECK(error_of([] { sg_theorem2(1, 5); }) == Errc::PreconditionViolated);

    CHECK(sg_theorem3(5, 5) == 2);
    CHECK(sg_theorem3(7, 5) == 0);
    CHECK(sg_theorem3(10, 5) == 2);
    CHECK(to_string(locate_theorem3(7, 5)) == "Y");
    CHECK(to_string(locate_theorem3(15, 5)) == "Z");
    CHECK(to_string(locate_theorem3(40, 5)) == "C_1");
    CHECK(to_string(locate_theorem3(111, 5)) == "A_2");
    CHECK(error_of([] { sg_theorem3(1, 7); }) == Errc::PreconditionViolated);
    CHECK(error_of([] { sg_theorem3(1, 1); }) == Errc::PreconditionViolated);
}

TEST_CASE("outcome_periodic") {
    CHECK(outcome_periodic(0, 2, 2) == Outcome::P);
    CHECK(outcome_periodic(5, 2, 2) == Outcome::P);
    CHECK(outcome_periodic(4, 2, 2) == Outcome::N);
    CHECK(error_of([] { outcome_periodic(0, 2, 3); }) == Errc::PreconditionViolated);
}

TEST_CASE("closed forms equal the naive oracle and pin down the top value") {
    constexpr Position kLimit = 30000;
    for (auto [t, d] : kTheorem1Pairs) {
        std::vector<std::uint64_t> sub;
        for (std::uint64_t s = 1; s < t; ++s) sub.push_back(s);
        const auto oracle = naive::sg_sequence(sub, {d}, kLimit);
        std::vector<Position> tops;
        for (const auto& th : thresholds(family::Theorem1{t, d}, kLimit))
            if (t > 2 || th.mark == Mark::Beta || th.index == 0) tops.push_back(th.value);
        for (Position n = 0; n <= kLimit; ++n) {
            REQUIRE(sg_theorem1(n, t, d) == oracle[n]);
            REQUIRE((oracle[n] == t) == std::binary_search(tops.begin(), tops.end(), n));
        }
    }
    for (std::uint64_t k : {3, 7, 11, 15}) {
        const auto oracle = naive::sg_sequence({2}, {k}, kLimit);
        const auto tops = values(thresholds(family::Theorem2{k}, kLimit));
        for (Position n = 0; n <= kLimit; ++n) {
            REQUIRE(sg_theorem2(n, k) == oracle[n]);
            REQUIRE((oracle[n] == 2) == std::binary_search(tops.begin(), tops.end(), n));
        }
    }
    for (std::uint64_t k : {5, 9, 13, 17}) {
        const auto oracle = naive::sg_sequence({2}, {k}, kLimit);
        const auto tops = values(thresholds(family::Theorem3{k}, kLimit));
        for (Position n = 0; n <= kLimit; ++n) {
            REQUIRE(sg_theorem3(n, k) == oracle[n]);
            REQUIRE((oracle[n] == 2) == std::binary_search(tops.begin(), tops.end(), n));
        }
    }
    for (auto [t, d] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 6}, {5, 7}, {2, 4}}) {
        std::vector<std::uint64_t> sub;
        for (std::uint64_t s = 1; s < static_cast<std::uint64_t>(t); ++s) sub.push_back(s);
        const auto oracle = naive::sg_sequence(sub, {static_cast<std::uint64_t>(d)}, kLimit);
        for (Position n = 0; n <= kLimit; ++n)
            REQUIRE((outcome_periodic(n, t, d) == Outcome::P) == (oracle[n] == 0));
    }
}

TEST_CASE("closed_form dispatch") {
    CHECK(closed_form_sg(family::Theorem1{2, 3}, 6) == SgValue{2});
    CHECK_FALSE(closed_form_sg(family::PeriodicOutcome{2, 2}, 6).has_value());
    CHECK(closed_form_outcome(family::PeriodicOutcome{2, 2}, 5) == Outcome::P);
    CHECK(closed_form_outcome(family::Theorem3{5}, 7) == Outcome::P);
    CHECK_FALSE(closed_form_outcome(family::General{}, 7).has_value());
}
