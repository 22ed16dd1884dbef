#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "latinfo/rng.hpp"

using namespace latinfo;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference outputs from the Random123 distribution (kat_vectors).
    const auto zero = Philox4x32(0)(0, 0);
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    const auto ones = Philox4x32(0xffffffffffffffffULL)(0xffffffffffffffffULL, 0xffffffffffffffffULL);
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    const auto pi = Philox4x32(0x299f31d0a4093822ULL)(0x85a308d3243f6a88ULL, 0x0370734413198a2eULL);
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
    auto a = make_stream(42, {1, 2});
    auto b = make_stream(42, {1, 2});
    auto c = make_stream(42, {2, 1});
    auto d = make_stream(43, {1, 2});
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        differs_c |= va != c.next_u64();
        differs_d |= va != d.next_u64();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("uniform and normal moments") {
    auto rng = make_stream(7, {});
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        su += u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bounded integers are unbiased and in range") {
    auto rng = make_stream(3, {});
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = rng.bounded(7);
        REQUIRE(v < 7);
        ++counts[v];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
    CHECK(rng.bounded(1) == 0);
}

TEST_CASE("fisher-yates yields a permutation") {
    auto rng = make_stream(11, {});
    const auto p = random_permutation(1000, rng);
    std::set<std::size_t> s(p.begin(), p.end());
    CHECK(s.size() == 1000);
    CHECK(*s.rbegin() == 999);
    CHECK_FALSE(std::is_sorted(p.begin(), p.end()));
}
