#include <doctest.h>

#include <map>
#include <numeric>
#include <set>

#include "latinfo/errors.hpp"
#include "latinfo/lattice.hpp"

using namespace latinfo;

namespace {

SetPartition P(std::vector<std::vector<int>> one_based, int d) {
    for (auto& b : one_based) {
        for (int& e : b) --e;
    }
    return SetPartition::from_blocks(d, one_based);
}

// Brute force: every set partition via recursive insertion.
void all_partitions(int d, int i, std::vector<std::vector<int>>& cur, std::vector<std::vector<std::vector<int>>>& out) {
    if (i == d) {
        out.push_back(cur);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(i);
        all_partitions(d, i + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({i});
    all_partitions(d, i + 1, cur, out);
    cur.pop_back();
}

bool brute_refines(const SetPartition& s, const SetPartition& p) {
    for (const auto& b : s.blocks()) {
        bool inside = false;
        for (const auto& c : p.blocks()) {
            if (std::includes(c.begin(), c.end(), b.begin(), b.end())) inside = true;
        }
        if (!inside) return false;
    }
    return true;
}

// Integer inverse of a unit lower-triangular matrix by forward substitution.
std::vector<std::vector<long long>> invert_unitriangular(const std::vector<std::vector<long long>>& z) {
    const std::size_t n = z.size();
    std::vector<std::vector<long long>> inv(n, std::vector<long long>(n, 0));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            long long v = r == c ? 1 : 0;
            for (std::size_t k = 0; k < r; ++k) v -= z[r][k] * inv[k][c];
            inv[r][c] = v;
        }
    }
    return inv;
}

}  // namespace

TEST_CASE("bell numbers match enumeration and the binomial recurrence") {
    std::vector<std::uint64_t> b{1};
    for (int n = 0; n < 12; ++n) {
        std::uint64_t next = 0, binom = 1;
        for (int k = 0; k <= n; ++k) {
            next += binom * b[static_cast<std::size_t>(k)];
            binom = binom * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
        }
        b.push_back(next);
    }
    const std::vector<std::uint64_t> expected{1, 2, 5, 15, 52, 203, 877, 4140};
    for (int d = 1; d <= 8; ++d) {
        CHECK(bell_number(d) == expected[static_cast<std::size_t>(d - 1)]);
        CHECK(enumerate_partitions(d).size() == expected[static_cast<std::size_t>(d - 1)]);
    }
    for (int d = 1; d <= 12; ++d) CHECK(bell_number(d) == b[static_cast<std::size_t>(d)]);
}

TEST_CASE("enumeration agrees with brute-force recursive generation") {
    for (int d = 1; d <= 7; ++d) {
        std::vector<std::vector<int>> cur;
        std::vector<std::vector<std::vector<int>>> brute;
        all_partitions(d, 0, cur, brute);
        std::set<std::uint64_t> expected;
        for (const auto& p : brute) expected.insert(SetPartition::from_blocks(d, p).key());
        std::set<std::uint64_t> got;
        for (const auto& p : enumerate_partitions(d)) got.insert(p.key());
        CHECK(got == expected);
    }
}

TEST_CASE("canonical order: block count, then lexicographic rgs") {
    const auto d3 = enumerate_partitions(3);
    REQUIRE(d3.size() == 5);
    CHECK(d3[0].to_string() == "123");
    CHECK(d3[1].to_string() == "12|3");
    CHECK(d3[2].to_string() == "13|2");
    CHECK(d3[3].to_string() == "1|23");
    CHECK(d3[4].to_string() == "1|2|3");
    for (int d = 2; d <= 7; ++d) {
        const auto all = enumerate_partitions(d);
        for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
        CHECK(all.front() == SetPartition::top(d));
        CHECK(all.back() == SetPartition::bottom(d));
    }
    CHECK(enumerate_partitions(1).size() == 1);
}

TEST_CASE("rgs and blocks round trip") {
    for (int d = 1; d <= 7; ++d) {
        for (const auto& p : enumerate_partitions(d)) {
            const auto rgs = p.rgs();
            CHECK(rgs[0] == 0);
            int mx = 0;
            for (std::size_t i = 1; i < rgs.size(); ++i) {
                CHECK(rgs[i] <= mx + 1);
                mx = std::max(mx, rgs[i]);
            }
            CHECK(SetPartition::from_rgs(rgs) == p);
            CHECK(SetPartition::from_blocks(d, p.blocks()) == p);
            int covered = 0;
            for (const auto& b : p.blocks()) covered += static_cast<int>(b.size());
            CHECK(covered == d);
        }
    }
}

TEST_CASE("invalid partitions are rejected") {
    CHECK_THROWS_AS(SetPartition::from_rgs(std::vector<int>{1, 0}), InvalidArgument);
    CHECK_THROWS_AS(SetPartition::from_rgs(std::vector<int>{0, 2}), InvalidArgument);
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{0, 1}, {1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(enumerate_partitions(0), InvalidArgument);
    CHECK_THROWS_AS(enumerate_partitions(13), InvalidArgument);
    CHECK_THROWS_AS(build_lattice(10), InvalidArgument);
}

TEST_CASE("refines examples and brute-force agreement") {
    CHECK(refines(P({{1}, {2}, {3}}, 3), P({{1, 2}, {3}}, 3)));
    CHECK_FALSE(refines(P({{1, 2}, {3, 4}}, 4), P({{1, 2, 3}, {4}}, 4)));
    CHECK(refines(P({{1, 2}, {3}}, 3), P({{1, 2}, {3}}, 3)));
    CHECK_THROWS_AS(refines(SetPartition::top(3), SetPartition::top(4)), InvalidArgument);
    for (int d = 1; d <= 5; ++d) {
        const auto all = enumerate_partitions(d);
        for (const auto& a : all) {
            CHECK(refines(SetPartition::bottom(d), a));
            CHECK(refines(a, SetPartition::top(d)));
            for (const auto& b : all) CHECK(refines(a, b) == brute_refines(a, b));
        }
    }
}

TEST_CASE("join and meet examples") {
    CHECK(join(P({{1, 2}, {3}, {4}}, 4), P({{1}, {2}, {3, 4}}, 4)) == P({{1, 2}, {3, 4}}, 4));
    CHECK(meet(P({{1, 2}, {3, 4}}, 4), P({{1, 3}, {2, 4}}, 4)) == SetPartition::bottom(4));
    for (const auto& p : enumerate_partitions(4)) {
        CHECK(join(p, SetPartition::top(4)) == SetPartition::top(4));
        CHECK(meet(p, SetPartition::bottom(4)) == SetPartition::bottom(4));
    }
}

TEST_CASE("lattice axioms hold on all pairs for d <= 5") {
    for (int d = 1; d <= 5; ++d) {
        const auto all = enumerate_partitions(d);
        for (const auto& a : all) {
            CHECK(join(a, a) == a);
            CHECK(meet(a, a) == a);
            for (const auto& b : all) {
                const auto j = join(a, b), m = meet(a, b);
                CHECK(j == join(b, a));
                CHECK(m == meet(b, a));
                CHECK(join(a, m) == a);
                CHECK(meet(a, j) == a);
                CHECK(refines(a, j));
                CHECK(refines(m, a));
            }
        }
        // Associativity on a strided sample of triples.
        for (std::size_t i = 0; i < all.size(); i += 2) {
            for (std::size_t j = 0; j < all.size(); j += 3) {
                for (std::size_t k = 0; k < all.size(); k += 5) {
                    CHECK(join(join(all[i], all[j]), all[k]) == join(all[i], join(all[j], all[k])));
                    CHECK(meet(meet(all[i], all[j]), all[k]) == meet(all[i], meet(all[j], all[k])));
                }
            }
        }
    }
}

TEST_CASE("zeta is unitriangular and the two-element chain is lower triangular") {
    const auto l2 = build_lattice(2);
    REQUIRE(l2.size() == 2);
    CHECK(l2.zeta().at(0, 0) == 1);
    CHECK(l2.zeta().at(0, 1) == 0);
    CHECK(l2.zeta().at(1, 0) == 1);
    CHECK(l2.zeta().at(1, 1) == 1);
    for (int d = 1; d <= 6; ++d) {
        const auto lat = build_lattice(d);
        for (std::size_t i = 0; i < lat.size(); ++i) {
            CHECK(lat.zeta().at(i, i) == 1);
            for (const auto& e : lat.zeta().row(i)) CHECK(e.col <= i);
        }
    }
}

TEST_CASE("mobius matrix is the exact integer inverse of zeta for d <= 7") {
    for (int d = 1; d <= 7; ++d) {
        const auto lat = build_lattice(d);
        const std::size_t n = lat.size();
        // Sparse product zeta * mobius compared with the identity.
        std::vector<std::map<std::uint32_t, long long>> prod(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& z : lat.zeta().row(i)) {
                for (const auto& m : lat.mobius().row(z.col)) prod[i][m.col] += z.value * m.value;
            }
        }
        bool identity = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [c, v] : prod[i]) {
                if (v != (c == i ? 1 : 0)) identity = false;
            }
            if (prod[i][static_cast<std::uint32_t>(i)] != 1) identity = false;
        }
        CHECK_MESSAGE(identity, "d=" << d);
    }
}

TEST_CASE("closed-form mobius equals dense matrix inversion for d <= 6") {
    for (int d = 1; d <= 6; ++d) {
        const auto lat = build_lattice(d);
        const std::size_t n = lat.size();
        std::vector<std::vector<long long>> z(n, std::vector<long long>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) z[i][j] = refines(lat.element(i), lat.element(j)) ? 1 : 0;
        }
        const auto inv = invert_unitriangular(z);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(lat.mobius().at(i, j) == inv[i][j]);
                CHECK(lat.zeta().at(i, j) == z[i][j]);
                if (z[i][j]) {
                    CHECK(mobius_interval(lat.element(i), lat.element(j)) == inv[i][j]);
                }
            }
        }
    }
}

TEST_CASE("mobius interval examples") {
    CHECK(mobius_interval(SetPartition::bottom(4), SetPartition::top(4)) == -6);
    CHECK(mobius_interval(SetPartition::bottom(3), SetPartition::top(3)) == 2);
    const auto p = P({{1, 2}, {3}}, 3);
    CHECK(mobius_interval(p, p) == 1);
    CHECK_THROWS_AS(mobius_interval(SetPartition::top(3), SetPartition::bottom(3)), InvalidArgument);
    long long f = 1;
    for (int d = 1; d <= 8; ++d) {
        if (d > 1) f *= d - 1;
        const long long expected = (d % 2 == 1) ? f : -f;
        const auto lat = build_lattice(d);
        CHECK(lat.mobius().at(lat.bottom_index(), lat.top_index()) == expected);
    }
}

TEST_CASE("lancaster sublattice sizes") {
    for (int d = 1; d <= 8; ++d) {
        const auto lat = build_lattice(d);
        CHECK(lat.lancaster_count() == (std::size_t{1} << d) - static_cast<std::size_t>(d));
    }
    const auto l3 = build_lattice(3);
    CHECK(l3.lancaster_count() == l3.size());
    const auto l4 = build_lattice(4);
    CHECK(l4.size() == 15);
    CHECK(l4.lancaster_count() == 12);
    for (const auto* s : {"12|34", "13|24", "14|23"}) {
        bool found = false;
        for (std::size_t i = 0; i < l4.size(); ++i) {
            if (l4.element(i).to_string() == s) {
                found = true;
                CHECK_FALSE(l4.lancaster_mask()[i]);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("boolean embedding is an order isomorphism for 2 <= d <= 7") {
    for (int d = 2; d <= 7; ++d) {
        std::string why;
        CHECK_MESSAGE(boolean_embedding_check(d, &why), why);
    }
}

TEST_CASE("index lookup and string forms") {
    const auto lat = build_lattice(5);
    for (std::size_t i = 0; i < lat.size(); ++i) CHECK(lat.index_of(lat.element(i)) == i);
    CHECK_THROWS_AS(lat.index_of(SetPartition::top(4)), InvalidArgument);
    CHECK(SetPartition::top(10).to_string() == "1,2,3,4,5,6,7,8,9,10");
}
