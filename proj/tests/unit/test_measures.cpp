#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latinfo/errors.hpp"
#include "latinfo/families.hpp"
#include "latinfo/measures.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/synth.hpp"

using namespace latinfo;

namespace {

std::vector<std::size_t> first(std::size_t d) {
    std::vector<std::size_t> v(d);
    std::iota(v.begin(), v.end(), 0u);
    return v;
}

std::int64_t signed_factorial(std::size_t r) {
    std::int64_t f = 1;
    for (std::size_t i = 2; i < r; ++i) f *= static_cast<std::int64_t>(i);
    return (r % 2 == 1) ? f : -f;
}

}  // namespace

TEST_CASE("term plans for d = 3 and d = 4") {
    const auto p3 = plan_terms(3, LatticeKind::full);
    REQUIRE(p3.size() == 5);
    std::vector<std::size_t> dims;
    for (const auto& t : p3) dims.push_back(t.reduced_dim);
    CHECK(dims == std::vector<std::size_t>{3, 2, 2, 2, 0});
    CHECK(p3.back().reduced_blocks.empty());

    for (const auto& t : plan_terms(4, LatticeKind::full)) {
        const auto r = t.partition.block_count();
        CHECK(t.coefficient == signed_factorial(r));
        CHECK(t.coefficient == mobius_interval(t.partition, SetPartition::top(4)));
        for (const auto& b : t.reduced_blocks) CHECK(b.size() >= 2);
        CHECK((t.reduced_dim == 0) == (t.partition == SetPartition::bottom(4)));
    }
    const auto p2 = plan_terms(2, LatticeKind::full);
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].coefficient == 1);
    CHECK(p2[1].coefficient == -1);

    const auto chain = plan_terms(5, LatticeKind::chain);
    REQUIRE(chain.size() == 2);
    CHECK(chain[0].partition == SetPartition::top(5));
    CHECK(chain[1].partition == SetPartition::bottom(5));

    const auto lanc = plan_terms(4, LatticeKind::lancaster);
    CHECK(lanc.size() == 12);
    for (const auto& t : lanc) CHECK(t.coefficient == ((t.partition.block_count() % 2) ? 1 : -1));

    CHECK_THROWS_AS(plan_terms(1, LatticeKind::full), InvalidArgument);
    CHECK_THROWS_AS(plan_terms(10, LatticeKind::full), InvalidArgument);
}

TEST_CASE("singleton cancellation example") {
    const auto t = make_term(SetPartition::from_blocks(4, {{0}, {1}, {2, 3}}), 2);
    CHECK(t.reduced_support == std::vector<int>{2, 3});
    CHECK(t.reduced_blocks == std::vector<std::vector<int>>{{2, 3}});
    CHECK(t.reduced_dim == 2);
}

TEST_CASE("estimation cost") {
    auto check = [](int d, LatticeKind k, std::size_t naive, std::size_t reduced) {
        const auto c = estimation_cost(d, k);
        CHECK(c.naive_total_dim == naive);
        CHECK(c.reduced_total_dim == reduced);
    };
    check(2, LatticeKind::full, 4, 2);
    check(3, LatticeKind::full, 15, 9);
    check(4, LatticeKind::full, 60, 40);
    check(4, LatticeKind::lancaster, 48, 28);
    check(5, LatticeKind::full, 260, 185);
    check(5, LatticeKind::lancaster, 135, 75);
}

TEST_CASE("frozen analytic oracle values") {
    const double tol = 1e-12;
    const double sig1[] = {0.0023025063326969075, 0.0262277268011617, 0.11940181860562693, 0.46743121231773};
    for (int i = 0; i < 4; ++i) {
        const double rho = 0.2 * (i + 1);
        const double v = streitberg_information(family_covariance(Family::sigma1, rho), first(4), 0.5).value;
        CHECK(std::abs(v - sig1[i]) < tol);
    }
    CHECK(std::abs(streitberg_information(family_covariance(Family::sigma4, 0.5), first(4), 0.5).value -
                   0.1220309423949466) < tol);
    CHECK(std::abs(streitberg_information(family_covariance(Family::sigma5, 0.5), first(4), 0.5).value -
                   0.10811727717219544) < tol);
    CHECK(std::abs(streitberg_information(family_covariance(Family::sigma6, 0.5), first(4), 0.5).value -
                   0.07693689169885132) < tol);
    CHECK(std::abs(streitberg_information(equicorrelated(3, 0.5), first(3), 0.5).value - -0.06415673399402633) < tol);

    Eigen::MatrixXd s(4, 4);
    s << 1, .3, -.2, .1, .3, 1, .4, -.1, -.2, .4, 1, .25, .1, -.1, .25, 1;
    const GaussianSpec g(s);
    CHECK(std::abs(streitberg_information(g, first(4), 0.5).value - 0.020785582941815983) < tol);
    CHECK(std::abs(lancaster_information(g, first(4), 0.5).value - 0.020515322419046855) < tol);
    CHECK(std::abs(streitberg_information(g, first(4), 0.8).value - 0.023398523710217452) < tol);
    CHECK(std::abs(streitberg_information(g, first(4), 1.0).value - 0.02592620336766835) < tol);
    CHECK(std::abs(total_correlation(g, first(4), 0.5).value - 0.18851758534636565) < tol);
}

TEST_CASE("kl equivalence of interaction, lancaster and streitberg information") {
    auto rng = make_stream(2024, {});
    for (int d : {3, 4, 5}) {
        for (int i = 0; i < 20; ++i) {
            const auto g = random_correlation(d, rng);
            const auto vars = first(static_cast<std::size_t>(d));
            const double si = streitberg_information(g, vars, 1.0).value;
            CHECK(std::abs(interaction_information_gaussian(g, vars) - si) < 1e-9);
            CHECK(std::abs(lancaster_information(g, vars, 1.0).value - si) < 1e-9);
        }
    }
}

TEST_CASE("streitberg information vanishes under any factorisation") {
    const std::vector<std::vector<std::vector<int>>> splits = {{{0}, {1, 2, 3}}, {{0, 1}, {2, 3}}, {{0}, {1}, {2, 3}}};
    for (const auto& blocks : splits) {
        for (double rho : {0.2, 0.4, 0.6, 0.8}) {
            const auto g = block_diagonal(4, blocks, rho);
            for (double alpha : {0.3, 0.5, 0.8, 1.0}) {
                CHECK(std::abs(streitberg_information(g, first(4), alpha).value) < 1e-10);
            }
        }
    }
    const auto g5 = block_diagonal(5, {{0, 1}, {2, 3, 4}}, 0.6);
    for (double alpha : {0.3, 0.5, 0.8}) CHECK(std::abs(streitberg_information(g5, first(5), alpha).value) < 1e-10);
    CHECK(total_correlation(g5, first(5), 0.5).value > 1e-3);
    CHECK(lancaster_information(g5, first(5), 0.5).value > 1e-3);

    const auto s2 = family_covariance(Family::sigma2, 0.6);
    const auto s3 = family_covariance(Family::sigma3, 0.6);
    CHECK(total_correlation(s2, first(4), 0.5).value > 1e-3);
    CHECK(std::abs(lancaster_information(s2, first(4), 0.5).value) < 1e-10);
    CHECK(std::abs(lancaster_information(s3, first(4), 0.5).value) > 1e-3);
}

TEST_CASE("lancaster and streitberg information agree at d = 3") {
    auto rng = make_stream(5, {});
    for (int i = 0; i < 10; ++i) {
        const auto g = random_correlation(3, rng);
        for (double alpha : {0.3, 0.7}) {
            CHECK(lancaster_information(g, first(3), alpha).value == streitberg_information(g, first(3), alpha).value);
        }
    }
}

TEST_CASE("interval measures and the recursion") {
    const auto pi = SetPartition::from_blocks(4, {{0, 1}, {2, 3}});
    const auto plan = plan_interval(pi);
    REQUIRE(plan.size() == 4);
    CHECK(plan[0].partition == pi);
    CHECK(plan[0].coefficient == 1);
    CHECK(plan[1].coefficient == -1);
    CHECK(plan[2].coefficient == -1);
    CHECK(plan[3].coefficient == 1);
    CHECK(plan[3].partition == SetPartition::bottom(4));
    CHECK(plan[1].reduced_support.size() == 2);
    CHECK(plan[2].reduced_support.size() == 2);

    auto rng = make_stream(6, {});
    for (int i = 0; i < 10; ++i) {
        const auto g = random_correlation(4, rng);
        CHECK(std::abs(generalized_si(g, first(4), pi, 1.0).value) < 1e-10);
        CHECK(generalized_si(g, first(4), SetPartition::top(4), 0.5).value ==
              streitberg_information(g, first(4), 0.5).value);
    }
    CHECK(recursive_check(equicorrelated(3, 0.5), 3, 0.5) < 1e-10);
    CHECK(recursive_check(family_covariance(Family::sigma3, 0.6), 4, 0.5) < 1e-10);
    CHECK(recursive_check(random_correlation(5, rng), 5, 0.7) < 1e-10);
}

TEST_CASE("blockwise KL additivity") {
    auto rng = make_stream(7, {});
    const auto a = random_correlation(2, rng), b = random_correlation(3, rng);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(5, 5);
    c.topLeftCorner(2, 2) = a.covariance();
    c.bottomRightCorner(3, 3) = b.covariance();
    const GaussianSpec joint(c);
    const auto eye = [](int d) { return GaussianSpec(Eigen::MatrixXd::Identity(d, d)); };
    CHECK(std::abs(kl_gaussian(joint, eye(5)) - kl_gaussian(a, eye(2)) - kl_gaussian(b, eye(3))) < 1e-12);
}

TEST_CASE("analytic streitberg information is symmetric in its variables") {
    auto rng = make_stream(8, {});
    for (int i = 0; i < 5; ++i) {
        const auto g = random_correlation(4, rng);
        auto vars = first(4);
        const double ref = streitberg_information(g, vars, 0.5).value;
        while (std::next_permutation(vars.begin(), vars.end())) {
            CHECK(std::abs(streitberg_information(g, vars, 0.5).value - ref) < 1e-12);
        }
    }
}

TEST_CASE("growth with coupling and across block families") {
    double prev = -1.0;
    for (double rho : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const double v = streitberg_information(family_covariance(Family::sigma1, rho), first(4), 0.5).value;
        CHECK(v > prev);
        prev = v;
    }
    for (double rho : {0.2, 0.5, 0.8}) {
        const double s1 = streitberg_information(family_covariance(Family::sigma1, rho), first(4), 0.5).value;
        const double s4 = streitberg_information(family_covariance(Family::sigma4, rho), first(4), 0.5).value;
        const double s5 = streitberg_information(family_covariance(Family::sigma5, rho), first(4), 0.5).value;
        const double s6 = streitberg_information(family_covariance(Family::sigma6, rho), first(4), 0.5).value;
        CHECK(s4 > s5);
        CHECK(s5 > s6);
        CHECK(s6 > s1);
    }
}

TEST_CASE("two-variable measures and independence") {
    for (double rho : {0.1, 0.6, -0.9}) {
        const auto g = equicorrelated(2, rho);
        const double mi = -0.5 * std::log(1 - rho * rho);
        CHECK(total_correlation(g, first(2), 1.0).value == doctest::Approx(mi).epsilon(1e-13));
        CHECK(interaction_information_gaussian(g, first(2)) == doctest::Approx(mi).epsilon(1e-13));
        CHECK(streitberg_information(g, first(2), 0.5).value ==
              doctest::Approx(tsallis_gaussian(g, equicorrelated(2, 0), 0.5)).epsilon(1e-13));
    }
    CHECK(std::abs(interaction_information_gaussian(equicorrelated(3, 0.0), first(3))) < 1e-15);
    CHECK(total_correlation(equicorrelated(4, 0.0), first(4), 0.5).value == 0.0);
}

TEST_CASE("report value equals the weighted term sum") {
    auto rng = make_stream(9, {});
    const auto g = random_correlation(5, rng);
    for (auto kind : {MeasureKind::si, MeasureKind::li, MeasureKind::tc}) {
        const auto r = analytic_measure(kind, g, first(5), 0.5);
        CHECK(std::abs(recompute_value(r) - r.value) < 1e-12);
        CHECK(r.mode == Mode::analytic_gaussian);
        CHECK(r.variables == std::vector<std::string>{"x1", "x2", "x3", "x4", "x5"});
    }
}

TEST_CASE("analytic preconditions") {
    Eigen::MatrixXd c(2, 2);
    c << 2, 0.5, 0.5, 1;
    CHECK_THROWS_AS(streitberg_information(GaussianSpec(c), first(2), 0.5), InvalidArgument);
    CHECK_THROWS_AS(streitberg_information(equicorrelated(3, 0.2), {0, 0}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(streitberg_information(equicorrelated(3, 0.2), {0, 5}, 0.5), InvalidArgument);
    CHECK_THROWS_AS(parse_measure("xx"), InvalidArgument);
    CHECK(parse_measure("li") == MeasureKind::li);
}

TEST_CASE("empirical measures") {
    const auto data = sample_gaussian(equicorrelated(4, 0.5), 400, 3);
    EstimatorConfig cfg;
    cfg.k = 10;
    cfg.seed = 4;

    SUBCASE("order two is the plain divergence from independence") {
        cfg.whiten = false;
        cfg.null_correction = false;
        const auto r = streitberg_information(data, {"x1", "x2"}, cfg);
        REQUIRE(r.terms.size() == 2);
        CHECK(r.value == r.terms[0].divergence);
        CHECK(r.terms[1].divergence == 0.0);
    }
    SUBCASE("deterministic and recomputable") {
        const auto a = streitberg_information(data, {"x1", "x2", "x3", "x4"}, cfg);
        const auto b = streitberg_information(data, {"x1", "x2", "x3", "x4"}, cfg);
        CHECK(a.value == b.value);
        CHECK(std::abs(recompute_value(a) - a.value) < 1e-12);
        CHECK(a.terms.size() == 15);
    }
    SUBCASE("null statistics") {
        cfg.permutations = 19;
        const auto r = total_correlation(data, {"x1", "x2", "x3"}, cfg);
        REQUIRE(r.null.has_value());
        CHECK(r.null->count == 19);
        CHECK(r.null->p_value == doctest::Approx(0.05));
    }
    SUBCASE("input errors") {
        CHECK_THROWS_AS(streitberg_information(data, {"x1", "nope"}, cfg), InputError);
        CHECK_THROWS_AS(streitberg_information(data, {"x1", "x1"}, cfg), InputError);
        CHECK_THROWS_AS(streitberg_information(data, {"x1"}, cfg), InvalidArgument);
    }
}
