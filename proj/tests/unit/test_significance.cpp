#include <doctest.h>

#include <cmath>

#include "latinfo/errors.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/significance.hpp"
#include "latinfo/synth.hpp"

using namespace latinfo;

TEST_CASE("benjamini-hochberg against hand values") {
    const auto adj = benjamini_hochberg({0.01, 0.04, 0.03, 0.20});
    REQUIRE(adj.size() == 4);
    CHECK(adj[0] == doctest::Approx(0.04));
    CHECK(adj[1] == doctest::Approx(0.04 * 4 / 3));
    CHECK(adj[2] == doctest::Approx(0.04 * 4 / 3));
    CHECK(adj[3] == doctest::Approx(0.20));
    CHECK(benjamini_hochberg({0.9, 0.95}) == std::vector<double>{0.95, 0.95});
    CHECK(benjamini_hochberg({}).empty());
    CHECK(benjamini_hochberg({0.6, 0.6, 0.6})[0] == doctest::Approx(0.6));
}

namespace {

SampleMatrix small_table(std::size_t n, std::uint64_t seed, bool copy_target) {
    auto rng = make_stream(seed, {});
    std::vector<double> v;
    v.reserve(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = rng.normal(), b = rng.normal(), c = rng.normal();
        v.insert(v.end(), {a, b, c, copy_target ? a : rng.normal()});
    }
    return SampleMatrix({"A", "B", "C", "T"}, n, std::move(v));
}

}  // namespace

TEST_CASE("feature selection on simple targets") {
    EstimatorConfig cfg;
    cfg.k = 10;
    cfg.permutations = 199;
    cfg.seed = 3;
    const auto copied = select_features(small_table(400, 1, true), "T", 2, cfg);
    CHECK(copied.selected == std::vector<std::string>{"A"});
    CHECK(copied.rows.size() == 6);
    CHECK(copied.rows.front().subset.front() == "T");

    const auto noise = select_features(small_table(400, 2, false), "T", 2, cfg);
    CHECK(noise.selected.empty());
}

TEST_CASE("feature selection preconditions") {
    EstimatorConfig cfg;
    cfg.permutations = 9;
    const auto data = small_table(400, 1, false);
    CHECK_THROWS_AS(select_features(data, "T", 5, cfg), InvalidArgument);
    CHECK_THROWS_AS(select_features(data, "T", 0, cfg), InvalidArgument);
    CHECK_THROWS_AS(select_features(small_table(100, 1, false), "T", 2, cfg), EstimationError);
    CHECK_THROWS_AS(select_features(data, "missing", 2, cfg), InputError);
    auto flat = data.column(0);
    std::vector<double> v;
    for (std::size_t i = 0; i < 400; ++i) v.insert(v.end(), {flat[i], 1.0});
    CHECK_THROWS_AS(select_features(SampleMatrix({"A", "T"}, 400, v), "T", 1, cfg), EstimationError);
    cfg.permutations = 0;
    CHECK_THROWS_AS(select_features(data, "T", 2, cfg), InvalidArgument);
}

TEST_CASE("emergence scan on independent and copied columns") {
    EstimatorConfig cfg;
    cfg.k = 10;
    cfg.permutations = 49;
    cfg.seed = 5;
    cfg.null_correction = false;
    const auto indep = emergence_scan(copy_gate(400, 0, 2), {"W", "X", "Y"}, cfg);
    CHECK(indep.rows.size() == 4);
    CHECK_FALSE(indep.emergent);
    for (const auto& r : indep.rows) CHECK_FALSE(r.significant);

    const auto copy = emergence_scan(copy_gate(400, 400, 2), {"W", "X", "Y"}, cfg);
    for (const auto& r : copy.rows) {
        if (r.order == 2) CHECK(r.significant);
    }
    CHECK_FALSE(copy.emergent);
}
