#include "latinfo/synth.hpp"

#include <cmath>

#include "latinfo/csv.hpp"
#include "latinfo/errors.hpp"
#include "latinfo/rng.hpp"

namespace latinfo {

namespace {

double mod4(double v) {
    const double r = std::fmod(v, 4.0);
    return r < 0.0 ? r + 4.0 : r;
}

std::vector<double> uniform_column(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    auto rng = make_stream(seed, {tag("uniform-column"), stream});
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(0.0, 4.0);
    return v;
}

void check_coupled(std::size_t n, std::size_t coupled) {
    if (n == 0) throw InvalidArgument("n must be positive");
    if (coupled > n) throw InvalidArgument("coupled rows " + std::to_string(coupled) + " exceed n = " + std::to_string(n));
}

SampleMatrix gate_matrix(std::size_t n, const std::vector<std::vector<double>>& cols, const std::string& generator,
                         std::size_t coupled, std::uint64_t seed) {
    std::vector<double> values(n * 4);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 4; ++c) values[r * 4 + c] = cols[c][r];
    }
    SampleMatrix m({"W", "X", "Y", "Z"}, n, std::move(values));
    m.set_provenance({generator, {{"n", std::to_string(n)}, {"coupled", std::to_string(coupled)}}, seed});
    return m;
}

}  // namespace

SampleMatrix sample_gaussian(const GaussianSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgument("n must be positive");
    const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(spec.covariance()).matrixL();
    const std::size_t d = spec.dim();
    auto rng = make_stream(seed, {tag("gaussian")});
    std::vector<double> z(d), values(n * d);
    for (std::size_t r = 0; r < n; ++r) {
        for (double& v : z) v = rng.normal();
        for (std::size_t i = 0; i < d; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * z[j];
            values[r * d + i] = s;
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i + 1));
    SampleMatrix m(std::move(names), n, std::move(values));
    m.set_provenance({"gaussian", {{"n", std::to_string(n)}, {"dim", std::to_string(d)}}, seed});
    return m;
}

SampleMatrix xor_gate(std::size_t n, std::size_t coupled, std::uint64_t seed) {
    check_coupled(n, coupled);
    std::vector<std::vector<double>> cols;
    for (std::uint64_t c = 0; c < 4; ++c) cols.push_back(uniform_column(n, seed, c));
    for (std::size_t r = 0; r < coupled; ++r) cols[3][r] = mod4(cols[0][r] + cols[1][r] + cols[2][r]);
    return gate_matrix(n, cols, "xor", coupled, seed);
}

SampleMatrix copy_gate(std::size_t n, std::size_t coupled, std::uint64_t seed) {
    check_coupled(n, coupled);
    std::vector<std::vector<double>> cols;
    for (std::uint64_t c = 0; c < 4; ++c) cols.push_back(uniform_column(n, seed, c));
    for (std::size_t r = 0; r < coupled; ++r) {
        for (std::size_t c = 0; c < 3; ++c) cols[c][r] = cols[3][r];
    }
    return gate_matrix(n, cols, "copy", coupled, seed);
}

SampleMatrix table1_dataset(std::size_t n, std::uint64_t seed) {
    if (n < 100) throw InvalidArgument("table1 dataset needs n >= 100");
    std::vector<std::vector<double>> x;
    for (std::uint64_t c = 0; c < 3; ++c) x.push_back(uniform_column(n, seed, c));
    auto rng = make_stream(seed, {tag("table1-gaussian")});
    const double rho = 0.95, tail = std::sqrt(1.0 - rho * rho);
    std::vector<double> values(n * 6);
    for (std::size_t r = 0; r < n; ++r) {
        const double z1 = rng.normal(), z2 = rng.normal();
        values[r * 6 + 0] = x[0][r];
        values[r * 6 + 1] = x[1][r];
        values[r * 6 + 2] = x[2][r];
        values[r * 6 + 3] = z1;
        values[r * 6 + 4] = rho * z1 + tail * z2;
        values[r * 6 + 5] = mod4(x[0][r] + x[1][r] + x[2][r]);
    }
    SampleMatrix m({"X1", "X2", "X3", "X4", "X5", "Y"}, n, std::move(values));
    m.set_provenance({"table1", {{"n", std::to_string(n)}}, seed});
    return m;
}

SampleMatrix permute_columns(const SampleMatrix& data, const SetPartition& blocks, std::uint64_t seed) {
    if (static_cast<std::size_t>(blocks.order()) != data.cols()) {
        throw InvalidArgument("partition order " + std::to_string(blocks.order()) + " does not match " +
                              std::to_string(data.cols()) + " columns");
    }
    std::vector<std::vector<std::size_t>> groups;
    for (const auto& b : blocks.blocks()) groups.emplace_back(b.begin(), b.end());
    return permute_blocks(data, groups, seed);
}

}  // namespace latinfo
