#include "latinfo/families.hpp"

#include "latinfo/errors.hpp"

namespace latinfo {

namespace {

const std::vector<std::vector<int>>& structure(Family f) {
    static const std::vector<std::vector<int>> s1{{0}, {1}, {2}, {3}};
    static const std::vector<std::vector<int>> one_three{{0}, {1, 2, 3}};
    static const std::vector<std::vector<int>> two_two{{0, 1}, {2, 3}};
    static const std::vector<std::vector<int>> one_one_two{{0}, {1}, {2, 3}};
    switch (f) {
        case Family::sigma1: return s1;
        case Family::sigma2:
        case Family::sigma4: return one_three;
        case Family::sigma3:
        case Family::sigma5: return two_two;
        case Family::sigma6: return one_one_two;
    }
    throw InvalidArgument("unknown family");
}

Eigen::MatrixXd structured(int d, const std::vector<std::vector<int>>& blocks, double across, double within) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(d, d, across);
    for (const auto& b : blocks) {
        for (int i : b) {
            for (int j : b) m(i, j) = within;
        }
    }
    m.diagonal().setOnes();
    return m;
}

}  // namespace

Family parse_family(const std::string& name) {
    for (int i = 1; i <= 6; ++i) {
        const auto f = static_cast<Family>(i);
        if (name == family_name(f) || name == std::to_string(i)) return f;
    }
    throw InvalidArgument("unknown covariance family '" + name + "' (expected sigma1..sigma6)");
}

std::string family_name(Family f) { return "sigma" + std::to_string(static_cast<int>(f)); }

GaussianSpec family_covariance(Family f, double rho, int d) {
    if (f != Family::sigma1 && d != 4) throw InvalidArgument(family_name(f) + " is defined for d = 4 only");
    if (!(rho > -1.0 && rho < 1.0)) throw InvalidArgument("rho must lie in (-1, 1)");
    switch (f) {
        case Family::sigma1: return equicorrelated(d, rho);
        case Family::sigma2:
        case Family::sigma3: return block_diagonal(4, structure(f), rho);
        default: return GaussianSpec(structured(4, structure(f), rho, rho + (1.0 - rho) * 0.5));
    }
}

GaussianSpec equicorrelated(int d, double rho) {
    if (d < 1) throw InvalidArgument("dimension must be positive");
    return GaussianSpec(structured(d, {}, rho, rho));
}

GaussianSpec block_diagonal(int d, const std::vector<std::vector<int>>& blocks, double rho) {
    for (const auto& b : blocks) {
        for (int i : b) {
            if (i < 0 || i >= d) throw InvalidArgument("block index out of range");
        }
    }
    return GaussianSpec(structured(d, blocks, 0.0, rho));
}

GaussianSpec random_correlation(int d, RandomStream& rng) {
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
    }
    Eigen::MatrixXd c = a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(d, d);
    const Eigen::VectorXd s = c.diagonal().cwiseSqrt().cwiseInverse();
    c = s.asDiagonal() * c * s.asDiagonal();
    c = 0.5 * (c + c.transpose()).eval();
    c.diagonal().setOnes();
    return GaussianSpec(std::move(c));
}

}  // namespace latinfo
