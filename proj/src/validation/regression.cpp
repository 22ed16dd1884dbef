#include <algorithm>
#include <cmath>
#include <numeric>

#include "latinfo/errors.hpp"
#include "latinfo/summation.hpp"
#include "latinfo/validation.hpp"

namespace latinfo::validation {

namespace {

double digamma(double x) {
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) r[idx[t]] = mid;
        i = j + 1;
    }
    return r;
}

}  // namespace

double ksg_mutual_information(const std::vector<double>& x, const std::vector<double>& y, std::size_t k) {
    const std::size_t n = x.size();
    if (n != y.size()) throw InvalidArgument("KSG: x and y differ in length");
    if (k == 0 || k >= n) throw InvalidArgument("KSG: k out of range");
    NeumaierSum acc;
    std::vector<double> joint(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            joint[j] = j == i ? INFINITY : std::max(std::abs(x[i] - x[j]), std::abs(y[i] - y[j]));
        }
        std::nth_element(joint.begin(), joint.begin() + static_cast<long>(k - 1), joint.end());
        const double eps = joint[k - 1];
        std::size_t nx = 0, ny = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            nx += std::abs(x[i] - x[j]) < eps;
            ny += std::abs(y[i] - y[j]) < eps;
        }
        acc.add(digamma(static_cast<double>(nx + 1)) + digamma(static_cast<double>(ny + 1)));
    }
    return digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) - acc.value() / static_cast<double>(n);
}

double knn_regression_mse(const SampleMatrix& data, const std::vector<std::string>& features,
                          const std::string& target, std::size_t train_rows, std::size_t k) {
    const std::size_t n = data.rows();
    if (features.empty()) throw InvalidArgument("regression needs at least one feature");
    if (train_rows <= k || train_rows >= n) throw InvalidArgument("regression train split out of range");
    const auto fi = data.column_indices(features);
    const std::size_t t = data.column_index(target);
    const std::size_t d = fi.size();

    std::vector<double> z(n * d);
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0, sq = 0.0;
        for (std::size_t r = 0; r < train_rows; ++r) mean += data(r, fi[c]);
        mean /= static_cast<double>(train_rows);
        for (std::size_t r = 0; r < train_rows; ++r) sq += (data(r, fi[c]) - mean) * (data(r, fi[c]) - mean);
        const double sd = std::sqrt(sq / static_cast<double>(train_rows - 1));
        for (std::size_t r = 0; r < n; ++r) z[r * d + c] = sd > 0 ? (data(r, fi[c]) - mean) / sd : 0.0;
    }

    std::vector<std::pair<double, std::size_t>> dist(train_rows);
    NeumaierSum err;
    for (std::size_t q = train_rows; q < n; ++q) {
        for (std::size_t r = 0; r < train_rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                const double diff = z[q * d + c] - z[r * d + c];
                acc += diff * diff;
            }
            dist[r] = {acc, r};
        }
        std::nth_element(dist.begin(), dist.begin() + static_cast<long>(k - 1), dist.end());
        double pred = 0.0;
        for (std::size_t i = 0; i < k; ++i) pred += data(dist[i].second, t);
        pred /= static_cast<double>(k);
        err.add((pred - data(q, t)) * (pred - data(q, t)));
    }
    return err.value() / static_cast<double>(n - train_rows);
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw InvalidArgument("spearman needs two equal-length series");
    const auto ra = ranks(a), rb = ranks(b);
    const double m = (static_cast<double>(a.size()) + 1.0) / 2.0;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (ra[i] - m) * (rb[i] - m);
        saa += (ra[i] - m) * (ra[i] - m);
        sbb += (rb[i] - m) * (rb[i] - m);
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace latinfo::validation
