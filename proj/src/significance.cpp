#include "latinfo/significance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "latinfo/errors.hpp"

namespace latinfo {

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t r) {
    std::vector<std::vector<std::size_t>> out;
    if (r > n) return out;
    std::vector<std::size_t> c(r);
    std::iota(c.begin(), c.end(), std::size_t{0});
    while (true) {
        out.push_back(c);
        std::size_t i = r;
        while (i > 0 && c[i - 1] == n - r + i - 1) --i;
        if (i == 0) break;
        ++c[i - 1];
        for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

void require_permutations(const EstimatorConfig& cfg) {
    if (cfg.permutations == 0) throw InvalidArgument("significance testing needs permutations > 0");
}

}  // namespace

std::vector<double> benjamini_hochberg(const std::vector<double>& p) {
    const std::size_t m = p.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });
    std::vector<double> adj(m);
    double running = 1.0;
    for (std::size_t i = m; i-- > 0;) {
        const double v = p[order[i]] * static_cast<double>(m) / static_cast<double>(i + 1);
        running = std::min(running, v);
        adj[order[i]] = std::min(1.0, running);
    }
    return adj;
}

EmergenceResult emergence_scan(const SampleMatrix& data, const std::vector<std::string>& variables,
                               const EstimatorConfig& cfg, double threshold) {
    require_permutations(cfg);
    const std::size_t d = variables.size();
    if (d < 2 || d > 6) throw InvalidArgument("emergence scan supports 2 to 6 variables");
    EmergenceResult res;
    bool lower_significant = false;
    for (std::size_t order = 2; order <= d; ++order) {
        const auto subsets = combinations(d, order);
        std::vector<ScanRow> rows;
        std::vector<double> p;
        for (const auto& s : subsets) {
            ScanRow row;
            for (std::size_t i : s) row.subset.push_back(variables[i]);
            row.order = static_cast<int>(order);
            const auto rep = streitberg_information(data, row.subset, cfg);
            row.value = rep.value;
            row.p_value = rep.null->p_value;
            p.push_back(row.p_value);
            rows.push_back(std::move(row));
        }
        const auto adj = benjamini_hochberg(p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            rows[i].p_adjusted = adj[i];
            rows[i].significant = adj[i] < threshold;
            if (order < d && rows[i].significant) lower_significant = true;
            if (order == d) res.emergent = rows[i].significant && !lower_significant;
            res.rows.push_back(std::move(rows[i]));
        }
    }
    return res;
}

FeatureSelection select_features(const SampleMatrix& data, const std::string& target, std::size_t max_set,
                                 const EstimatorConfig& cfg, double threshold) {
    require_permutations(cfg);
    if (max_set < 1 || max_set > 4) throw InvalidArgument("max_set must lie in [1, 4]");
    const std::size_t t = data.column_index(target);
    const auto y = data.column(t);
    if (std::all_of(y.begin(), y.end(), [&](double v) { return v == y.front(); })) {
        throw EstimationError("target column '" + target + "' is constant", "");
    }
    if (data.rows() < 50 * (max_set + 1)) {
        throw EstimationError("feature selection needs at least " + std::to_string(50 * (max_set + 1)) + " rows", "");
    }
    std::vector<std::string> features;
    for (std::size_t c = 0; c < data.cols(); ++c) {
        if (c != t) features.push_back(data.columns()[c]);
    }
    FeatureSelection out;
    std::vector<std::vector<std::size_t>> sets;
    std::vector<double> p;
    for (std::size_t size = 1; size <= std::min(max_set, features.size()); ++size) {
        for (const auto& s : combinations(features.size(), size)) {
            ScanRow row;
            row.subset.push_back(target);
            for (std::size_t i : s) row.subset.push_back(features[i]);
            row.order = static_cast<int>(size + 1);
            const auto rep = streitberg_information(data, row.subset, cfg);
            row.value = rep.value;
            row.p_value = rep.null->p_value;
            p.push_back(row.p_value);
            sets.push_back(s);
            out.rows.push_back(std::move(row));
        }
    }
    const auto adj = benjamini_hochberg(p);
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        out.rows[i].p_adjusted = adj[i];
        out.rows[i].significant = adj[i] < threshold;
    }
    auto contains = [](const std::vector<std::size_t>& big, const std::vector<std::size_t>& small) {
        return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (!out.rows[i].significant) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
            dominated = out.rows[j].significant && contains(sets[j], sets[i]) && p[j] < p[i];
        }
        if (dominated) continue;
        // Sets are generated by size, then lexicographically, so the first survivor wins.
        if (!best) best = i;
    }
    if (best) {
        for (std::size_t i : sets[*best]) out.selected.push_back(features[i]);
    }
    return out;
}

}  // namespace latinfo
