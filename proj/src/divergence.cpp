#include "latinfo/divergence.hpp"

#include <cmath>

#include "latinfo/errors.hpp"
#include "latinfo/kdtree.hpp"
#include "latinfo/rng.hpp"
#include "latinfo/summation.hpp"

namespace latinfo {

namespace {

double chol_log_det(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    const auto& l = llt.matrixLLT();
    double s = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

void check_dims(const GaussianSpec& f, const GaussianSpec& g) {
    if (f.dim() != g.dim()) {
        throw InvalidArgument("Gaussian dimension mismatch (" + std::to_string(f.dim()) + " vs " +
                              std::to_string(g.dim()) + ")");
    }
}

// Order-independent per-column means and covariance: every entry is a sorted
// compensated sum, so row permutations of x give bit-identical results.
Eigen::MatrixXd sample_covariance(std::span<const double> x, std::size_t n, std::size_t dim,
                                  std::vector<double>& mean) {
    mean.assign(dim, 0.0);
    std::vector<double> buf(n);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t r = 0; r < n; ++r) buf[r] = x[r * dim + j];
        mean[j] = sorted_sum(buf) / static_cast<double>(n);
    }
    Eigen::MatrixXd cov(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a; b < dim; ++b) {
            for (std::size_t r = 0; r < n; ++r) buf[r] = (x[r * dim + a] - mean[a]) * (x[r * dim + b] - mean[b]);
            const double v = sorted_sum(buf) / static_cast<double>(n - 1);
            cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
            cov(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
        }
    }
    return cov;
}

// Lower Cholesky factor of cov, ridged until well conditioned.
Eigen::MatrixXd whitening_factor(Eigen::MatrixXd cov) {
    const double scale = std::max(cov.diagonal().maxCoeff(), 1e-300);
    double ridge = 0.0;
    for (int attempt = 0; attempt < 40; ++attempt) {
        Eigen::MatrixXd m = cov;
        m.diagonal().array() += ridge;
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd l = llt.matrixL();
            if (l.diagonal().minCoeff() > 1e-6 * std::sqrt(scale)) return l;
        }
        ridge = ridge == 0.0 ? 1e-10 * scale : ridge * 10.0;
    }
    return Eigen::MatrixXd::Identity(cov.rows(), cov.cols());
}

void apply_whitening(std::vector<double>& v, std::size_t dim, const Eigen::MatrixXd& l,
                     const std::vector<double>& mean) {
    const std::size_t n = v.size() / dim;
    std::vector<double> z(dim);
    for (std::size_t r = 0; r < n; ++r) {
        double* row = v.data() + r * dim;
        for (std::size_t i = 0; i < dim; ++i) {
            double s = row[i] - mean[i];
            for (std::size_t j = 0; j < i; ++j) s -= l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * z[j];
            z[i] = s / l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        }
        std::copy(z.begin(), z.end(), row);
    }
}

void add_jitter(std::vector<double>& x, std::vector<double>& y, std::size_t dim, const EstimatorConfig& cfg) {
    const std::size_t nx = x.size() / dim, ny = y.size() / dim;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> col;
        col.reserve(nx + ny);
        for (std::size_t r = 0; r < nx; ++r) col.push_back(x[r * dim + j]);
        for (std::size_t r = 0; r < ny; ++r) col.push_back(y[r * dim + j]);
        const double mean = sorted_sum(col) / static_cast<double>(col.size());
        for (double& c : col) c = (c - mean) * (c - mean);
        double sd = std::sqrt(sorted_sum(col) / static_cast<double>(std::max<std::size_t>(1, col.size() - 1)));
        if (!(sd > 0.0)) sd = 1.0;
        const double amp = cfg.jitter_scale * sd;
        auto rx = make_stream(cfg.seed, {tag("jitter"), 0, j});
        auto ry = make_stream(cfg.seed, {tag("jitter"), 1, j});
        for (std::size_t r = 0; r < nx; ++r) x[r * dim + j] += amp * rx.normal();
        for (std::size_t r = 0; r < ny; ++r) y[r * dim + j] += amp * ry.normal();
    }
}

}  // namespace

GaussianSpec::GaussianSpec(Eigen::MatrixXd covariance) : cov_(std::move(covariance)) {
    if (cov_.rows() == 0 || cov_.rows() != cov_.cols()) throw InvalidArgument("covariance must be square and non-empty");
    if (!cov_.allFinite()) throw InvalidArgument("covariance has non-finite entries");
    const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidArgument("covariance is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    if (!(min_eig > kPdTolerance)) {
        throw InvalidArgument("covariance not positive definite (smallest eigenvalue " + std::to_string(min_eig) + ")");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov_);
    log_det_ = chol_log_det(llt);
}

bool GaussianSpec::unit_diagonal(double tol) const noexcept {
    return (cov_.diagonal().array() - 1.0).abs().maxCoeff() <= tol;
}

GaussianSpec GaussianSpec::marginal(const std::vector<std::size_t>& idx) const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
            if (idx[a] >= dim() || idx[b] >= dim()) throw InvalidArgument("marginal index out of range");
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                cov_(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
        }
    }
    return GaussianSpec(std::move(m));
}

double kl_gaussian(const GaussianSpec& f, const GaussianSpec& g) {
    check_dims(f, g);
    if (f.covariance() == g.covariance()) return 0.0;
    Eigen::LLT<Eigen::MatrixXd> lg(g.covariance());
    if (lg.info() != Eigen::Success) throw InvalidArgument("singular reference covariance");
    const double trace = lg.solve(f.covariance()).trace();
    return 0.5 * (trace - static_cast<double>(f.dim()) + g.log_det() - f.log_det());
}

double tsallis_gaussian(const GaussianSpec& f, const GaussianSpec& g, double alpha) {
    check_dims(f, g);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
    if (alpha == 1.0) return kl_gaussian(f, g);
    if (f.covariance() == g.covariance()) return 0.0;
    const auto n = static_cast<Eigen::Index>(f.dim());
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd f_inv = Eigen::LLT<Eigen::MatrixXd>(f.covariance()).solve(id);
    const Eigen::MatrixXd g_inv = Eigen::LLT<Eigen::MatrixXd>(g.covariance()).solve(id);
    Eigen::MatrixXd blend = alpha * f_inv + (1.0 - alpha) * g_inv;
    blend = 0.5 * (blend + blend.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> lb(blend);
    if (lb.info() != Eigen::Success) throw InvalidArgument("blend matrix not positive definite");
    const double log_t = -0.5 * alpha * f.log_det() - 0.5 * (1.0 - alpha) * g.log_det() - 0.5 * chol_log_det(lb);
    return std::expm1(log_t) / (alpha - 1.0);
}

void EstimatorConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in the open interval (0, 1)");
    if (k < 1) throw InvalidArgument("k must be at least 1");
    if (tie_policy == TiePolicy::jitter && !(jitter_scale > 0.0)) throw InvalidArgument("jitter_scale must be positive");
    if (replicates < 1) throw InvalidArgument("replicates must be at least 1");
}

double knn_bias_log_constant(std::size_t k, double alpha) {
    const double kd = static_cast<double>(k);
    return 2.0 * std::lgamma(kd) - std::lgamma(kd - alpha + 1.0) - std::lgamma(kd + alpha - 1.0);
}

DivergenceEstimate estimate_tsallis_knn(std::span<const double> x, std::span<const double> y, std::size_t dim,
                                        const EstimatorConfig& cfg, const std::string& context) {
    cfg.validate();
    if (dim == 0 || x.size() % dim != 0 || y.size() % dim != 0) {
        throw EstimationError("sample buffers do not match dimension " + std::to_string(dim), context);
    }
    const std::size_t n_p = x.size() / dim, n_q = y.size() / dim;
    if (n_p <= cfg.k || n_q < cfg.k) {
        throw EstimationError("k=" + std::to_string(cfg.k) + " too large for sample sizes n_p=" + std::to_string(n_p) +
                                  ", n_q=" + std::to_string(n_q),
                              context);
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw EstimationError("non-finite value in p-sample", context);
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw EstimationError("non-finite value in q-sample", context);
    }

    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    if (cfg.tie_policy == TiePolicy::jitter) add_jitter(xs, ys, dim, cfg);
    if (cfg.whiten) {
        std::vector<double> mean;
        const Eigen::MatrixXd l = whitening_factor(sample_covariance(xs, n_p, dim, mean));
        apply_whitening(xs, dim, l, mean);
        apply_whitening(ys, dim, l, mean);
    }

    const auto rho2 = knn_squared_distances(xs, xs, dim, cfg.k, true);
    const auto nu2 = knn_squared_distances(ys, xs, dim, cfg.k, false);

    const double a1 = 1.0 - cfg.alpha;
    const double half_dim = 0.5 * static_cast<double>(dim);
    const double log_ratio = std::log(static_cast<double>(n_p - 1) / static_cast<double>(n_q));
    const double log_b = knn_bias_log_constant(cfg.k, cfg.alpha);
    std::vector<double> terms(n_p);
    for (std::size_t i = 0; i < n_p; ++i) {
        if (rho2[i] == 0.0 || nu2[i] == 0.0) {
            throw EstimationError("zero k-th neighbour distance at sample row " + std::to_string(i + 1) +
                                      " (duplicate points; use tie policy 'jitter')",
                                  context);
        }
        terms[i] = std::exp(a1 * (half_dim * (std::log(rho2[i]) - std::log(nu2[i])) + log_ratio) + log_b);
    }
    const double mean = sorted_sum(std::move(terms)) / static_cast<double>(n_p);
    const double value = (mean - 1.0) / (cfg.alpha - 1.0);
    if (!std::isfinite(value)) throw EstimationError("estimate is not finite", context);
    return {value, cfg.alpha, cfg.k, n_p, n_q, dim};
}

DivergenceEstimate estimate_tsallis_knn(const SampleMatrix& x, const SampleMatrix& y, const EstimatorConfig& cfg) {
    if (x.cols() != y.cols()) throw EstimationError("p- and q-samples differ in dimension", "");
    return estimate_tsallis_knn(x.values(), y.values(), x.cols(), cfg);
}

}  // namespace latinfo
