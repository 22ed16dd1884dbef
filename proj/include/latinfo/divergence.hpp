#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latinfo/sample_matrix.hpp"

namespace latinfo {

/// Zero-mean Gaussian; covariance is symmetric with smallest eigenvalue > 1e-10.
class GaussianSpec {
public:
    static constexpr double kPdTolerance = 1e-10;

    explicit GaussianSpec(Eigen::MatrixXd covariance);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(cov_.rows()); }
    const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
    double log_det() const noexcept { return log_det_; }
    bool unit_diagonal(double tol = 1e-12) const noexcept;
    /// Marginal on the given coordinates, in the given order.
    GaussianSpec marginal(const std::vector<std::size_t>& idx) const;

private:
    Eigen::MatrixXd cov_;
    double log_det_ = 0.0;
};

/// Tsallis-alpha divergence between zero-mean Gaussians, alpha in (0, 1]; alpha = 1 is KL.
double tsallis_gaussian(const GaussianSpec& f, const GaussianSpec& g, double alpha);
double kl_gaussian(const GaussianSpec& f, const GaussianSpec& g);

enum class TiePolicy { error, jitter };

struct EstimatorConfig {
    double alpha = 0.5;
    std::size_t k = 30;
    std::uint64_t seed = 0;
    TiePolicy tie_policy = TiePolicy::error;
    double jitter_scale = 1e-10;
    std::size_t permutations = 0;
    /// Map both samples by the inverse Cholesky factor of the p-sample covariance.
    bool whiten = true;
    /// Subtract the estimate for a fully shuffled p-sample from each empirical term.
    bool null_correction = true;
    /// Independent realisations averaged per empirical term.
    std::size_t replicates = 1;
    /// Besag-Clifford stop after this many null exceedances; 0 runs all permutations.
    std::size_t early_stop = 0;

    /// Throws InvalidArgument when an invariant is violated.
    void validate() const;
};

struct DivergenceEstimate {
    double value = 0.0;
    double alpha = 0.0;
    std::size_t k = 0;
    std::size_t n_p = 0;
    std::size_t n_q = 0;
    std::size_t dim = 0;
};

/// log of Gamma(k)^2 / (Gamma(k - alpha + 1) Gamma(k + alpha - 1)).
double knn_bias_log_constant(std::size_t k, double alpha);

/// kNN Tsallis-alpha estimate of D(p || q) from row-major samples x ~ p, y ~ q.
/// context names the measure term in error messages.
DivergenceEstimate estimate_tsallis_knn(std::span<const double> x, std::span<const double> y, std::size_t dim,
                                        const EstimatorConfig& cfg, const std::string& context = {});
DivergenceEstimate estimate_tsallis_knn(const SampleMatrix& x, const SampleMatrix& y, const EstimatorConfig& cfg);

}  // namespace latinfo
