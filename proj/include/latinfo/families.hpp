#pragma once

#include <string>
#include <vector>

#include "latinfo/divergence.hpp"
#include "latinfo/rng.hpp"

namespace latinfo {

/// Four-variable covariance families indexed 1..6.
///   1: equicorrelated rho.
///   2: {1}{2,3,4} and 3: {1,2}{3,4}, block diagonal (within rho, across 0).
///   4: {1}{2,3,4}, 5: {1,2}{3,4}, 6: {1}{2}{3,4}: across rho, within rho + (1 - rho) / 2.
enum class Family { sigma1 = 1, sigma2, sigma3, sigma4, sigma5, sigma6 };

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Family covariance; sigma1 accepts any d >= 2, the others are fixed at d = 4.
GaussianSpec family_covariance(Family f, double rho, int d = 4);

GaussianSpec equicorrelated(int d, double rho);
/// Unit diagonal, rho within blocks, 0 across. blocks are 0-based.
GaussianSpec block_diagonal(int d, const std::vector<std::vector<int>>& blocks, double rho);
/// Random correlation matrix (unit diagonal, well conditioned).
GaussianSpec random_correlation(int d, RandomStream& rng);

}  // namespace latinfo
