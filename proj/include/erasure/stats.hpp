#pragma once

#include <Eigen/Core>

namespace erasure::stats {

/// Total variation distance, half the L1 distance between probability
/// vectors of equal length.
double tv_distance(const Eigen::ArrayXd& p, const Eigen::ArrayXd& q);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int pooled_bins = 0;  // bins remaining after pooling small expectations
};

/// Pearson chi-squared goodness of fit of observed counts against
/// expected probabilities. Adjacent bins are pooled until every expected
/// count reaches min_expected; dof = pooled_bins - 1.
ChiSquareResult chi_square_gof(const Eigen::ArrayXd& counts, const Eigen::ArrayXd& expected_probs,
                               double min_expected = 5.0);

/// Upper-tail p-value of the chi-squared distribution.
double chi_square_p_value(double statistic, double dof);

}  // namespace erasure::stats
