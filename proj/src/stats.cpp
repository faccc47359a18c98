#include "erasure/stats.hpp"

#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/SpecialFunctions>

namespace erasure::stats {

double tv_distance(const Eigen::ArrayXd& p, const Eigen::ArrayXd& q) {
    if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
    return 0.5 * (p - q).abs().sum();
}

double chi_square_p_value(double statistic, double dof) {
    if (dof <= 0.0) return 1.0;
    Eigen::ArrayXd a(1), x(1);
    a << 0.5 * dof;
    x << 0.5 * statistic;
    return Eigen::igammac(a, x)(0);
}

ChiSquareResult chi_square_gof(const Eigen::ArrayXd& counts, const Eigen::ArrayXd& expected_probs,
                               double min_expected) {
    if (counts.size() != expected_probs.size()) {
        throw std::invalid_argument("chi_square_gof: length mismatch");
    }
    const double total = counts.sum();

    // Pool adjacent bins left to right until each pooled expectation
    // reaches min_expected; a trailing underweight pool merges backwards.
    std::vector<double> pooled_obs, pooled_exp;
    double acc_obs = 0.0, acc_exp = 0.0;
    for (Eigen::Index i = 0; i < counts.size(); ++i) {
        acc_obs += counts[i];
        acc_exp += expected_probs[i] * total;
        if (acc_exp >= min_expected) {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
            acc_obs = acc_exp = 0.0;
        }
    }
    if (acc_exp > 0.0 || acc_obs > 0.0) {
        if (!pooled_exp.empty()) {
            pooled_obs.back() += acc_obs;
            pooled_exp.back() += acc_exp;
        } else {
            pooled_obs.push_back(acc_obs);
            pooled_exp.push_back(acc_exp);
        }
    }

    ChiSquareResult result;
    result.pooled_bins = static_cast<int>(pooled_obs.size());
    result.dof = result.pooled_bins - 1;
    if (result.dof < 1) {
        result.dof = 0;
        result.p_value = 1.0;
        return result;
    }
    for (std::size_t i = 0; i < pooled_obs.size(); ++i) {
        const double diff = pooled_obs[i] - pooled_exp[i];
        result.statistic += diff * diff / pooled_exp[i];
    }
    result.p_value = chi_square_p_value(result.statistic, result.dof);
    return result;
}

}  // namespace erasure::stats
