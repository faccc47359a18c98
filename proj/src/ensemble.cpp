#include "erasure/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "erasure/math.hpp"

namespace erasure {

ReservoirSpec ReservoirSpec::from_alpha(int n_spins, double alpha) {
    if (n_spins < 1) throw std::domain_error("ReservoirSpec: n_spins must be >= 1");
    return ReservoirSpec{n_spins, alpha, ensemble::gamma_from_alpha(alpha)};
}

ReservoirSpec ReservoirSpec::from_gamma(int n_spins, double gamma_tilde) {
    if (n_spins < 1) throw std::domain_error("ReservoirSpec: n_spins must be >= 1");
    if (!std::isfinite(gamma_tilde)) throw std::domain_error("ReservoirSpec: gamma_tilde must be finite");
    return ReservoirSpec{n_spins, ensemble::alpha_from_gamma(gamma_tilde), gamma_tilde};
}

BathSpec BathSpec::make(int m_spins, double alpha) {
    if (m_spins < 1) throw std::domain_error("BathSpec: m_spins must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("BathSpec: alpha outside (0,1)");
    return BathSpec{m_spins, alpha};
}

double OccupationDistribution::mean() const {
    const Eigen::ArrayXd n = Eigen::ArrayXd::LinSpaced(n_spins + 1, 0.0, static_cast<double>(n_spins));
    return (n * probabilities).sum();
}

bool OccupationDistribution::is_normalized(double tol) const {
    return probabilities.size() == n_spins + 1 && (probabilities >= 0.0).all() &&
           std::abs(probabilities.sum() - 1.0) <= tol;
}

namespace ensemble {

double gamma_from_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("gamma_from_alpha: polarization alpha must lie strictly in (0,1)");
    }
    return std::log((1.0 - alpha) / alpha);
}

double alpha_from_gamma(double gamma_tilde) {
    if (!std::isfinite(gamma_tilde)) throw std::domain_error("alpha_from_gamma: gamma_tilde must be finite");
    return logistic(-gamma_tilde);
}

double log_microstate_probability(int n, const ReservoirSpec& spec) {
    if (n < 0 || n > spec.n_spins) {
        throw std::out_of_range("microstate_probability: occupation n outside [0,N]");
    }
    return -n * spec.gamma_tilde - spec.n_spins * softplus(-spec.gamma_tilde);
}

double microstate_probability(int n, const ReservoirSpec& spec) {
    return std::exp(log_microstate_probability(n, spec));
}

OccupationDistribution occupation_marginal(const ReservoirSpec& spec) {
    const int n_spins = spec.n_spins;
    OccupationDistribution dist;
    dist.n_spins = n_spins;
    dist.probabilities.resize(n_spins + 1);
    for (int n = 0; n <= n_spins; ++n) {
        dist.probabilities[n] = std::exp(log_binomial(n_spins, n) + log_microstate_probability(n, spec));
    }
    return dist;
}

double mean_jz(const ReservoirSpec& spec) {
    return (spec.alpha - 0.5) * spec.n_spins;
}

MaxentResult maxent_solve(int n_spins, double target_mean_n, double tol) {
    if (n_spins < 1) throw std::domain_error("maxent_solve: n_spins must be >= 1");
    if (!(target_mean_n > 0.0 && target_mean_n < n_spins)) {
        throw std::domain_error("maxent_solve: target mean occupation must lie strictly in (0,N)");
    }

    // Mean occupation at multiplier g, strictly decreasing in g.
    const auto mean_at = [n_spins](double g) { return n_spins * logistic(-g); };

    double lo = -50.0, hi = 50.0;
    int expansions = 0;
    while (mean_at(lo) < target_mean_n || mean_at(hi) > target_mean_n) {
        lo *= 2.0;
        hi *= 2.0;
        if (++expansions > 10) {
            throw convergence_error("maxent_solve: failed to bracket the Lagrange multiplier (target mean " +
                                    std::to_string(target_mean_n) + ")");
        }
    }

    int iterations = 0;
    while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mean_at(mid) > target_mean_n) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (++iterations > 200) {
            throw convergence_error("maxent_solve: bisection failed to converge");
        }
    }

    const double gamma_tilde = 0.5 * (lo + hi);
    MaxentResult result;
    result.gamma_tilde = gamma_tilde;
    result.iterations = iterations;
    result.distribution = occupation_marginal(ReservoirSpec::from_gamma(n_spins, gamma_tilde));
    return result;
}

double distribution_entropy(const OccupationDistribution& dist, bool include_degeneracy) {
    const auto& p = dist.probabilities;
    const Eigen::ArrayXd plogp = (p > 0.0).select(p * p.log(), 0.0);
    double entropy = -plogp.sum();
    if (include_degeneracy) {
        // -sum_n p_n ln(p_n / C(N,n)) = marginal entropy + sum_n p_n ln C(N,n)
        for (int n = 0; n <= dist.n_spins; ++n) {
            if (p[n] > 0.0) entropy += p[n] * log_binomial(dist.n_spins, n);
        }
    }
    return entropy;
}

}  // namespace ensemble
}  // namespace erasure
