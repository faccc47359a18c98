#pragma once

#include <Eigen/Core>

namespace erasure {

/// Internal unit conventions: every angular momentum is expressed in units
/// of hbar, every energy in units of kT (with the temperature explicit
/// where it matters), every entropy in nats.
struct UnitSystem {
    static constexpr double hbar = 1.0;
    static constexpr double k_boltzmann = 1.0;
};

/// Spin reservoir of n_spins spin-1/2 particles with polarization alpha.
///
/// gamma_tilde = ln((1-alpha)/alpha) is the Lagrange multiplier conjugate
/// to the up-spin count, the spin analog of inverse temperature; the two
/// parameters are kept consistent by construction. alpha is restricted to
/// the open interval (0,1): at the endpoints gamma_tilde is undefined.
struct ReservoirSpec {
    int n_spins;
    double alpha;
    double gamma_tilde;

    static ReservoirSpec from_alpha(int n_spins, double alpha);
    static ReservoirSpec from_gamma(int n_spins, double gamma_tilde);
};

/// Spin bath fixing the reservoir polarization, analogous to a heat bath
/// fixing temperature. Only its size and polarization matter analytically;
/// explicit bath microstates live in microsim.
struct BathSpec {
    int m_spins;
    double alpha;

    static BathSpec make(int m_spins, double alpha);
};

/// Probability vector over the reservoir up-spin count n = 0..n_spins.
/// Multiplicities are kept implicit: entry n aggregates the C(N,n)
/// equally likely microstates sharing occupation n.
struct OccupationDistribution {
    int n_spins = 0;
    Eigen::ArrayXd probabilities;  // length n_spins + 1

    double mean() const;
    bool is_normalized(double tol = 1e-12) const;
};

namespace ensemble {

/// gamma_tilde = ln((1-alpha)/alpha); positive iff alpha < 1/2.
double gamma_from_alpha(double alpha);

/// Inverse of gamma_from_alpha: alpha = 1/(1+e^gamma_tilde).
double alpha_from_gamma(double gamma_tilde);

/// Probability of any single reservoir microstate with occupation n:
/// e^(-n*gamma_tilde) / (1+e^(-gamma_tilde))^N. Independent of which of
/// the C(N,n) degenerate states it is.
double microstate_probability(int n, const ReservoirSpec& spec);
double log_microstate_probability(int n, const ReservoirSpec& spec);

/// Marginal law of the occupation count: C(N,n) times the microstate
/// probability, which is exactly binomial(N, alpha).
OccupationDistribution occupation_marginal(const ReservoirSpec& spec);

/// Mean z angular momentum of the reservoir, (alpha - 1/2) * N, in hbar.
double mean_jz(const ReservoirSpec& spec);

struct MaxentResult {
    OccupationDistribution distribution;
    double gamma_tilde;
    int iterations;
};

/// Maximize -sum P ln P over reservoir microstates subject to
/// normalization and a fixed mean occupation. Reduces to a 1-d root-find
/// for the Lagrange multiplier gamma_tilde solving
///   N * e^(-g) / (1 + e^(-g)) = target_mean_n,
/// done by monotone bisection on an auto-expanded bracket. The constraint
/// function is strictly decreasing in gamma_tilde, so bisection is
/// globally convergent.
MaxentResult maxent_solve(int n_spins, double target_mean_n, double tol = 1e-13);

/// Entropy in nats. With include_degeneracy the full microstate entropy
/// -sum_n C(N,n) p_micro(n) ln p_micro(n) is returned (equal to
/// N * binary_entropy(alpha) for the equilibrium law); without it, the
/// entropy of the occupation marginal itself.
double distribution_entropy(const OccupationDistribution& dist, bool include_degeneracy);

}  // namespace ensemble
}  // namespace erasure
