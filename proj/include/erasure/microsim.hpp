#pragma once

#include <cstdint>
#include <vector>

#include "erasure/ensemble.hpp"

namespace erasure {

/// Explicit bit-level configuration of reservoir, bath and memory block.
/// total_up caches the combined up-spin count and is the conservation
/// witness for every exchange move.
struct MicroState {
    std::vector<std::uint8_t> reservoir_bits;
    std::vector<std::uint8_t> bath_bits;
    std::vector<std::uint8_t> block_bits;
    int total_up = 0;

    int recount() const;
    bool block_uniform() const;
};

/// Result of one seeded trajectory. Rerunning with identical parameters
/// and seed reproduces the statistics bit for bit.
struct TrajectoryStats {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t burn_in_sweeps = 0;
    std::uint64_t n_samples = 0;
    int thin = 1;
    Eigen::ArrayXd occupation_histogram;  // counts over reservoir occupation n
    double block_p1_estimate = 0.0;
    double block_p1_stderr = 0.0;

    Eigen::ArrayXd occupation_frequencies() const;
};

struct ExchangeSimParams {
    int n_spins = 1;          // reservoir size N
    int m_spins = 1;          // bath size M
    double alpha = 0.5;       // sets the conserved total K = round(alpha*(N+M))
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;  // independent sub-stream of the seed
    std::uint64_t burn_in_sweeps = 1000;
    std::uint64_t n_samples = 100000;
    int thin = 1;                     // sweeps between samples
    bool check_conservation = false;  // recount total_up after every proposal
};

struct BlockSimParams {
    int block_size = 1;
    int n_spins = 8;
    double gamma_tilde = 0.0;
    int m_spins = 0;  // 0: ideal bath holding the reservoir at gamma_tilde; >0: explicit bath
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t burn_in_sweeps = 1000;
    std::uint64_t n_samples = 100000;
    int thin = 1;
    bool check_conservation = false;
};

namespace microsim {

/// Exact stationary law of unbiased conserving exchange between an
/// N-spin reservoir and an M-spin bath holding total_up up-spins: the
/// reservoir occupation is hypergeometric, P(n) ~ C(N,n) C(M,K-n).
OccupationDistribution exact_joint_marginal(int n_spins, int m_spins, int total_up);

/// Conserving spin exchange between reservoir and bath: each proposal
/// picks one site of each uniformly and swaps the bits when they differ.
/// Always-accept swaps satisfy detailed balance for the uniform measure
/// on the fixed-total shell, so the occupation histogram converges to
/// exact_joint_marginal. One sweep = N+M proposals; one occupation sample
/// is recorded every `thin` sweeps.
TrajectoryStats mc_reservoir_bath(const ExchangeSimParams& params);

/// Stochastic equilibration of the memory block against the reservoir.
/// Each sweep performs N single-site reservoir exchange moves followed by
/// one collective block-flip proposal (all-zeros block + s reservoir
/// up-spins <-> all-ones block), every move conserving total up count.
/// With an ideal bath (m_spins = 0) the single-site moves are Metropolis
/// steps against the reservoir equilibrium weights at gamma_tilde, and
/// block_p1_estimate converges to e^(-s*g)/(1+e^(-s*g)); with an explicit
/// bath the same limit is approached as m_spins grows.
TrajectoryStats mc_block_equilibrate(const BlockSimParams& params);

}  // namespace microsim
}  // namespace erasure
