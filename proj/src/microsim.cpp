#include "erasure/microsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "erasure/math.hpp"
#include "erasure/rng.hpp"

namespace erasure {

int MicroState::recount() const {
    const auto count = [](const std::vector<std::uint8_t>& bits) {
        return static_cast<int>(std::accumulate(bits.begin(), bits.end(), 0));
    };
    return count(reservoir_bits) + count(bath_bits) + count(block_bits);
}

bool MicroState::block_uniform() const {
    if (block_bits.empty()) return true;
    const std::uint8_t first = block_bits.front();
    return std::all_of(block_bits.begin(), block_bits.end(), [first](std::uint8_t b) { return b == first; });
}

Eigen::ArrayXd TrajectoryStats::occupation_frequencies() const {
    const double total = occupation_histogram.sum();
    if (total == 0.0) return Eigen::ArrayXd::Zero(occupation_histogram.size());
    return occupation_histogram / total;
}

namespace microsim {
namespace {

// Places k up-spins uniformly at random over the n sites of `bits`.
void scatter_up_spins(std::vector<std::uint8_t>& bits, int k, RngStream& rng) {
    std::fill(bits.begin(), bits.end(), std::uint8_t{0});
    const int n = static_cast<int>(bits.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - i)));
        std::swap(order[i], order[j]);
        bits[order[i]] = 1;
    }
}

// Samples an occupation count from a marginal law by CDF inversion.
int sample_occupation(const OccupationDistribution& dist, RngStream& rng) {
    const double u = rng.next_double();
    double cdf = 0.0;
    for (int n = 0; n <= dist.n_spins; ++n) {
        cdf += dist.probabilities[n];
        if (u < cdf) return n;
    }
    return dist.n_spins;
}

// Uniform random s-subset of {0..n-1} (Floyd's algorithm), s small.
void sample_subset(int n, int s, RngStream& rng, std::vector<int>& out) {
    out.clear();
    for (int j = n - s; j < n; ++j) {
        const int t = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(j + 1)));
        if (std::find(out.begin(), out.end(), t) != out.end()) {
            out.push_back(j);
        } else {
            out.push_back(t);
        }
    }
}

// Uniform (r, b) site pair from the two 32-bit halves of one draw, each
// mapped through Lemire multiply-shift with exact rejection.
inline void pair_draw(RngStream& rng, std::uint32_t n, std::uint32_t m, int& r, int& b) {
    const std::uint64_t x = rng.next_u64();
    std::uint64_t hi = static_cast<std::uint64_t>(static_cast<std::uint32_t>(x >> 32)) * n;
    if (static_cast<std::uint32_t>(hi) < n) {
        const std::uint32_t threshold = (0u - n) % n;
        while (static_cast<std::uint32_t>(hi) < threshold) {
            hi = static_cast<std::uint64_t>(rng.next_u64() >> 32) * n;
        }
    }
    std::uint64_t lo = static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) * m;
    if (static_cast<std::uint32_t>(lo) < m) {
        const std::uint32_t threshold = (0u - m) % m;
        while (static_cast<std::uint32_t>(lo) < threshold) {
            lo = static_cast<std::uint64_t>(rng.next_u64() >> 32) * m;
        }
    }
    r = static_cast<int>(hi >> 32);
    b = static_cast<int>(lo >> 32);
}

// Fair coin bits, 64 per underlying draw.
struct CoinBuffer {
    std::uint64_t bits = 0;
    int left = 0;

    std::uint8_t next(RngStream& rng) {
        if (left == 0) {
            bits = rng.next_u64();
            left = 64;
        }
        const std::uint8_t c = static_cast<std::uint8_t>(bits & 1u);
        bits >>= 1;
        --left;
        return c;
    }
};

struct BatchAccumulator {
    // Batch-means standard error over a fixed 64-batch layout.
    static constexpr int max_batches = 64;
    std::uint64_t n_samples;
    int n_batches;
    std::vector<double> batch_sums;
    std::vector<std::uint64_t> batch_counts;
    std::uint64_t index = 0;

    explicit BatchAccumulator(std::uint64_t n)
        : n_samples(n),
          n_batches(static_cast<int>(std::min<std::uint64_t>(max_batches, std::max<std::uint64_t>(n, 1)))),
          batch_sums(n_batches, 0.0),
          batch_counts(n_batches, 0) {}

    void add(double value) {
        const int b = static_cast<int>(index * static_cast<std::uint64_t>(n_batches) / n_samples);
        batch_sums[b] += value;
        batch_counts[b] += 1;
        ++index;
    }

    double mean() const {
        const double total = std::accumulate(batch_sums.begin(), batch_sums.end(), 0.0);
        return index > 0 ? total / static_cast<double>(index) : 0.0;
    }

    double stderr_of_mean() const {
        if (n_batches < 2 || index == 0) return 0.0;
        const double m = mean();
        double ss = 0.0;
        for (int b = 0; b < n_batches; ++b) {
            if (batch_counts[b] == 0) continue;
            const double bm = batch_sums[b] / static_cast<double>(batch_counts[b]);
            ss += (bm - m) * (bm - m);
        }
        return std::sqrt(ss / (n_batches * (n_batches - 1.0)));
    }
};

void check_state(const MicroState& state, int reservoir_occupation, bool enabled) {
    if (!enabled) return;
    if (state.recount() != state.total_up) {
        throw std::logic_error("microsim: total_up conservation violated");
    }
    const int counted = static_cast<int>(
        std::accumulate(state.reservoir_bits.begin(), state.reservoir_bits.end(), 0));
    if (counted != reservoir_occupation) {
        throw std::logic_error("microsim: cached reservoir occupation out of sync");
    }
    if (!state.block_uniform()) {
        throw std::logic_error("microsim: memory block left the two-configuration subspace");
    }
}

}  // namespace

OccupationDistribution exact_joint_marginal(int n_spins, int m_spins, int total_up) {
    if (n_spins < 1 || m_spins < 1) {
        throw std::domain_error("exact_joint_marginal: subsystem sizes must be >= 1");
    }
    if (total_up < 0 || total_up > n_spins + m_spins) {
        throw std::out_of_range("exact_joint_marginal: total_up outside [0, N+M]");
    }

    const int lo = std::max(0, total_up - m_spins);
    const int hi = std::min(n_spins, total_up);
    Eigen::ArrayXd log_weights = Eigen::ArrayXd::Constant(n_spins + 1, -std::numeric_limits<double>::infinity());
    for (int n = lo; n <= hi; ++n) {
        log_weights[n] = log_binomial(n_spins, n) + log_binomial(m_spins, total_up - n);
    }
    const double peak = log_weights.segment(lo, hi - lo + 1).maxCoeff();

    OccupationDistribution dist;
    dist.n_spins = n_spins;
    dist.probabilities = Eigen::ArrayXd::Zero(n_spins + 1);
    for (int n = lo; n <= hi; ++n) {
        dist.probabilities[n] = std::exp(log_weights[n] - peak);
    }
    dist.probabilities /= dist.probabilities.sum();
    return dist;
}

TrajectoryStats mc_reservoir_bath(const ExchangeSimParams& params) {
    const int n_spins = params.n_spins, m_spins = params.m_spins;
    if (n_spins < 1 || m_spins < 1) {
        throw std::domain_error("mc_reservoir_bath: subsystem sizes must be >= 1");
    }
    if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
        throw std::domain_error("mc_reservoir_bath: alpha outside [0,1]");
    }
    if (params.thin < 1) throw std::domain_error("mc_reservoir_bath: thin must be >= 1");
    const int total_sites = n_spins + m_spins;
    const int total_up = static_cast<int>(std::llround(params.alpha * total_sites));

    RngStream rng(params.seed, params.stream);
    MicroState state;
    state.reservoir_bits.resize(n_spins);
    state.bath_bits.resize(m_spins);
    {
        std::vector<std::uint8_t> combined(total_sites, 0);
        scatter_up_spins(combined, total_up, rng);
        std::copy(combined.begin(), combined.begin() + n_spins, state.reservoir_bits.begin());
        std::copy(combined.begin() + n_spins, combined.end(), state.bath_bits.begin());
    }
    state.total_up = total_up;
    int occupation = static_cast<int>(
        std::accumulate(state.reservoir_bits.begin(), state.reservoir_bits.end(), 0));

    // Randomized exchange: the chosen pair is swapped with probability
    // 1/2 when the bits differ. Dropping the coin would leave the
    // stationary law intact but make the smallest shells periodic (with
    // N = M = 1 and one up-spin a forced swap alternates deterministically
    // and per-sweep samples alias the period). Branchless: d is 0
    // whenever the move does nothing.
    CoinBuffer coins;
    const auto propose = [&]() {
        int r, b;
        pair_draw(rng, static_cast<std::uint32_t>(n_spins), static_cast<std::uint32_t>(m_spins), r, b);
        const std::uint8_t coin = coins.next(rng);
        std::uint8_t& rb = state.reservoir_bits[r];
        std::uint8_t& bb = state.bath_bits[b];
        const std::uint8_t d = (rb ^ bb) & coin;
        occupation += (static_cast<int>(bb) - static_cast<int>(rb)) * coin;
        rb ^= d;
        bb ^= d;
        check_state(state, occupation, params.check_conservation);
    };

    const auto sweep = [&]() {
        for (int i = 0; i < total_sites; ++i) propose();
    };

    for (std::uint64_t s = 0; s < params.burn_in_sweeps; ++s) sweep();

    TrajectoryStats stats;
    stats.seed = params.seed;
    stats.stream = params.stream;
    stats.burn_in_sweeps = params.burn_in_sweeps;
    stats.n_samples = params.n_samples;
    stats.thin = params.thin;
    stats.occupation_histogram = Eigen::ArrayXd::Zero(n_spins + 1);
    for (std::uint64_t s = 0; s < params.n_samples; ++s) {
        for (int t = 0; t < params.thin; ++t) sweep();
        stats.occupation_histogram[occupation] += 1.0;
    }
    return stats;
}

TrajectoryStats mc_block_equilibrate(const BlockSimParams& params) {
    const int n_spins = params.n_spins, block_size = params.block_size, m_spins = params.m_spins;
    if (n_spins < 1) throw std::domain_error("mc_block_equilibrate: n_spins must be >= 1");
    if (block_size < 1 || block_size > n_spins) {
        throw std::domain_error("mc_block_equilibrate: block size must lie in [1, N]");
    }
    if (m_spins < 0) throw std::domain_error("mc_block_equilibrate: m_spins must be >= 0");
    if (params.thin < 1) throw std::domain_error("mc_block_equilibrate: thin must be >= 1");
    if (!std::isfinite(params.gamma_tilde)) {
        throw std::domain_error("mc_block_equilibrate: gamma_tilde must be finite");
    }

    const double gamma_tilde = params.gamma_tilde;
    const ReservoirSpec spec = ReservoirSpec::from_gamma(n_spins, gamma_tilde);
    const bool explicit_bath = m_spins > 0;

    RngStream rng(params.seed, params.stream);
    MicroState state;
    state.reservoir_bits.resize(n_spins);
    state.block_bits.assign(block_size, 0);

    int occupation = sample_occupation(ensemble::occupation_marginal(spec), rng);
    scatter_up_spins(state.reservoir_bits, occupation, rng);
    int bath_up = 0;
    if (explicit_bath) {
        state.bath_bits.resize(m_spins);
        bath_up = static_cast<int>(std::llround(spec.alpha * m_spins));
        scatter_up_spins(state.bath_bits, bath_up, rng);
    }
    // The implicit-bath counter keeps total_up a valid conservation
    // witness when single-site moves trade spin with the ideal bath.
    std::int64_t implicit_bath_up = 0;
    state.total_up = occupation + bath_up;
    bool block_up = false;

    // Ideal-bath exchange: each site is resampled from the bath
    // polarization, i.e. the infinite bath hands the reservoir a fresh
    // spin at every encounter. This is a heat-bath move for the product
    // equilibrium measure; the implicit-bath counter absorbs the traded
    // spin so total_up stays a valid witness.
    const auto ideal_exchange_sweep = [&]() {
        for (int site = 0; site < n_spins; ++site) {
            std::uint8_t& bit = state.reservoir_bits[site];
            const std::uint8_t fresh = rng.next_double() < spec.alpha ? 1 : 0;
            const int delta = static_cast<int>(fresh) - static_cast<int>(bit);
            occupation += delta;
            implicit_bath_up -= delta;
            bit = fresh;
        }
    };

    // Finite-bath exchange: randomized conserving pair swaps, as in
    // mc_reservoir_bath.
    CoinBuffer coins;
    const auto explicit_site_move = [&]() {
        int r, b;
        pair_draw(rng, static_cast<std::uint32_t>(n_spins), static_cast<std::uint32_t>(m_spins), r, b);
        const std::uint8_t coin = coins.next(rng);
        std::uint8_t& rb = state.reservoir_bits[r];
        std::uint8_t& bb = state.bath_bits[b];
        const std::uint8_t d = (rb ^ bb) & coin;
        occupation += (static_cast<int>(bb) - static_cast<int>(rb)) * coin;
        rb ^= d;
        bb ^= d;
    };

    // Collective block flip: all-zeros block absorbs s reservoir up-spins
    // (or the reverse). The proposal draws an s-subset uniformly, so
    // forward and reverse proposal probabilities match and the move
    // conserves total spin; acceptance is 1 whenever the pattern fits.
    std::vector<int> subset;
    subset.reserve(block_size);
    const auto block_move = [&]() {
        sample_subset(n_spins, block_size, rng, subset);
        if (!block_up) {
            for (const int site : subset) {
                if (state.reservoir_bits[site] == 0) return;
            }
            for (const int site : subset) state.reservoir_bits[site] = 0;
            std::fill(state.block_bits.begin(), state.block_bits.end(), std::uint8_t{1});
            occupation -= block_size;
            block_up = true;
        } else {
            for (const int site : subset) {
                if (state.reservoir_bits[site] == 1) return;
            }
            for (const int site : subset) state.reservoir_bits[site] = 1;
            std::fill(state.block_bits.begin(), state.block_bits.end(), std::uint8_t{0});
            occupation += block_size;
            block_up = false;
        }
    };

    const auto verify = [&]() {
        if (!params.check_conservation) return;
        const std::int64_t witness = state.recount() + implicit_bath_up;
        if (witness != state.total_up) {
            throw std::logic_error("mc_block_equilibrate: total_up conservation violated");
        }
        const int counted = static_cast<int>(
            std::accumulate(state.reservoir_bits.begin(), state.reservoir_bits.end(), 0));
        if (counted != occupation) {
            throw std::logic_error("mc_block_equilibrate: cached reservoir occupation out of sync");
        }
        if (!state.block_uniform()) {
            throw std::logic_error("mc_block_equilibrate: memory block left the two-configuration subspace");
        }
    };

    const auto sweep = [&]() {
        if (explicit_bath) {
            const int moves = n_spins + m_spins;
            for (int i = 0; i < moves; ++i) {
                explicit_site_move();
                verify();
            }
        } else {
            ideal_exchange_sweep();
            verify();
        }
        block_move();
        verify();
    };

    for (std::uint64_t s = 0; s < params.burn_in_sweeps; ++s) sweep();

    TrajectoryStats stats;
    stats.seed = params.seed;
    stats.stream = params.stream;
    stats.burn_in_sweeps = params.burn_in_sweeps;
    stats.n_samples = params.n_samples;
    stats.thin = params.thin;
    stats.occupation_histogram = Eigen::ArrayXd::Zero(n_spins + 1);
    BatchAccumulator p1_batches(params.n_samples);
    for (std::uint64_t s = 0; s < params.n_samples; ++s) {
        for (int t = 0; t < params.thin; ++t) sweep();
        stats.occupation_histogram[occupation] += 1.0;
        p1_batches.add(block_up ? 1.0 : 0.0);
    }
    stats.block_p1_estimate = p1_batches.mean();
    stats.block_p1_stderr = p1_batches.stderr_of_mean();
    return stats;
}

}  // namespace microsim
}  // namespace erasure
