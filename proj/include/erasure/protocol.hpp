#pragma once

#include <utility>
#include <vector>

namespace erasure {

/// Memory spin plus the ancillas chained to it. The block is always the
/// two-configuration mixture p0|0..0> + p1|1..1>, so a scalar p1 and the
/// block size describe it completely.
struct MemoryBlockState {
    int block_size = 1;
    double p1 = 0.5;
    int cycle_index = 0;
    bool equilibrated = false;

    double p0() const { return 1.0 - p1; }
};

/// Running account of the angular momentum spent on erasure, in hbar.
/// delta_e tracks the residual energy epsilon * delta_jz that a small
/// splitting epsilon per spin would add.
struct CostLedger {
    double delta_jz = 0.0;
    std::vector<double> per_cycle_costs;
    bool include_initial = false;
    double epsilon = 0.0;
    double delta_e = 0.0;

    void add_cycle_cost(double cost) {
        per_cycle_costs.push_back(cost);
        delta_jz += cost;
        delta_e = epsilon * delta_jz;
    }

    /// delta_jz, plus the half-quantum of the initial memory state when
    /// include_initial is set.
    double total() const { return delta_jz + (include_initial ? 0.5 : 0.0); }
};

/// Stop condition for run_protocol: a fixed cycle count, or the first
/// cycle whose equilibrated p1 falls below a target.
struct StopRule {
    enum class Kind { cycle_count, target_p1 };
    Kind kind;
    int cycles = 0;
    double target_p1 = 0.0;

    static StopRule after_cycles(int cycles);
    static StopRule at_target_p1(double target_p1);
};

struct SeriesSum {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms = 0;
};

namespace protocol {

/// First reservoir contact: the memory equilibrates across a single-hbar
/// gap, giving p1 = e^(-g)/(1+e^(-g)). g <= 0 is permitted but does not
/// erase (p1 >= 1/2).
MemoryBlockState initial_contact(double gamma_tilde);

/// Extend the block with one ancilla via CNOT: size grows by one, p1 is
/// unchanged, and the returned cost is the mean angular momentum injected,
/// p1 (in hbar). The state is left un-equilibrated.
std::pair<MemoryBlockState, double> cnot_extend(const MemoryBlockState& state);

/// Exchange contact with the reservoir across the block's s*hbar gap:
/// p1 relaxes to e^(-s*g)/(1+e^(-s*g)) and one cycle completes.
MemoryBlockState equilibrate(const MemoryBlockState& state, double gamma_tilde);

/// Alternate cnot_extend and equilibrate from initial_contact until the
/// stop rule is met. After cycle c the block size is c+1 and
/// p1 = e^(-(c+1)g)/(1+e^(-(c+1)g)); the ledger entry for cycle c is the
/// pre-CNOT occupation e^(-c*g)/(1+e^(-c*g)).
std::pair<MemoryBlockState, CostLedger> run_protocol(double gamma_tilde, const StopRule& stop,
                                                     double epsilon = 0.0);

/// Total angular momentum cost of the infinite protocol,
/// sum_{n>=1} e^(-n*g)/(1+e^(-n*g)), summed until the geometric tail
/// bound e^(-(n+1)*g)/(1-e^(-g)) drops below tol.
SeriesSum total_spin_cost(double gamma_tilde, double tol = 1e-12);

/// Closed-form bounds on the spin cost: without the initial half-quantum
/// (ln(1+e^(-g))/g, ln2/g); with it (ln2/g, ln(1+e^(g))/g).
std::pair<double, double> spin_cost_bounds(double gamma_tilde, bool include_initial);

/// Residual energy epsilon * delta_jz picked up when the logical states
/// are split by epsilon per spin instead of being exactly degenerate.
double energy_cost(double epsilon, double delta_jz);

}  // namespace protocol
}  // namespace erasure
