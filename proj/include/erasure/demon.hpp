#pragma once

namespace erasure {

/// Per-cycle account of a demon run: work drawn from the heat reservoir,
/// spin drawn from the spin reservoir to erase the memory, and the
/// entropy movements of the three subsystems (all in nats, k = 1).
struct CycleLedger {
    double work_extracted = 0.0;
    double spin_spent = 0.0;  // delta_jz including the initial half-quantum
    double memory_entropy_change = 0.0;
    double spin_reservoir_entropy_change = 0.0;
    double heat_reservoir_entropy_change = 0.0;
    double net_energy_cost_of_erasure = 0.0;

    double total_entropy_change() const {
        return memory_entropy_change + spin_reservoir_entropy_change + heat_reservoir_entropy_change;
    }
};

namespace demon {

/// Work extractable per erased bit from a single heat reservoir at
/// temperature t: T ln 2, with a matching ln 2 entropy decrease of the
/// reservoir.
double szilard_work_per_bit(double t);

/// Entropy added to the spin reservoir per erased bit: gamma_tilde times
/// the spin spent (d(entropy)/d(mean up-count) = gamma_tilde for the
/// reservoir's equilibrium law). Strictly exceeds ln 2 for any
/// gamma_tilde > 0.
double erasure_entropy_price(double gamma_tilde, bool include_initial = true);

/// Full cycle: extract bits * T ln 2 of work, erase the demon memory
/// against the spin reservoir, return the memory to its reset state.
/// epsilon is the residual energy splitting per spin (0 for exact
/// degeneracy, making the erasure energetically free).
CycleLedger demon_cycle(double t, double gamma_tilde, int bits, double epsilon = 0.0);

}  // namespace demon
}  // namespace erasure
