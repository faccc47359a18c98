#include "erasure/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "erasure/math.hpp"

namespace erasure {

StopRule StopRule::after_cycles(int cycles) {
    if (cycles < 0) throw std::domain_error("StopRule: cycle count must be >= 0");
    return {Kind::cycle_count, cycles, 0.0};
}

StopRule StopRule::at_target_p1(double target_p1) {
    if (!(target_p1 > 0.0 && target_p1 < 1.0)) {
        throw std::domain_error("StopRule: target p1 must lie in (0,1)");
    }
    return {Kind::target_p1, 0, target_p1};
}

namespace protocol {

MemoryBlockState initial_contact(double gamma_tilde) {
    if (!std::isfinite(gamma_tilde)) throw std::domain_error("initial_contact: gamma_tilde must be finite");
    return {1, logistic(-gamma_tilde), 0, true};
}

std::pair<MemoryBlockState, double> cnot_extend(const MemoryBlockState& state) {
    if (!state.equilibrated) {
        throw std::logic_error("cnot_extend: block must be equilibrated before extension");
    }
    MemoryBlockState extended = state;
    extended.block_size += 1;
    extended.equilibrated = false;
    return {extended, state.p1};
}

MemoryBlockState equilibrate(const MemoryBlockState& state, double gamma_tilde) {
    if (state.block_size < 1) throw std::domain_error("equilibrate: block size must be >= 1");
    MemoryBlockState next = state;
    next.p1 = logistic(-state.block_size * gamma_tilde);
    next.equilibrated = true;
    next.cycle_index = state.cycle_index + 1;
    return next;
}

std::pair<MemoryBlockState, CostLedger> run_protocol(double gamma_tilde, const StopRule& stop,
                                                     double epsilon) {
    if (stop.kind == StopRule::Kind::target_p1 && !(gamma_tilde > 0.0)) {
        throw std::domain_error(
            "run_protocol: a target-p1 stop never terminates for gamma_tilde <= 0 (non-erasing reservoir)");
    }

    if (epsilon < 0.0) throw std::domain_error("run_protocol: epsilon must be >= 0");

    MemoryBlockState state = initial_contact(gamma_tilde);
    CostLedger ledger;
    ledger.epsilon = epsilon;

    const auto done = [&]() {
        if (stop.kind == StopRule::Kind::cycle_count) return state.cycle_index >= stop.cycles;
        return state.p1 < stop.target_p1;
    };

    while (!done()) {
        auto [extended, cost] = cnot_extend(state);
        state = equilibrate(extended, gamma_tilde);
        ledger.add_cycle_cost(cost);
    }
    return {state, ledger};
}

SeriesSum total_spin_cost(double gamma_tilde, double tol) {
    if (!(gamma_tilde > 0.0)) {
        throw std::domain_error("total_spin_cost: series diverges for gamma_tilde <= 0");
    }
    SeriesSum sum;
    const double q = std::exp(-gamma_tilde);
    const double geometric_factor = 1.0 / (1.0 - q);
    double tail = 0.0;
    for (int n = 1;; ++n) {
        sum.value += logistic(-n * gamma_tilde);
        sum.terms = n;
        tail = std::exp(-(n + 1) * gamma_tilde) * geometric_factor;
        if (tail <= tol) break;
        if (n > 100000000) throw convergence_error("total_spin_cost: series did not reach tolerance");
    }
    sum.tail_bound = tail;
    return sum;
}

std::pair<double, double> spin_cost_bounds(double gamma_tilde, bool include_initial) {
    if (!(gamma_tilde > 0.0)) {
        throw std::domain_error("spin_cost_bounds: bounds require gamma_tilde > 0");
    }
    if (include_initial) {
        return {std::log(2.0) / gamma_tilde, softplus(gamma_tilde) / gamma_tilde};
    }
    return {softplus(-gamma_tilde) / gamma_tilde, std::log(2.0) / gamma_tilde};
}

double energy_cost(double epsilon, double delta_jz) {
    if (epsilon < 0.0) throw std::domain_error("energy_cost: epsilon must be >= 0");
    return epsilon * delta_jz;
}

}  // namespace protocol
}  // namespace erasure
