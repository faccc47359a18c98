#include "erasure/demon.hpp"

#include <cmath>
#include <stdexcept>

#include "erasure/protocol.hpp"

namespace erasure::demon {

double szilard_work_per_bit(double t) {
    if (!(t > 0.0)) throw std::domain_error("szilard_work_per_bit: temperature must be positive");
    return t * std::log(2.0);
}

double erasure_entropy_price(double gamma_tilde, bool include_initial) {
    if (!(gamma_tilde > 0.0)) {
        throw std::domain_error("erasure_entropy_price: requires gamma_tilde > 0");
    }
    const double spin = protocol::total_spin_cost(gamma_tilde).value + (include_initial ? 0.5 : 0.0);
    return gamma_tilde * spin;
}

CycleLedger demon_cycle(double t, double gamma_tilde, int bits, double epsilon) {
    if (!(t > 0.0)) throw std::domain_error("demon_cycle: temperature must be positive");
    if (!(gamma_tilde > 0.0)) throw std::domain_error("demon_cycle: requires gamma_tilde > 0");
    if (bits < 0) throw std::domain_error("demon_cycle: bits must be >= 0");
    if (epsilon < 0.0) throw std::domain_error("demon_cycle: epsilon must be >= 0");

    CycleLedger ledger;
    if (bits == 0) return ledger;

    const double spin_per_bit = protocol::total_spin_cost(gamma_tilde).value + 0.5;
    ledger.work_extracted = bits * szilard_work_per_bit(t);
    ledger.heat_reservoir_entropy_change = -bits * std::log(2.0);
    ledger.spin_spent = bits * spin_per_bit;
    ledger.spin_reservoir_entropy_change = bits * gamma_tilde * spin_per_bit;
    ledger.memory_entropy_change = 0.0;  // the memory completes a full reset cycle
    ledger.net_energy_cost_of_erasure = protocol::energy_cost(epsilon, ledger.spin_spent);
    return ledger;
}

}  // namespace erasure::demon
