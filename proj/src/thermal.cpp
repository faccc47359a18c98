#include "erasure/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "erasure/math.hpp"
#include "erasure/quadrature.hpp"

namespace erasure::thermal {

std::pair<double, double> boltzmann_state(double e, double t) {
    if (!(t > 0.0)) throw std::domain_error("boltzmann_state: temperature must be positive");
    const double p1 = logistic(-e / t);
    return {1.0 - p1, p1};
}

double work_integrand(double e, double t) {
    return boltzmann_state(e, t).second;
}

TotalWorkResult total_work(double t, double e_max, double tol) {
    if (!(t > 0.0)) throw std::domain_error("total_work: temperature must be positive");
    if (e_max < 0.0) throw std::domain_error("total_work: e_max must be non-negative");

    TotalWorkResult result;
    result.tail_bound = t * std::exp(-e_max / t);
    if (e_max == 0.0) return result;

    const QuadratureResult quad =
        adaptive_simpson([t](double e) { return work_integrand(e, t); }, 0.0, e_max, tol);
    result.work = quad.value;
    result.error_estimate = quad.error_estimate;
    result.evaluations = quad.evaluations;
    return result;
}

std::pair<WorkLedger, ThermalQubit> adiabatic_schedule(double t, std::span<const double> splitting_grid) {
    if (!(t > 0.0)) throw std::domain_error("adiabatic_schedule: temperature must be positive");
    if (splitting_grid.empty() || splitting_grid.front() != 0.0) {
        throw std::invalid_argument("adiabatic_schedule: grid must start at 0");
    }
    for (std::size_t i = 1; i < splitting_grid.size(); ++i) {
        if (!(splitting_grid[i] > splitting_grid[i - 1])) {
            throw std::invalid_argument("adiabatic_schedule: grid must be strictly increasing");
        }
    }

    WorkLedger ledger;
    ledger.steps.reserve(splitting_grid.size() - 1);
    ThermalQubit qubit{0.0, t, boltzmann_state(0.0, t).second, true};
    for (std::size_t i = 1; i < splitting_grid.size(); ++i) {
        const double e_new = splitting_grid[i];
        // Charge at the pre-step occupation, then re-equilibrate.
        const double dw = qubit.p1 * (e_new - qubit.splitting);
        ledger.steps.push_back({e_new, dw});
        ledger.total_work += dw;
        qubit.splitting = e_new;
        qubit.p1 = boltzmann_state(e_new, t).second;
    }
    return {std::move(ledger), qubit};
}

}  // namespace erasure::thermal
