#pragma once

#include <span>
#include <utility>
#include <vector>

namespace erasure {

/// Two-level memory in contact with a heat reservoir: |0> at energy 0,
/// |1> at energy `splitting` (units of kT at the reference temperature).
struct ThermalQubit {
    double splitting = 0.0;
    double temperature = 1.0;
    double p1 = 0.5;
    bool equilibrated = true;
};

struct WorkStep {
    double splitting;  // splitting after the step
    double work;       // work charged for the step
};

struct WorkLedger {
    double total_work = 0.0;
    std::vector<WorkStep> steps;
};

struct TotalWorkResult {
    double work = 0.0;        // quadrature over [0, e_max]
    double tail_bound = 0.0;  // analytic bound T*e^(-e_max/T) on the truncated remainder
    double error_estimate = 0.0;
    long evaluations = 0;
};

namespace thermal {

/// Equilibrium occupations (p0, p1) of a qubit with splitting e at
/// temperature t; p0 is computed as the complement so the pair sums to 1
/// exactly.
std::pair<double, double> boltzmann_state(double e, double t);

/// dW/dE for quasi-static splitting growth: the equilibrium p1 at
/// splitting e.
double work_integrand(double e, double t);

/// Work to raise the splitting quasi-statically from 0 to e_max, by
/// adaptive quadrature of the integrand. The exact e_max -> infinity
/// limit is t*ln 2; the reported tail bound covers the truncation.
TotalWorkResult total_work(double t, double e_max, double tol);

/// Discrete schedule over an increasing splitting grid starting at 0.
/// Each step charges (pre-step p1) * (splitting increment), then
/// re-equilibrates the qubit at the new splitting. The ledger total
/// converges to t*ln 2 from above as the grid refines and extends.
std::pair<WorkLedger, ThermalQubit> adiabatic_schedule(double t, std::span<const double> splitting_grid);

}  // namespace thermal
}  // namespace erasure
