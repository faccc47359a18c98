#include <doctest.h>

#include <cmath>

#include "erasure/math.hpp"
#include "erasure/protocol.hpp"

using namespace erasure;

namespace {
const double kLn2 = std::log(2.0);

// Independent partial summation of the spin-cost series with compensated
// accumulation, run far past the requested tolerance.
double series_by_brute_force(double gamma_tilde) {
    double sum = 0.0, compensation = 0.0;
    for (int n = 1; n <= 4000; ++n) {
        const double term = logistic(-n * gamma_tilde) - compensation;
        const double next = sum + term;
        compensation = (next - sum) - term;
        sum = next;
        if (std::exp(-n * gamma_tilde) < 1e-18) break;
    }
    return sum;
}
}  // namespace

TEST_SUITE_BEGIN("protocol");

TEST_CASE("initial contact") {
    CHECK(protocol::initial_contact(0.0).p1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(protocol::initial_contact(kLn2).p1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(protocol::initial_contact(1e4).p1 == 0.0);
    CHECK(protocol::initial_contact(0.7).block_size == 1);
    CHECK(protocol::initial_contact(0.7).equilibrated);
    CHECK_THROWS_AS(protocol::initial_contact(std::nan("")), std::domain_error);
}

TEST_CASE("cnot extension") {
    const auto state = protocol::initial_contact(kLn2);
    const auto [extended, cost] = protocol::cnot_extend(state);
    CHECK(extended.block_size == 2);
    CHECK(extended.p1 == state.p1);
    CHECK_FALSE(extended.equilibrated);
    CHECK(cost == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // second cycle cost 1/5
    const auto second = protocol::equilibrate(extended, kLn2);
    CHECK(protocol::cnot_extend(second).second == doctest::Approx(0.2).epsilon(1e-14));

    // nothing to flip
    const MemoryBlockState erased{3, 0.0, 2, true};
    CHECK(protocol::cnot_extend(erased).second == 0.0);

    CHECK_THROWS_AS(protocol::cnot_extend(extended), std::logic_error);
}

TEST_CASE("equilibrate closed form") {
    CHECK(protocol::equilibrate({2, 1.0 / 3.0, 0, false}, kLn2).p1 ==
          doctest::Approx(0.2).epsilon(1e-15));
    CHECK(protocol::equilibrate({1, 0.9, 0, false}, 0.0).p1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(protocol::equilibrate({10, 0.5, 0, false}, kLn2).p1 ==
          doctest::Approx(1.0 / 1025.0).epsilon(1e-14));
}

TEST_CASE("cycle recursion: iteration matches closed form") {
    for (double gamma : {0.05, 0.3, kLn2, 1.5, 4.0}) {
        auto state = protocol::initial_contact(gamma);
        for (int cycle = 1; cycle <= 30; ++cycle) {
            state = protocol::equilibrate(protocol::cnot_extend(state).first, gamma);
            CHECK(state.block_size == cycle + 1);
            CHECK(state.cycle_index == cycle);
            CHECK(state.p1 ==
                  doctest::Approx(logistic(-(cycle + 1) * gamma)).epsilon(1e-14));
        }
    }
}

TEST_CASE("p1 monotonicity in the cycle count") {
    auto erasing = protocol::initial_contact(0.4);
    auto stuck = protocol::initial_contact(0.0);
    for (int cycle = 0; cycle < 12; ++cycle) {
        const double before = erasing.p1;
        erasing = protocol::equilibrate(protocol::cnot_extend(erasing).first, 0.4);
        CHECK(erasing.p1 < before);
        stuck = protocol::equilibrate(protocol::cnot_extend(stuck).first, 0.0);
        CHECK(stuck.p1 == 0.5);
    }
}

TEST_CASE("run_protocol") {
    const auto [state2, ledger2] = protocol::run_protocol(kLn2, StopRule::after_cycles(2));
    CHECK(state2.p1 == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    REQUIRE(ledger2.per_cycle_costs.size() == 2);
    CHECK(ledger2.per_cycle_costs[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(ledger2.per_cycle_costs[1] == doctest::Approx(0.2).epsilon(1e-14));

    const auto [state9, ledger9] = protocol::run_protocol(kLn2, StopRule::at_target_p1(1e-3));
    CHECK(state9.cycle_index == 9);
    CHECK(state9.block_size == 10);
    CHECK(state9.p1 == doctest::Approx(1.0 / 1025.0).epsilon(1e-14));
    CHECK(ledger9.per_cycle_costs.size() == 9);

    const auto [state0, ledger0] = protocol::run_protocol(kLn2, StopRule::after_cycles(0));
    CHECK(state0.block_size == 1);
    CHECK(state0.p1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(ledger0.per_cycle_costs.empty());
    CHECK(ledger0.delta_jz == 0.0);

    CHECK_THROWS_AS(protocol::run_protocol(0.0, StopRule::at_target_p1(1e-3)), std::domain_error);
    CHECK_THROWS_AS(protocol::run_protocol(-0.5, StopRule::at_target_p1(1e-3)), std::domain_error);
}

TEST_CASE("cost ledger bookkeeping") {
    const auto [state, ledger] = protocol::run_protocol(0.8, StopRule::after_cycles(12), 0.01);
    (void)state;
    double total = 0.0;
    for (const double cost : ledger.per_cycle_costs) total += cost;
    CHECK(ledger.delta_jz == doctest::Approx(total).epsilon(1e-12));
    CHECK(ledger.delta_e == doctest::Approx(0.01 * ledger.delta_jz).epsilon(1e-14));

    CostLedger with_initial = ledger;
    with_initial.include_initial = true;
    CHECK(with_initial.total() == doctest::Approx(ledger.delta_jz + 0.5).epsilon(1e-14));
    CHECK(ledger.total() == ledger.delta_jz);
}

TEST_CASE("angular momentum audit per cycle") {
    // Mean block Jz at size s is s*(p1 - 1/2); the fresh ancilla enters at
    // -1/2. Per cycle, injected spin (the ledger entry) minus spin returned
    // to the reservoir must equal the block's Jz change exactly.
    for (double gamma : {0.3, kLn2, 2.0}) {
        auto state = protocol::initial_contact(gamma);
        for (int cycle = 0; cycle < 15; ++cycle) {
            const double jz_before = state.block_size * (state.p1 - 0.5) - 0.5;
            const auto [extended, injected] = protocol::cnot_extend(state);
            const auto next = protocol::equilibrate(extended, gamma);
            const double returned = next.block_size * (extended.p1 - next.p1);
            const double jz_after = next.block_size * (next.p1 - 0.5);
            CHECK(injected - returned == doctest::Approx(jz_after - jz_before).epsilon(1e-13));
            state = next;
        }
    }
}

TEST_CASE("total spin cost series") {
    const auto at_ln2 = protocol::total_spin_cost(kLn2, 1e-13);
    CHECK(at_ln2.value == doctest::Approx(0.7645).epsilon(1e-4));
    CHECK(at_ln2.value == doctest::Approx(series_by_brute_force(kLn2)).epsilon(1e-12));
    CHECK(at_ln2.tail_bound <= 1e-13);

    CHECK(protocol::total_spin_cost(50.0).value == doctest::Approx(std::exp(-50.0)).epsilon(1e-6));

    const double loose = protocol::total_spin_cost(0.1).value;
    CHECK(loose > std::log(1.0 + std::exp(-0.1)) / 0.1);
    CHECK(loose < kLn2 / 0.1);
    CHECK(loose == doctest::Approx(series_by_brute_force(0.1)).epsilon(1e-10));

    CHECK_THROWS_AS(protocol::total_spin_cost(0.0), std::domain_error);
    CHECK_THROWS_AS(protocol::total_spin_cost(-1.0), std::domain_error);
}

TEST_CASE("spin cost bounds") {
    const auto [lower, upper] = protocol::spin_cost_bounds(kLn2, false);
    CHECK(lower == doctest::Approx(std::log(1.5) / kLn2).epsilon(1e-12));
    CHECK(upper == doctest::Approx(1.0).epsilon(1e-12));

    const auto [lower_i, upper_i] = protocol::spin_cost_bounds(kLn2, true);
    CHECK(lower_i == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(upper_i == doctest::Approx(std::log(3.0) / kLn2).epsilon(1e-12));

    CHECK_THROWS_AS(protocol::spin_cost_bounds(0.0, false), std::domain_error);
}

TEST_CASE("series lies strictly inside its bounds on a log grid") {
    for (int i = 0; i < 50; ++i) {
        const double gamma = 0.05 * std::pow(100.0, i / 49.0);  // log grid [0.05, 5]
        const double cost = protocol::total_spin_cost(gamma, 1e-12).value;
        const auto [lower, upper] = protocol::spin_cost_bounds(gamma, false);
        CHECK(lower < cost);
        CHECK(cost < upper);
        const auto [lower_i, upper_i] = protocol::spin_cost_bounds(gamma, true);
        CHECK(lower_i < cost + 0.5);
        CHECK(cost + 0.5 < upper_i);
        // the with-initial variant is the plain total plus one half-quantum
        CHECK(upper_i - lower_i > 0.0);
    }
}

TEST_CASE("small-gamma limit recovers the entropy bound") {
    const double gamma = 0.01;
    const double product = gamma * protocol::total_spin_cost(gamma, 1e-14).value;
    CHECK(product == doctest::Approx(kLn2).epsilon(0.01));
    CHECK(product < kLn2);  // approaches from below without the initial spin
}

TEST_CASE("energy cost") {
    CHECK(protocol::energy_cost(0.0, 123.0) == 0.0);
    CHECK(protocol::energy_cost(1.0, 0.0) == 0.0);
    const double delta_jz = protocol::total_spin_cost(kLn2, 1e-12).value;
    const double cost = protocol::energy_cost(0.01, delta_jz);
    CHECK(cost == doctest::Approx(0.007645).epsilon(1e-4));
    CHECK(cost < 0.01 * kLn2 / kLn2);  // the epsilon * ln2 / gamma bound
    CHECK_THROWS_AS(protocol::energy_cost(-0.1, 1.0), std::domain_error);
}

TEST_SUITE_END();
