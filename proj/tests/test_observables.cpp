#include "nonrecip/observables.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <vector>

using namespace nonrecip;
using oracle::rel;

namespace {

SystemParams bare(double kappa_in_factor) {
    SystemParams p = oracle::reference_device();
    p.g = 0.0;
    p.J = 0.0;
    return p.with_kappa_in(kappa_in_factor * p.kappa);
}

SteadyState bare_steady(const SystemParams& p) {
    return solve_steady_state(p, make_drive(p, p.omega_m, 1e-7, 1e-7));
}

}  // namespace

TEST_CASE("transmission amplitude") {
    static_assert(transmission_amplitude(cplx{}, 5.0) == cplx{1.0, 0.0});
    CHECK(transmissivity(cplx{3.0, 4.0}) == 25.0);

    // Critical coupling: eta = 1/(2 kappa) at line centre nulls the output.
    const SystemParams crit = bare(1.0);
    const SteadyState s = bare_steady(crit);
    CHECK(std::abs(transmission_at(crit, s, crit.omega_m, ProbePort::A)) < 1e-15);

    const SystemParams over = bare(1e-3);
    const cplx t = transmission_at(over, bare_steady(over), over.omega_m, ProbePort::A);
    CHECK(t.real() == doctest::Approx(1.0 - 2.0 / 1.001).epsilon(1e-12));
    CHECK(t.real() == doctest::Approx(-0.998).epsilon(1e-3));
    CHECK(transmissivity(t) == doctest::Approx(0.996).epsilon(1e-3));
}

TEST_CASE("phase unwrapping") {
    CHECK_THROWS_AS((void)phase_spectrum({}), std::invalid_argument);

    const std::vector<cplx> real_positive(5, cplx{2.0, 0.0});
    for (double phi : phase_spectrum(real_positive)) CHECK(phi == 0.0);

    std::vector<cplx> circle;
    for (int k = 0; k <= 64; ++k) circle.push_back(std::polar(0.5, 2.0 * M_PI * k / 64.0 - 3.0));
    const auto phi = phase_spectrum(circle);
    CHECK(phi.back() - phi.front() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    CHECK(phi.front() > -M_PI);
    CHECK(phi.front() <= M_PI);
    for (std::size_t k = 1; k < phi.size(); ++k) CHECK(std::abs(phi[k] - phi[k - 1]) <= M_PI);
}

TEST_CASE("overcoupled bare line winds once") {
    const SystemParams p = bare(1e-3);
    const SteadyState s = bare_steady(p);
    std::vector<cplx> t;
    for (int k = 0; k <= 4000; ++k) {
        const double delta = p.omega_m + (k - 2000) * 0.01 * p.kappa_t;
        t.push_back(transmission_at(p, s, delta, ProbePort::A));
    }
    const auto phi = phase_spectrum(t);
    const cplx first = 1.0 - 2.0 * p.kappa * oracle::bare_eta(p.omega_m, p.omega_m - 20.0 * p.kappa_t, p.kappa_t);
    const cplx last = 1.0 - 2.0 * p.kappa * oracle::bare_eta(p.omega_m, p.omega_m + 20.0 * p.kappa_t, p.kappa_t);
    const double expected = 2.0 * M_PI - (std::arg(first) - std::arg(last));
    CHECK(phi.back() - phi.front() == doctest::Approx(expected).epsilon(1e-9));
    CHECK(phi.back() - phi.front() > 1.9 * M_PI);
}

TEST_CASE("bare group delay matches the analytic derivative") {
    for (double factor : {1e-3, 0.1, 0.5, 2.0}) {
        CAPTURE(factor);
        const SystemParams p = bare(factor);
        const SteadyState s = bare_steady(p);
        for (double offset : {0.0, 0.3, -1.0, 4.0}) {
            const double delta = p.omega_m + offset * p.kappa_t;
            const DelayEstimate est = converged_group_delay(p, s, delta, ProbePort::A);
            CHECK(est.converged);
            CHECK(est.relative_change < 1e-3);
            CHECK(rel(est.tau, oracle::bare_delay(p.omega_m, delta, p.kappa, p.kappa_t)) < 1e-6);
        }
    }
}

TEST_CASE("overcoupled line centre is slow") {
    const SystemParams p = bare(1e-3);
    const SteadyState s = bare_steady(p);
    const double tau = converged_group_delay(p, s, p.omega_m, ProbePort::A).tau;
    const double closed = 2.0 * p.kappa / (p.kappa_t * (2.0 * p.kappa - p.kappa_t));
    CHECK(tau > 0.0);
    CHECK(rel(tau, closed) < 1e-6);
}

TEST_CASE("far-detuned probe has no delay") {
    const SystemParams p = bare(1.0);
    const SteadyState s = bare_steady(p);
    const double tau = converged_group_delay(p, s, p.omega_m + 1e3 * p.kappa_t, ProbePort::A).tau;
    CHECK(std::abs(tau) < 1e-5 / p.kappa_t);
}

TEST_CASE("coarse stencil raises a phase jump") {
    const SystemParams p = bare(1e-3);
    const SteadyState s = bare_steady(p);
    CHECK_THROWS_AS((void)group_delay(p, s, p.omega_m, ProbePort::A, 2.0 * p.kappa_t), PhaseJumpError);
    CHECK_NOTHROW((void)group_delay(p, s, p.omega_m, ProbePort::A, 1e-3 * p.kappa_t));
}

TEST_CASE("drive overload solves the steady state first") {
    const SystemParams p = oracle::reference_device().with_kappa_in(2.0 * M_PI * 1e3);
    const DriveSetup d = make_drive(p, -p.omega_m, 1e-2, 1e-7);
    const SteadyState s = solve_steady_state(p, d);
    const double h = 1e-6 * p.omega_m;
    CHECK(group_delay(p, d, -p.omega_m, ProbePort::C, h) ==
          group_delay(p, s, -p.omega_m, ProbePort::C, h));
}

TEST_CASE("pump swap exchanges the delays") {
    const SystemParams p = oracle::reference_device().with_kappa_in(2.0 * M_PI * 1e3);
    const DriveSetup d = make_drive(p, -p.omega_m, 1e-2, 1e-7);
    DriveSetup swapped = d;
    std::swap(swapped.eps_a, swapped.eps_c);
    const SteadyState s = solve_steady_state(p, d);
    const SteadyState m = solve_steady_state(p, swapped);
    for (double x : {-1.001, -1.0, -0.9995}) {
        const double delta = x * p.omega_m;
        CHECK(converged_group_delay(p, m, delta, ProbePort::A).tau ==
              converged_group_delay(p, s, delta, ProbePort::C).tau);
        CHECK(transmissivity(transmission_at(p, m, delta, ProbePort::C)) ==
              transmissivity(transmission_at(p, s, delta, ProbePort::A)));
    }
}

TEST_CASE("fast and slow light at the blue-sideband operating point") {
    const SystemParams p = oracle::reference_device().with_kappa_in(2.0 * M_PI * 1e3);
    const SteadyState s = solve_steady_state(p, make_drive(p, -p.omega_m, 1e-2, 1e-7));
    const double tau_a = converged_group_delay(p, s, -p.omega_m, ProbePort::A).tau;
    const double tau_c = converged_group_delay(p, s, -p.omega_m, ProbePort::C).tau;
    CHECK(tau_a < 0.0);
    CHECK(tau_c > 0.0);
    CHECK(std::abs(tau_a) > 0.1e-6);
    CHECK(std::abs(tau_c) == doctest::Approx(0.3e-6).epsilon(0.2));
}
