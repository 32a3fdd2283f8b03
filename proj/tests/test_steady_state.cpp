#include "nonrecip/steady_state.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace nonrecip;
using oracle::rel;

namespace {

DriveSetup red_drive(const SystemParams& p, double ratio) {
    return make_drive(p, p.omega_m, ratio * 100e-9, 100e-9);
}

}  // namespace

TEST_CASE("effective detuning") {
    const SystemParams p = oracle::reference_device();
    CHECK(effective_detuning(0.0, p, p.omega_m) == p.omega_m);
    SystemParams decoupled = p;
    decoupled.g = 0.0;
    CHECK(effective_detuning(1e9, decoupled, p.omega_m) == p.omega_m);
    const double shift = p.omega_m - effective_detuning(1.64e7, p, p.omega_m);
    CHECK(shift == doctest::Approx(2.75e5).epsilon(1e-2));
    CHECK(effective_detuning(1e3, p, -p.omega_m) < -p.omega_m);
}

TEST_CASE("undriven system rests at zero") {
    const SystemParams p = oracle::reference_device();
    const SteadyState s = solve_steady_state(p, make_drive(p, p.omega_m, 0.0, 0.0));
    CHECK(s.A0 == cplx{});
    CHECK(s.C0 == cplx{});
    CHECK(s.B0 == cplx{});
    CHECK(s.photons == 0.0);
    CHECK(s.residual == 0.0);
}

TEST_CASE("single decoupled mode has the closed form") {
    SystemParams p = oracle::reference_device();
    p.g = 0.0;
    p.J = 0.0;
    const DriveSetup d = red_drive(p, 1e4);
    const SteadyState s = solve_steady_state(p, d);
    CHECK(rel(s.A0, d.eps_a / (oracle::I * p.omega_m + p.kappa_t)) < 1e-14);
    CHECK(rel(s.C0, d.eps_c / (oracle::I * p.omega_m + p.kappa_t)) < 1e-14);

    // Doubling both pumps doubles both fields exactly.
    DriveSetup doubled = d;
    doubled.eps_a *= 2.0;
    doubled.eps_c *= 2.0;
    const SteadyState s2 = solve_steady_state(p, doubled);
    CHECK(s2.A0 == 2.0 * s.A0);
    CHECK(s2.C0 == 2.0 * s.C0);
}

TEST_CASE("photon number agrees with a brute-force root scan") {
    const SystemParams p = oracle::reference_device();
    const DriveSetup d = red_drive(p, 1e4);
    const SteadyState s = solve_steady_state(p, d);
    const auto roots = oracle::photon_roots(p, d.delta, d.eps_a, d.eps_c);
    REQUIRE(!roots.empty());
    CHECK(s.photons == doctest::Approx(1.6e7).epsilon(0.05));
    CHECK(rel(s.photons, roots.front()) < 1e-9);

    const oracle::Fields f = oracle::optical_fields(p, d.delta, d.eps_a, d.eps_c, roots.front());
    CHECK(rel(s.A0, f.A) < 1e-8);
    CHECK(rel(s.C0, f.C) < 1e-8);
    CHECK(std::norm(s.A0) > 1e3 * std::norm(s.C0));
}

TEST_CASE("residual of converged and perturbed states") {
    const SystemParams p = oracle::reference_device();
    for (double ratio : {1.0, 1e2, 1e4, 1e5}) {
        CAPTURE(ratio);
        const DriveSetup d = red_drive(p, ratio);
        SteadyState s = solve_steady_state(p, d);
        CHECK(s.residual <= 1e-10);
        CHECK(steady_residual(s, p, d) == s.residual);
        s.A0 *= 1.01;
        CHECK(steady_residual(s, p, d) > 1e-4);
    }
}

TEST_CASE("mechanical amplitude identity") {
    const SystemParams p = oracle::reference_device();
    for (double delta : {p.omega_m, -p.omega_m}) {
        for (double ratio : {1.0, 9.5, 1e4, 1e5}) {
            CAPTURE(delta);
            CAPTURE(ratio);
            const SteadyState s = solve_steady_state(p, make_drive(p, delta, ratio * 1e-7, 1e-7));
            const cplx sum = s.B0 + std::conj(s.B0);
            const double expected =
                -2.0 * p.g * s.photons * p.omega_m / (p.omega_m * p.omega_m + p.gamma * p.gamma);
            CHECK(std::abs(sum.imag()) <= 1e-10 * std::abs(sum.real()));
            CHECK(rel(sum.real(), expected) < 1e-10);
            CHECK(rel(s.delta_eff, delta + p.g * sum.real()) < 1e-12);
            CHECK(s.photons >= 0.0);
            CHECK(s.delta_eff <= delta);
        }
    }
}

TEST_CASE("pump swap mirrors the optical fields") {
    const SystemParams p = oracle::reference_device();
    const DriveSetup d = make_drive(p, -p.omega_m, 1e-2, 1e-7);
    DriveSetup swapped = d;
    std::swap(swapped.eps_a, swapped.eps_c);
    std::swap(swapped.power_a, swapped.power_c);
    const SteadyState s = solve_steady_state(p, d);
    const SteadyState m = solve_steady_state(p, swapped);
    CHECK(m.A0 == s.C0);
    CHECK(m.C0 == s.A0);
    CHECK(m.B0 == s.B0);
    CHECK(m.photons == s.photons);
    CHECK(m.delta_eff == s.delta_eff);
}

TEST_CASE("continuity in pump power") {
    const SystemParams p = oracle::reference_device();
    const SteadyState a = solve_steady_state(p, make_drive(p, p.omega_m, 1e-3, 1e-7));
    const SteadyState b = solve_steady_state(p, make_drive(p, p.omega_m, 1e-3 * (1 + 1e-6), 1e-7));
    CHECK(rel(b.photons, a.photons) < 1e-5);
    CHECK(rel(b.A0, a.A0) < 1e-5);
}

TEST_CASE("blue-sideband high power still yields a root") {
    const SystemParams p = oracle::reference_device().with_kappa_in(2.0 * M_PI * 1e3);
    const DriveSetup d = make_drive(p, -p.omega_m, 5e-2, 1e-7);
    const SteadyState s = solve_steady_state(p, d);
    CHECK(s.residual <= 1e-10);
    const auto roots = oracle::photon_roots(p, d.delta, d.eps_a, d.eps_c);
    REQUIRE(!roots.empty());
    CHECK(rel(s.photons, roots.front()) < 1e-8);
}

TEST_CASE("non-convergence without fallback is reported") {
    const SystemParams p = oracle::reference_device();
    SteadyOptions opt;
    opt.max_iterations = 1;
    opt.continuation_steps = 1;
    opt.bisection_fallback = false;
    CHECK_THROWS_AS((void)solve_steady_state(p, red_drive(p, 1e4), opt), NumericalError);

    opt.bisection_fallback = true;
    const SteadyState s = solve_steady_state(p, red_drive(p, 1e4), opt);
    CHECK(s.used_bisection);
    CHECK(s.residual <= 1e-10);
}
