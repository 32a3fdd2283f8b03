#include "nonrecip/steady_state.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace nonrecip {

namespace {

constexpr cplx I{0.0, 1.0};

struct OpticalSolution {
    cplx A0;
    cplx C0;
    double photons;  // f(N)
};

// Closed-form inverse of [[a, iJ], [iJ, a]]; symmetric in (eps_a, eps_c) so
// swapping the pumps swaps A0 and C0 bit-for-bit.
OpticalSolution optical_fields(double n, const SystemParams& p, double delta, double eps_a,
                               double eps_c) {
    const cplx a = I * effective_detuning(n, p, delta) + p.kappa_t;
    const cplx det = a * a + p.J * p.J;
    assert(std::abs(det) > 0.0 && "singular optical block requires kappa_t == 0");
    OpticalSolution s;
    s.A0 = (a * eps_a - I * p.J * eps_c) / det;
    s.C0 = (a * eps_c - I * p.J * eps_a) / det;
    s.photons = std::norm(s.A0) + std::norm(s.C0);
    return s;
}

struct Ramp {
    const SystemParams& p;
    double delta;
    double eps_a;
    double eps_c;

    [[nodiscard]] double map(double n) const { return optical_fields(n, p, delta, eps_a, eps_c).photons; }
    [[nodiscard]] double mismatch(double n) const { return n - map(n); }
    // |A0|^2 + |C0|^2 <= (eps_a^2 + eps_c^2) / kappa_t^2 since the optical
    // block is normal with singular values >= kappa_t.
    [[nodiscard]] double upper() const {
        return (eps_a * eps_a + eps_c * eps_c) / (p.kappa_t * p.kappa_t);
    }
};

bool converged(double n, double fn, double tol) {
    return std::abs(n - fn) / std::max(n, 1.0) < tol;
}

double bisect(const Ramp& r, double lo, double hi, double tol) {
    double h_lo = r.mismatch(lo);
    for (int i = 0; i < 400; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double h_mid = r.mismatch(mid);
        if (converged(mid, r.map(mid), tol)) return mid;
        if ((h_mid < 0.0) == (h_lo < 0.0)) {
            lo = mid;
            h_lo = h_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// All sign changes of N - f(N) on [0, upper], located on a log grid and
// refined by bisection.
std::vector<double> scan_roots(const Ramp& r, double tol) {
    std::vector<double> roots;
    const double upper = r.upper();
    if (!(upper > 0.0)) return {0.0};

    constexpr int grid = 600;
    const double floor = upper * 1e-14;
    double prev_n = 0.0;
    double prev_h = r.mismatch(0.0);
    for (int k = 0; k <= grid; ++k) {
        const double n = floor * std::pow(upper / floor, static_cast<double>(k) / grid);
        const double h = r.mismatch(n);
        if (h == 0.0) {
            roots.push_back(n);
        } else if ((h < 0.0) != (prev_h < 0.0) && prev_h != 0.0) {
            roots.push_back(bisect(r, prev_n, n, tol));
        }
        prev_n = n;
        prev_h = h;
    }
    return roots;
}

}  // namespace

double effective_detuning(double photons, const SystemParams& p, double delta) {
    const double spring = 2.0 * p.g * p.g * photons * p.omega_m /
                          (p.omega_m * p.omega_m + p.gamma * p.gamma);
    return delta - spring;
}

SteadyState solve_steady_state(const SystemParams& params, const DriveSetup& drive,
                               const SteadyOptions& options) {
    assert(params.kappa_t > 0.0);
    SteadyState out;

    const int steps = std::max(options.continuation_steps, 1);
    const double alpha = options.damping;
    // Powers ramp log-uniformly from 1e-8 of the target up to the target.
    constexpr double first_fraction = 1e-8;

    double n = 0.0;
    std::vector<double> extra;
    for (int k = 0; k < steps; ++k) {
        const double fraction =
            steps == 1 ? 1.0
                       : first_fraction * std::pow(1.0 / first_fraction,
                                                   static_cast<double>(k) / (steps - 1));
        const double scale = std::sqrt(fraction);
        const Ramp ramp{params, drive.delta, drive.eps_a * scale, drive.eps_c * scale};

        bool ok = false;
        for (int it = 0; it < options.max_iterations; ++it) {
            ++out.iterations;
            const double fn = ramp.map(n);
            if (converged(n, fn, options.tolerance)) {
                ok = true;
                break;
            }
            n = (1.0 - alpha) * n + alpha * fn;
        }
        if (ok) continue;

        const double guess = n;
        if (!options.bisection_fallback) {
            std::ostringstream msg;
            msg << "steady state did not converge after " << options.max_iterations
                << " iterations at power fraction " << fraction << "; last N = " << guess
                << ", bracket [0, " << ramp.upper() << "]";
            throw NumericalError(msg.str());
        }
        out.used_bisection = true;
        std::vector<double> roots = scan_roots(ramp, options.tolerance);
        if (roots.empty()) {
            std::ostringstream msg;
            msg << "steady state: no root of N - f(N) in [0, " << ramp.upper()
                << "]; last N = " << guess;
            throw NumericalError(msg.str());
        }
        auto nearest = std::min_element(roots.begin(), roots.end(), [&](double x, double y) {
            return std::abs(x - guess) < std::abs(y - guess);
        });
        n = *nearest;
        if (k == steps - 1) {
            roots.erase(nearest);
            extra = std::move(roots);
        }
    }

    const OpticalSolution fields = optical_fields(n, params, drive.delta, drive.eps_a, drive.eps_c);
    out.A0 = fields.A0;
    out.C0 = fields.C0;
    out.photons = n;
    out.B0 = -I * params.g * n / (I * params.omega_m + params.gamma);
    out.delta_eff = effective_detuning(n, params, drive.delta);
    out.other_roots = std::move(extra);
    out.residual = steady_residual(out, params, drive);
    return out;
}

double steady_residual(const SteadyState& s, const SystemParams& p, const DriveSetup& d) {
    const cplx detuned = I * d.delta + p.kappa_t;
    const double q = 2.0 * s.B0.real();  // B0 + B0*
    const cplx r_a = -detuned * s.A0 - I * p.g * s.A0 * q - I * p.J * s.C0 + d.eps_a;
    const cplx r_c = -detuned * s.C0 - I * p.g * s.C0 * q - I * p.J * s.A0 + d.eps_c;
    const cplx r_b = -(I * p.omega_m + p.gamma) * s.B0 -
                     I * p.g * (std::norm(s.A0) + std::norm(s.C0));
    const double scale = std::max({d.eps_a, d.eps_c, p.omega_m * std::abs(s.B0), 1.0});
    return std::max({std::abs(r_a), std::abs(r_c), std::abs(r_b)}) / scale;
}

}  // namespace nonrecip
