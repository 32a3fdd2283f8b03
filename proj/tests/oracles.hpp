#pragma once
// Reference computations that share no code with the library: closed forms,
// brute-force root finding and analytic derivatives.

#include "nonrecip/params.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Reference device in angular units, written out by hand.
inline nonrecip::SystemParams reference_device() {
    const double tp = 2.0 * M_PI;
    nonrecip::SystemParams p;
    p.omega_m = tp * 1e7;
    p.gamma = tp * 1e2;
    p.kappa = tp * 1e6;
    p.kappa_in = tp * 1e6;
    p.kappa_t = p.kappa + p.kappa_in;
    p.J = tp * 1e3;
    p.mass = 5e-12;
    p.length = 1e-3;
    p.lambda_pump = 1.064e-6;
    p.omega_c = tp * 2.99792458e8 / p.lambda_pump;
    p.g = p.omega_c / p.length * std::sqrt(1.054571817e-34 / (2.0 * p.mass * p.omega_m));
    return p;
}

inline double amplitude(double power, double kappa, double omega) {
    return std::sqrt(2.0 * kappa * power / (1.054571817e-34 * omega));
}

/// Bare single-mode response 1/(i(Delta - delta) + kappa_t).
inline cplx bare_eta(double Delta, double delta, double kappa_t) {
    return 1.0 / (I * (Delta - delta) + kappa_t);
}

/// Two coupled bare modes (g = 0): 2x2 elimination.
inline cplx coupled_eta(double Delta, double delta, double kappa_t, double J) {
    const cplx w = I * (Delta - delta) + kappa_t;
    return w / (w * w + J * J);
}

/// d arg t / d delta for the bare single mode, from the analytic derivative
/// of t = 1 - 2 kappa / (i(Delta - delta) + kappa_t).
inline double bare_delay(double Delta, double delta, double kappa, double kappa_t) {
    const cplx d = I * (Delta - delta) + kappa_t;
    const cplx t = 1.0 - 2.0 * kappa / d;
    const cplx dt = -2.0 * kappa * I / (d * d);
    return (dt / t).imag();
}

struct Fields {
    cplx A;
    cplx C;
};

/// Optical amplitudes at a given total photon number, via the symmetric and
/// antisymmetric normal modes (eigenvalues a + iJ and a - iJ).
inline Fields optical_fields(const nonrecip::SystemParams& p, double Delta, double eps_a,
                             double eps_c, double photons) {
    const double shift = 2.0 * p.g * p.g * photons * p.omega_m /
                         (p.omega_m * p.omega_m + p.gamma * p.gamma);
    const cplx a = I * (Delta - shift) + p.kappa_t;
    const cplx s = (eps_a + eps_c) / std::sqrt(2.0) / (a + I * p.J);
    const cplx d = (eps_a - eps_c) / std::sqrt(2.0) / (a - I * p.J);
    return {(s + d) / std::sqrt(2.0), (s - d) / std::sqrt(2.0)};
}

/// All photon-number roots of N = |A(N)|^2 + |C(N)|^2 found by scanning a
/// log grid and bisecting each sign change.
inline std::vector<double> photon_roots(const nonrecip::SystemParams& p, double Delta, double eps_a,
                                        double eps_c) {
    auto h = [&](double n) {
        const Fields f = optical_fields(p, Delta, eps_a, eps_c, n);
        return n - std::norm(f.A) - std::norm(f.C);
    };
    const double upper = (eps_a * eps_a + eps_c * eps_c) / (p.kappa_t * p.kappa_t) * 1.01;
    std::vector<double> roots;
    if (upper <= 0.0) return {0.0};
    const int grid = 4000;
    const double lo = upper * 1e-14;
    double x0 = lo;
    double h0 = h(x0);
    for (int k = 1; k <= grid; ++k) {
        const double x1 = lo * std::pow(upper / lo, static_cast<double>(k) / grid);
        const double h1 = h(x1);
        if ((h0 < 0.0) != (h1 < 0.0)) {
            double a = x0;
            double b = x1;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a + b);
                if ((h(a) < 0.0) == (h(m) < 0.0)) a = m; else b = m;
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        h0 = h1;
    }
    return roots;
}

}  // namespace oracle
