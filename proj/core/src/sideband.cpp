#include "nonrecip/sideband.hpp"

#include <array>
#include <sstream>
#include <utility>

namespace nonrecip {

namespace {

constexpr cplx I{0.0, 1.0};

// Swaps the clockwise and counter-clockwise slots.
constexpr std::array<int, 6> kMirror{slot::c_upper, slot::c_lower, slot::a_upper,
                                     slot::a_lower, slot::b_upper, slot::b_lower};

SidebandMatrix mirrored(const SidebandMatrix& m) {
    SidebandMatrix out;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) out(r, c) = m(kMirror[r], kMirror[c]);
    return out;
}

SidebandVector mirrored(const SidebandVector& v) {
    SidebandVector out;
    for (int r = 0; r < 6; ++r) out(r) = v(kMirror[r]);
    return out;
}

}  // namespace

std::string_view to_string(ProbePort port) noexcept { return port == ProbePort::A ? "a" : "c"; }

std::string_view to_string(SidebandMode mode) noexcept {
    return mode == SidebandMode::TwoSideband ? "two" : "literal";
}

SidebandMode parse_sideband_mode(std::string_view name) {
    if (name == "two") return SidebandMode::TwoSideband;
    if (name == "literal") return SidebandMode::LiteralAppendix;
    throw ConfigError("sideband_mode",
                      "sideband mode must be 'two' or 'literal', got '" + std::string(name) + "'");
}

cplx optical_upper_coefficient(const SystemParams& p, const SteadyState& s, double delta) {
    return I * (s.delta_eff - delta) + p.kappa_t;
}

cplx mechanical_upper_coefficient(const SystemParams& p, double delta) {
    return I * (p.omega_m - delta) + p.gamma;
}

SidebandSystem assemble_sideband_system(const SystemParams& p, const SteadyState& s, double delta,
                                        ProbePort port, SidebandMode mode) {
    if (!(s.residual <= kSteadyAcceptance)) {
        std::ostringstream msg;
        msg << "sideband system needs a converged steady state (residual " << s.residual << ")";
        throw NumericalError(msg.str());
    }

    using namespace slot;
    const cplx omega = optical_upper_coefficient(p, s, delta);
    const cplx phi = mechanical_upper_coefficient(p, delta);

    // Lower-row coefficients: in TwoSideband they come from the e^{+i delta t}
    // components, in LiteralAppendix they are conjugates of the upper rows.
    cplx omega_low;
    cplx phi_low;
    if (mode == SidebandMode::TwoSideband) {
        omega_low = p.kappa_t - I * (s.delta_eff + delta);
        phi_low = p.gamma - I * (p.omega_m + delta);
    } else {
        omega_low = std::conj(omega);
        phi_low = std::conj(phi);
    }

    const cplx ig = I * p.g;
    const cplx iJ = I * p.J;
    const cplx a0 = s.A0;
    const cplx c0 = s.C0;

    SidebandSystem sys;
    sys.delta = delta;
    sys.port = port;
    sys.mode = mode;
    SidebandMatrix& m = sys.matrix;
    m.setZero();

    // Optical upper sidebands: Omega X+ + i g X0 (B+ + B-) + i J Y+ = probe.
    m(a_upper, a_upper) = omega;
    m(a_upper, b_upper) = ig * a0;
    m(a_upper, b_lower) = ig * a0;
    m(a_upper, c_upper) = iJ;

    m(c_upper, c_upper) = omega;
    m(c_upper, b_upper) = ig * c0;
    m(c_upper, b_lower) = ig * c0;
    m(c_upper, a_upper) = iJ;

    // Optical lower sidebands (conjugated amplitudes).
    m(a_lower, a_lower) = omega_low;
    m(a_lower, b_upper) = -ig * std::conj(a0);
    m(a_lower, b_lower) = -ig * std::conj(a0);
    m(a_lower, c_lower) = -iJ;

    m(c_lower, c_lower) = omega_low;
    m(c_lower, b_upper) = -ig * std::conj(c0);
    m(c_lower, b_lower) = -ig * std::conj(c0);
    m(c_lower, a_lower) = -iJ;

    // Mechanics, driven by the beat of pump and probe sidebands.
    m(b_upper, b_upper) = phi;
    m(b_upper, a_upper) = ig * std::conj(a0);
    m(b_upper, a_lower) = ig * a0;
    m(b_upper, c_upper) = ig * std::conj(c0);
    m(b_upper, c_lower) = ig * c0;

    m(b_lower, b_lower) = phi_low;
    m(b_lower, a_upper) = -ig * std::conj(a0);
    m(b_lower, a_lower) = -ig * a0;
    m(b_lower, c_upper) = -ig * std::conj(c0);
    m(b_lower, c_lower) = -ig * c0;

    sys.rhs.setZero();
    const int probe_row = port == ProbePort::A ? a_upper : c_upper;
    sys.rhs(probe_row) = 1.0;
    if (mode == SidebandMode::LiteralAppendix) {
        // Conjugate of the probe row carries conj(eps_s) = 1.
        sys.rhs(port == ProbePort::A ? a_lower : c_lower) = 1.0;
    }
    return sys;
}

SidebandSolution solve_sideband_system(const SidebandSystem& sys) {
    const bool flip = sys.port == ProbePort::C;
    const SidebandMatrix m = flip ? mirrored(sys.matrix) : sys.matrix;
    const SidebandVector rhs = flip ? mirrored(sys.rhs) : sys.rhs;

    const Eigen::PartialPivLU<SidebandMatrix> lu(m);
    SidebandSolution sol;
    sol.rcond = lu.rcond();
    if (!(sol.rcond * kMaxCondition >= 1.0)) {
        std::ostringstream msg;
        msg << "sideband system ill-conditioned at delta = " << sys.delta
            << " rad/s (rcond " << sol.rcond << ")";
        throw NumericalError(msg.str());
    }

    SidebandVector x = lu.solve(rhs);
    // One step of iterative refinement.
    x += lu.solve(SidebandVector(rhs - m * x));

    const double rhs_norm = rhs.cwiseAbs().maxCoeff();
    sol.residual = (m * x - rhs).cwiseAbs().maxCoeff() / rhs_norm;
    sol.amplitudes = flip ? mirrored(x) : x;
    sol.response = x(slot::a_upper);
    return sol;
}

SidebandSolution sideband_response(const SystemParams& params, const SteadyState& steady,
                                   double delta, ProbePort port, SidebandMode mode) {
    return solve_sideband_system(assemble_sideband_system(params, steady, delta, port, mode));
}

}  // namespace nonrecip
