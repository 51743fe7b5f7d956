#include "eit/model.hpp"
#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "eit/units.hpp"

#include <cmath>
#include <sstream>

namespace eit {

void MediumParams::validate() const {
    if (gamma_ab < 0.0 || gamma_cb < 0.0)
        throw ValidationError("medium: relaxation rates must be non-negative");
    if (atom_density < 0.0)
        throw ValidationError("medium: atom density must be non-negative");
    if (omega1 <= 0.0)
        throw ValidationError("medium: probe carrier frequency must be positive");
}

double ControlFieldSpec::chirp_delta() const {
    return std::visit([](const auto& p) { return p.delta; }, phase);
}

void ControlFieldSpec::validate() const {
    if (chirp_delta() <= 0.0)
        throw ValidationError("control: chirp frequency must be positive");
    if (const auto* gp = std::get_if<GeneralPeriodicPhase>(&phase)) {
        if (gp->coefficients.size() % 2 == 0)
            throw ValidationError("control: coefficient list must have odd length (n in [-n_max, n_max])");
    }
}

void ProbePulseSpec::validate() const {
    if (tau <= 0.0)
        throw ValidationError("probe: Gaussian width tau must be positive");
    if (chirp_depth != 0.0 && chirp_freq <= 0.0)
        throw ValidationError("probe: chirped pulse needs a positive chirp frequency");
}

double derive_kappa2(const MediumParams& medium) {
    medium.validate();
    return medium.atom_density * medium.dipole_ab * medium.dipole_ab * medium.omega1 /
           (2.0 * AtomicUnits::eps0 * AtomicUnits::hbar);
}

MixingAngle mixing_angle(double kappa2, Complex omega2) {
    const double a2 = std::norm(omega2);
    if (a2 == 0.0)
        throw ValidationError("undefined mixing angle: control amplitude is zero");
    MixingAngle m;
    m.tan2 = kappa2 / a2;
    m.sin2 = m.tan2 / (1.0 + m.tan2);
    m.cos2 = 1.0 - m.sin2;
    m.v_group = AtomicUnits::c * m.cos2;
    return m;
}

namespace {

// max_k |sum_n conj(c_n) c_{n+k} - delta_{k0}|
double unitarity_defect(const std::vector<Complex>& c) {
    const int m = static_cast<int>(c.size());
    double worst = 0.0;
    for (int k = -(m - 1); k <= m - 1; ++k) {
        Complex acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const int j = i + k;
            if (j >= 0 && j < m)
                acc += std::conj(c[static_cast<std::size_t>(i)]) * c[static_cast<std::size_t>(j)];
        }
        if (k == 0)
            acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

} // namespace

ChirpCoefficients chirp_coefficients(const ControlFieldSpec& control, int n_max) {
    control.validate();
    ChirpCoefficients out;
    out.n_max = n_max;
    out.values.assign(static_cast<std::size_t>(2 * n_max + 1), Complex{0.0, 0.0});

    if (const auto* sin_chirp = std::get_if<SinusoidalChirp>(&control.phase)) {
        const double g = sin_chirp->depth;
        if (static_cast<double>(n_max) < std::ceil(std::fabs(g)) + 8.0) {
            std::ostringstream msg;
            msg << "chirp_coefficients: n_max=" << n_max
                << " too small for chirp depth " << g << " (need ceil(depth) + 8)";
            throw ValidationError(msg.str());
        }
        const BesselRow row = bessel_row(n_max, g);
        for (int n = -n_max; n <= n_max; ++n)
            out.values[static_cast<std::size_t>(n + n_max)] = row.at(n);
        return out;
    }

    const auto& gp = std::get<GeneralPeriodicPhase>(control.phase);
    const double defect = unitarity_defect(gp.coefficients);
    if (defect > 1e-8) {
        std::ostringstream msg;
        msg << "chirp_coefficients: non-real phase, unitarity defect " << defect;
        throw ValidationError(msg.str());
    }
    const int given_max = (static_cast<int>(gp.coefficients.size()) - 1) / 2;
    for (int n = -std::min(n_max, given_max); n <= std::min(n_max, given_max); ++n)
        out.values[static_cast<std::size_t>(n + n_max)] =
            gp.coefficients[static_cast<std::size_t>(n + given_max)];
    return out;
}

} // namespace eit
