#include "eit/adiabatic.hpp"
#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "eit/units.hpp"

#include <cmath>

namespace eit {

namespace {

const SinusoidalChirp& sinusoidal_phase(const ControlFieldSpec& control) {
    const auto* sc = std::get_if<SinusoidalChirp>(&control.phase);
    if (!sc)
        throw ValidationError("adiabatic model: closed forms require a sinusoidal control chirp");
    return *sc;
}

double gauss(double freq, double tau) {
    const double arg = freq * tau;
    if (std::fabs(arg) > 60.0)
        return 0.0;
    return std::exp(-0.25 * arg * arg);
}

} // namespace

double dressed_chirp_depth(const MediumParams& medium, const ControlFieldSpec& control) {
    const auto& sc = sinusoidal_phase(control);
    const MixingAngle theta = mixing_angle(derive_kappa2(medium), control.omega2);
    return sc.depth * theta.sin2;
}

Complex pulse_time_value(const ProbePulseSpec& pulse, double t) {
    const double tr = t - pulse.center_time;
    const double env = std::exp(-tr * tr / (pulse.tau * pulse.tau));
    Complex v = pulse.omega10 * env;
    if (pulse.chirp_depth != 0.0)
        v *= std::exp(Complex(0.0, pulse.chirp_depth * std::sin(pulse.chirp_freq * tr)));
    return v;
}

Complex adiabatic_time_solution(const ProbePulseSpec& pulse, const ControlFieldSpec& control,
                                const MediumParams& medium, double z, double t) {
    const auto& sc = sinusoidal_phase(control);
    const MixingAngle theta = mixing_angle(derive_kappa2(medium), control.omega2);
    const double g_eff = sc.depth * theta.sin2;
    const double t_ret = t - z / theta.v_group;
    const double alpha_now = g_eff * std::sin(sc.delta * t);
    const double alpha_ret = g_eff * std::sin(sc.delta * t_ret);
    return pulse_time_value(pulse, t_ret) * std::exp(Complex(0.0, alpha_now - alpha_ret));
}

FloquetSpectrum adiabatic_propagate(const FloquetSpectrum& input,
                                    const ControlFieldSpec& control,
                                    const MediumParams& medium, double z) {
    const double g_eff = dressed_chirp_depth(medium, control);
    const MixingAngle theta = mixing_angle(derive_kappa2(medium), control.omega2);
    const FloquetGrid& grid = input.grid;
    const int s_max = grid.s_max;
    const int dim = grid.n_ladder();

    const BesselRow row = bessel_row(2 * s_max + 10, -g_eff);
    Eigen::MatrixXd u(dim, dim);
    for (int s = -s_max; s <= s_max; ++s)
        for (int k = -s_max; k <= s_max; ++k)
            u(s + s_max, k + s_max) = row.at(s - k);

    FloquetSpectrum out(grid);
    Eigen::VectorXcd modal(dim);
    for (int i = 0; i < grid.n_omega; ++i) {
        const double omega = grid.base_freq(i);
        modal = u.transpose() * input.amplitudes.col(i); // U'^{-1} = U'^T
        for (int k = -s_max; k <= s_max; ++k)
            modal(k + s_max) *=
                std::exp(Complex(0.0, z * (omega + k * grid.delta) / theta.v_group));
        out.amplitudes.col(i) = u * modal;
    }
    return out;
}

FloquetSpectrum adiabatic_spectrum(const ProbePulseSpec& pulse,
                                   const ControlFieldSpec& control,
                                   const MediumParams& medium, double z,
                                   const FloquetGrid& grid) {
    pulse.validate();
    grid.validate();
    const auto& sc = sinusoidal_phase(control);
    const MixingAngle theta = mixing_angle(derive_kappa2(medium), control.omega2);
    const double g_eff = sc.depth * theta.sin2;
    const double delta = sc.delta;
    const double vg = theta.v_group;

    const bool same_freq =
        std::fabs(pulse.chirp_freq - delta) <= 1e-12 * delta || pulse.chirp_depth == 0.0;
    const bool matched =
        same_freq && std::fabs(pulse.chirp_depth - g_eff) <= 1e-9 * std::max(1.0, g_eff);
    const bool pure_gaussian = pulse.chirp_depth == 0.0;

    if (!matched && !pure_gaussian)
        return adiabatic_propagate(incoming_spectrum(pulse, grid), control, medium, z);

    const int n_max = static_cast<int>(std::ceil(std::fabs(g_eff))) + 25;
    const BesselRow row = bessel_row(n_max + 8, g_eff);
    const double amp = std::sqrt(AtomicUnits::pi) * pulse.tau;
    // The envelope term must be reachable for every grid frequency, so the
    // outer sum covers the ladder range on top of the envelope support.
    const int j_max =
        grid.s_max + static_cast<int>(std::ceil(60.0 / (pulse.tau * delta))) + 2;

    FloquetSpectrum out(grid);
    for (int s = -grid.s_max; s <= grid.s_max; ++s) {
        for (int i = 0; i < grid.n_omega; ++i) {
            const double nu = grid.physical_freq(i, s);
            Complex sum = 0.0;
            if (matched) {
                for (int n = -n_max; n <= n_max; ++n)
                    sum += row.at(n) * gauss(nu + n * delta, pulse.tau) *
                           std::exp(Complex(0.0, (nu + n * delta) * z / vg));
            } else {
                for (int j = -j_max; j <= j_max; ++j) {
                    const double env = gauss(nu + j * delta, pulse.tau);
                    if (env == 0.0)
                        continue;
                    for (int n = -n_max; n <= n_max; ++n)
                        sum += row.at(n) * row.at(n - j) * env *
                               std::exp(Complex(0.0, (nu + n * delta) * z / vg));
                }
            }
            Complex v = pulse.omega10 * amp * sum;
            if (pulse.center_time != 0.0)
                v *= std::exp(Complex(0.0, nu * pulse.center_time));
            out.at(i, s) = v;
        }
    }
    return out;
}

NPrimeSystem nprime_eigensystem(double g_eff, double delta, int s_max) {
    if (static_cast<double>(s_max) < g_eff + 12.0)
        throw ValidationError("nprime_eigensystem: need s_max >= g_eff + 12");
    NPrimeSystem sys;
    sys.s_max = s_max;
    sys.delta = delta;
    sys.g_eff = g_eff;
    const int dim = 2 * s_max + 1;

    sys.matrix = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = -s_max; s <= s_max; ++s) {
        sys.matrix(s + s_max, s + s_max) = s * delta;
        if (s < s_max) {
            sys.matrix(s + s_max, s + 1 + s_max) = delta * g_eff / 2.0;
            sys.matrix(s + 1 + s_max, s + s_max) = delta * g_eff / 2.0;
        }
    }

    const BesselRow row = bessel_row(2 * s_max + 10, -g_eff);
    sys.analytic_modes.resize(dim, dim);
    sys.analytic_eigenvalues.resize(dim);
    for (int k = -s_max; k <= s_max; ++k) {
        sys.analytic_eigenvalues(k + s_max) = k * delta;
        for (int s = -s_max; s <= s_max; ++s)
            sys.analytic_modes(s + s_max, k + s_max) = row.at(s - k);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sys.matrix);
    sys.numeric_eigenvalues = solver.eigenvalues(); // ascending, aligns with k + s_max

    const int margin = static_cast<int>(std::ceil(g_eff)) + 12;
    double worst = 0.0;
    for (int k = -s_max + margin; k <= s_max - margin; ++k)
        worst = std::max(worst,
                         std::fabs(sys.numeric_eigenvalues(k + s_max) - k * delta));
    sys.max_interior_deviation = worst;
    return sys;
}

Complex overlap(const ProbePulseSpec& pulse1, const ProbePulseSpec& pulse2) {
    pulse1.validate();
    pulse2.validate();
    if (pulse1.center_time != pulse2.center_time)
        throw ValidationError("overlap: pulses must share the same center time");
    const double t1 = pulse1.tau;
    const double t2 = pulse2.tau;
    const double inv_a = 1.0 / (1.0 / (t1 * t1) + 1.0 / (t2 * t2));
    const double w = std::sqrt(2.0 * t1 * t2 / (t1 * t1 + t2 * t2));

    const int n1 = static_cast<int>(std::ceil(std::fabs(pulse1.chirp_depth))) + 15;
    const int n2 = static_cast<int>(std::ceil(std::fabs(pulse2.chirp_depth))) + 15;
    const BesselRow r1 = bessel_row(n1 + 8, pulse1.chirp_depth);
    const BesselRow r2 = bessel_row(n2 + 8, pulse2.chirp_depth);

    double sum = 0.0;
    for (int n = -n1; n <= n1; ++n) {
        const double jn = r1.at(n);
        for (int s = -n2; s <= n2; ++s) {
            const double prod = jn * r2.at(s);
            if (std::fabs(prod) < 1e-12)
                continue;
            const double d = n * pulse1.chirp_freq - s * pulse2.chirp_freq;
            const double expo = 0.25 * d * d * inv_a;
            if (expo > 60.0)
                continue;
            sum += prod * std::exp(-expo);
        }
    }
    return Complex(w * sum, 0.0);
}

ProjectionResult project_onto_optimal(const ProbePulseSpec& pulse,
                                      const ControlFieldSpec& control,
                                      const MediumParams& medium) {
    const auto& sc = sinusoidal_phase(control);
    ProjectionResult res;
    res.optimal_pulse = pulse;
    res.optimal_pulse.chirp_depth = dressed_chirp_depth(medium, control);
    res.optimal_pulse.chirp_freq = sc.delta;
    res.coefficient = overlap(pulse, res.optimal_pulse);
    const double v2 = std::norm(res.coefficient);
    res.residual_norm = std::sqrt(std::max(0.0, 1.0 - v2));
    return res;
}

double oscillation_period(const MediumParams& medium, const ControlFieldSpec& control) {
    const MixingAngle theta = mixing_angle(derive_kappa2(medium), control.omega2);
    return 2.0 * AtomicUnits::pi * AtomicUnits::c * theta.cos2 / control.chirp_delta();
}

} // namespace eit
