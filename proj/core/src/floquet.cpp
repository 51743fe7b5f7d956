#include "eit/floquet.hpp"
#include "eit/errors.hpp"
#include "eit/units.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

namespace eit {

namespace {

constexpr int kInnerPad = 8;          // inner Fourier sum margin beyond s_max
constexpr double kResidualTol = 1e-8; // eigendecomposition acceptance
constexpr double kModeCondTol = 1e8;  // eigenbasis conditioning acceptance

Complex clamped_cis(Complex exponent) {
    // exp(exponent) with the decaying tail flushed to zero and growth rejected.
    if (exponent.real() < -745.0)
        return {0.0, 0.0};
    if (exponent.real() > 709.0)
        throw NumericalError("propagate: overflow in mode exponential (gain?)");
    return std::exp(exponent);
}

} // namespace

Eigen::MatrixXcd coupling_matrix(double omega, const MediumParams& medium,
                                 const ControlFieldSpec& control, int s_max) {
    medium.validate();
    control.validate();
    const double delta = control.chirp_delta();
    const double om2sq = std::norm(control.omega2);
    const int n_pad = s_max + kInnerPad;

    int n_coeff = n_pad;
    if (const auto* sc = std::get_if<SinusoidalChirp>(&control.phase))
        n_coeff = std::max(n_coeff, static_cast<int>(std::ceil(std::fabs(sc->depth))) + 8);
    const ChirpCoefficients coeff = chirp_coefficients(control, n_coeff);

    const int dim = 2 * s_max + 1;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);

    // Two-photon denominators 1/(omega + (s+n) delta + delta1 - delta2 + i gamma_cb)
    // for s+n in [-(s_max + n_pad), s_max + n_pad].
    const int q_max = s_max + n_pad;
    std::vector<Complex> inv_denom(static_cast<std::size_t>(2 * q_max + 1));
    for (int q = -q_max; q <= q_max; ++q) {
        const Complex d(omega + q * delta + medium.delta1 - medium.delta2, medium.gamma_cb);
        if (medium.gamma_cb == 0.0 && std::abs(d) < 1e-3 * delta) {
            std::ostringstream msg;
            msg << "two-photon pole on grid at omega=" << omega << ", ladder offset " << q;
            throw NumericalError(msg.str());
        }
        inv_denom[static_cast<std::size_t>(q + q_max)] = 1.0 / d;
    }

    for (int s = -s_max; s <= s_max; ++s) {
        const int row = s + s_max;
        a(row, row) = Complex(omega + s * delta + medium.delta1, medium.gamma_ab);
        if (om2sq == 0.0)
            continue;
        for (int sp = -s_max; sp <= s_max; ++sp) {
            const int k = sp - s;
            Complex sum = 0.0;
            for (int n = -n_pad; n <= n_pad; ++n) {
                const Complex cn = coeff.at(n);
                const Complex cnk = coeff.at(n - k);
                if (cn == 0.0 || cnk == 0.0)
                    continue;
                sum += cn * std::conj(cnk) * inv_denom[static_cast<std::size_t>(s + n + q_max)];
            }
            a(row, sp + s_max) -= om2sq * sum;
        }
    }
    return a;
}

Eigen::VectorXcd solve_coherence(const Eigen::VectorXcd& probe_column,
                                 const Eigen::MatrixXcd& coupling, double omega) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(coupling);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        std::ostringstream msg;
        msg << "singular coupling matrix at omega=" << omega << " (rcond=" << rcond << ")";
        throw NumericalError(msg.str());
    }
    return -lu.solve(probe_column);
}

Eigen::MatrixXcd propagation_matrix(const Eigen::MatrixXcd& coupling, double kappa2,
                                    double delta, int s_max) {
    const int dim = 2 * s_max + 1;
    Eigen::MatrixXcd n = -kappa2 * coupling.inverse();
    for (int s = -s_max; s <= s_max; ++s)
        n(s + s_max, s + s_max) += s * delta;
    return n;
}

ColumnModes decompose_propagation_matrix(const Eigen::MatrixXcd& n_matrix, double omega) {
    ColumnModes cm;
    cm.omega = omega;
    cm.n_matrix = n_matrix;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(n_matrix);
    if (solver.info() != Eigen::Success) {
        cm.use_expm = true;
        cm.residual = 1.0;
        cm.mode_condition = std::numeric_limits<double>::infinity();
        return cm;
    }
    cm.eigenvalues = solver.eigenvalues();
    cm.modes = solver.eigenvectors();
    cm.modes_inv = cm.modes.partialPivLu().inverse();

    const double n_scale = n_matrix.cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd recon =
        cm.modes * cm.eigenvalues.asDiagonal() * cm.modes_inv - n_matrix;
    cm.residual = n_scale > 0.0 ? recon.cwiseAbs().maxCoeff() / n_scale : 0.0;
    cm.mode_condition = cm.modes.norm() * cm.modes_inv.norm();
    cm.use_expm = cm.residual > kResidualTol || cm.mode_condition > kModeCondTol;
    return cm;
}

Complex susceptibility(double omega, const MediumParams& medium, Complex omega2) {
    medium.validate();
    const Complex two_photon(omega + medium.delta1 - medium.delta2, medium.gamma_cb);
    Complex denom(omega + medium.delta1, medium.gamma_ab);
    if (std::norm(omega2) > 0.0) {
        if (two_photon == Complex(0.0, 0.0)) // chi -> 0 at an exact two-photon pole
            return {0.0, 0.0};
        denom -= std::norm(omega2) / two_photon;
    }
    if (denom == Complex(0.0, 0.0))
        throw NumericalError("susceptibility: pole at the requested frequency");
    const double prefactor =
        medium.atom_density * medium.dipole_ab * medium.dipole_ab /
        (AtomicUnits::eps0 * AtomicUnits::hbar);
    return -prefactor / denom;
}

FloquetEngine::FloquetEngine(MediumParams medium, ControlFieldSpec control, FloquetGrid grid)
    : medium_(std::move(medium)), control_(std::move(control)), grid_(grid) {
    medium_.validate();
    control_.validate();
    grid_.validate();
    if (std::fabs(grid_.delta - control_.chirp_delta()) >
        1e-12 * std::fabs(control_.chirp_delta()))
        throw ValidationError("engine: grid ladder spacing must equal the control chirp frequency");
    kappa2_ = derive_kappa2(medium_);

    columns_.reserve(static_cast<std::size_t>(grid_.n_omega));
    for (int i = 0; i < grid_.n_omega; ++i) {
        const double omega = grid_.base_freq(i);
        const Eigen::MatrixXcd a = coupling_matrix(omega, medium_, control_, grid_.s_max);
        const Eigen::MatrixXcd n = propagation_matrix(a, kappa2_, grid_.delta, grid_.s_max);
        columns_.push_back(decompose_propagation_matrix(n, omega));
    }
}

Eigen::VectorXcd FloquetEngine::propagate_column(const ColumnModes& cm,
                                                 const Eigen::VectorXcd& in, double z,
                                                 bool force_expm) const {
    const Complex iz_c(0.0, z / AtomicUnits::c);
    if (!force_expm && !cm.use_expm) {
        Eigen::VectorXcd modal = cm.modes_inv * in;
        for (Eigen::Index k = 0; k < modal.size(); ++k)
            modal(k) *= clamped_cis(iz_c * (cm.omega + cm.eigenvalues(k)));
        return cm.modes * modal;
    }
    Eigen::MatrixXcd b = iz_c * cm.n_matrix;
    b.diagonal().array() += iz_c * cm.omega;
    return b.exp() * in;
}

FloquetSpectrum FloquetEngine::propagate(const FloquetSpectrum& input, double z) const {
    if (input.grid != grid_)
        throw ValidationError("propagate: input grid does not match the engine grid");
    if (z == 0.0)
        return input;
    FloquetSpectrum out(grid_);
    for (int i = 0; i < grid_.n_omega; ++i)
        out.amplitudes.col(i) =
            propagate_column(columns_[static_cast<std::size_t>(i)],
                             input.amplitudes.col(i), z, false);
    if (!out.all_finite())
        throw NumericalError("propagate: non-finite amplitudes produced");
    return out;
}

FloquetSpectrum FloquetEngine::propagate_expm(const FloquetSpectrum& input, double z) const {
    if (input.grid != grid_)
        throw ValidationError("propagate: input grid does not match the engine grid");
    FloquetSpectrum out(grid_);
    for (int i = 0; i < grid_.n_omega; ++i)
        out.amplitudes.col(i) =
            propagate_column(columns_[static_cast<std::size_t>(i)],
                             input.amplitudes.col(i), z, true);
    return out;
}

Eigen::VectorXcd FloquetEngine::coherence_column(const FloquetSpectrum& input, int i) const {
    const double omega = grid_.base_freq(i);
    const Eigen::MatrixXcd a = coupling_matrix(omega, medium_, control_, grid_.s_max);
    return solve_coherence(input.amplitudes.col(i), a, omega);
}

std::vector<Complex> reconstruct_time(const FloquetSpectrum& spectrum,
                                      const std::vector<double>& t_grid) {
    const auto cells = spectrum.flatten();
    const double dw = spectrum.grid.domega();
    std::vector<Complex> out(t_grid.size(), Complex{0.0, 0.0});
    for (std::size_t it = 0; it < t_grid.size(); ++it) {
        const double t = t_grid[it];
        Complex acc = 0.0;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            double w = dw;
            if (j == 0 || j + 1 == cells.size())
                w *= 0.5; // trapezoid end weights
            acc += cells[j].second * std::exp(Complex(0.0, -cells[j].first * t)) * w;
        }
        out[it] = acc / (2.0 * AtomicUnits::pi);
    }
    return out;
}

std::vector<ConvergenceRow> convergence_report(
    const MediumParams& medium, const ControlFieldSpec& control,
    const ProbePulseSpec& pulse, double z,
    const std::vector<std::pair<int, int>>& truncations) {
    if (truncations.size() < 2)
        throw ValidationError("convergence_report: need at least 2 truncation settings");

    struct Run {
        FloquetGrid grid;
        FloquetSpectrum out;
    };
    std::vector<Run> runs;
    for (const auto& [s_max, n_omega] : truncations) {
        FloquetGrid grid{control.chirp_delta(), n_omega, s_max};
        FloquetEngine engine(medium, control, grid);
        runs.push_back({grid, engine.propagate(incoming_spectrum(pulse, grid), z)});
    }

    std::vector<ConvergenceRow> report;
    report.push_back({truncations[0].first, truncations[0].second, 0.0, true});
    for (std::size_t r = 1; r < runs.size(); ++r) {
        const Run& a = runs[r - 1];
        const Run& b = runs[r];
        const int n_coarse = std::min(a.grid.n_omega, b.grid.n_omega);
        const int n_fine = std::max(a.grid.n_omega, b.grid.n_omega);
        if (n_fine % n_coarse != 0)
            throw ValidationError("convergence_report: n_omega values must be nested");
        const int stride_a = a.grid.n_omega / n_coarse;
        const int stride_b = b.grid.n_omega / n_coarse;
        const int s_common = std::min(a.grid.s_max, b.grid.s_max);

        double max_diff = 0.0;
        double max_ref = 0.0;
        for (int s = -s_common; s <= s_common; ++s) {
            for (int i = 0; i < n_coarse; ++i) {
                const Complex va = a.out.at(i * stride_a, s);
                const Complex vb = b.out.at(i * stride_b, s);
                max_diff = std::max(max_diff, std::abs(va - vb));
                max_ref = std::max(max_ref, std::abs(vb));
            }
        }
        const double rel = max_ref > 0.0 ? max_diff / max_ref : 0.0;
        report.push_back({truncations[r].first, truncations[r].second, rel, rel < 1e-4});
    }
    return report;
}

} // namespace eit
