#ifndef EIT_FLOQUET_HPP
#define EIT_FLOQUET_HPP

#include "eit/model.hpp"
#include "eit/spectrum.hpp"

#include <Eigen/Dense>
#include <vector>

namespace eit {

// Ladder coupling matrix A at one reduced frequency:
//   A[s,s'] = (omega + s*delta + delta1 + i*gamma_ab) delta_{ss'}
//             - |Omega2|^2 sum_n c_n conj(c_{n-(s'-s)})
//               / (omega + (s+n)*delta + delta1 - delta2 + i*gamma_cb)
// with s, s' in [-s_max, s_max] and the inner sum truncated at |n| <= s_max + 8.
Eigen::MatrixXcd coupling_matrix(double omega, const MediumParams& medium,
                                 const ControlFieldSpec& control, int s_max);

// Coherence response sigma_ab = -A^{-1} * probe_column.
Eigen::VectorXcd solve_coherence(const Eigen::VectorXcd& probe_column,
                                 const Eigen::MatrixXcd& coupling, double omega);

// N[s,k] = s*delta*delta_{sk} - kappa2 * (A^{-1})[s,k]
Eigen::MatrixXcd propagation_matrix(const Eigen::MatrixXcd& coupling, double kappa2,
                                    double delta, int s_max);

// Eigendecomposition of one propagation matrix, with the matrix kept for
// the matrix-exponential fallback when the eigenbasis is ill-conditioned.
struct ColumnModes {
    double omega = 0.0;
    Eigen::MatrixXcd n_matrix;
    Eigen::VectorXcd eigenvalues;
    Eigen::MatrixXcd modes;     // U, columns normalized
    Eigen::MatrixXcd modes_inv; // U^{-1}
    double residual = 0.0;      // ||N U - U diag||_max / ||N||_max
    double mode_condition = 0.0;
    bool use_expm = false;
};

ColumnModes decompose_propagation_matrix(const Eigen::MatrixXcd& n_matrix, double omega);

// Unchirped electric susceptibility
//   chi(omega) = -(density |d_ab|^2 / eps0 hbar)
//                / (omega + delta1 + i gamma_ab
//                   - |Omega2|^2 / (omega + delta1 - delta2 + i gamma_cb))
Complex susceptibility(double omega, const MediumParams& medium, Complex omega2);

// Per-base-frequency mode propagator for a fixed medium, control field
// and grid. Columns are independent; the engine is immutable after
// construction and safe for concurrent read-only use.
class FloquetEngine {
public:
    FloquetEngine(MediumParams medium, ControlFieldSpec control, FloquetGrid grid);

    const FloquetGrid& grid() const { return grid_; }
    const MediumParams& medium() const { return medium_; }
    const ControlFieldSpec& control() const { return control_; }
    double kappa2() const { return kappa2_; }
    const ColumnModes& column(int i) const { return columns_[static_cast<std::size_t>(i)]; }

    // Omega_out = U exp[i (z/c)(omega + N^d)] U^{-1} Omega_in per column;
    // ill-conditioned columns use expm[i (z/c)(omega I + N)] instead.
    FloquetSpectrum propagate(const FloquetSpectrum& input, double z) const;

    // Force the matrix-exponential path everywhere (used for path cross-checks).
    FloquetSpectrum propagate_expm(const FloquetSpectrum& input, double z) const;

    // sigma_ab ladder vector for the probe column at base-frequency index i.
    Eigen::VectorXcd coherence_column(const FloquetSpectrum& input, int i) const;

private:
    Eigen::VectorXcd propagate_column(const ColumnModes& cm, const Eigen::VectorXcd& in,
                                      double z, bool force_expm) const;

    MediumParams medium_;
    ControlFieldSpec control_;
    FloquetGrid grid_;
    double kappa2_ = 0.0;
    std::vector<ColumnModes> columns_;
};

// Time-domain envelope at the spectrum's position:
//   Omega1(t) = (1/2pi) sum_cells amp * exp(-i nu t) * w(nu)
// with trapezoid weights over the full physical frequency axis.
std::vector<Complex> reconstruct_time(const FloquetSpectrum& spectrum,
                                      const std::vector<double>& t_grid);

struct ConvergenceRow {
    int s_max = 0;
    int n_omega = 0;
    double rel_delta = 0.0; // vs previous truncation; 0 for the first row
    bool pass = true;
};

// Output-spectrum differences between successive truncation settings,
// compared on coinciding physical frequencies. PASS if < 1e-4 relative.
std::vector<ConvergenceRow> convergence_report(
    const MediumParams& medium, const ControlFieldSpec& control,
    const ProbePulseSpec& pulse, double z,
    const std::vector<std::pair<int, int>>& truncations); // (s_max, n_omega)

} // namespace eit

#endif
