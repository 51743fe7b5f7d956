#ifndef EIT_ADIABATIC_HPP
#define EIT_ADIABATIC_HPP

#include "eit/model.hpp"
#include "eit/spectrum.hpp"

#include <Eigen/Dense>

namespace eit {

// Closed-form solutions for adiabatic, relaxationless, resonant propagation.
// The probe picks up a phase alpha(t) = chirp_depth * sin2(theta) * sin(delta t)
// and travels at v_g = c cos2(theta) with its modulus preserved.

// Effective probe chirp depth imprinted by the dressing, g * sin^2(theta).
double dressed_chirp_depth(const MediumParams& medium, const ControlFieldSpec& control);

// Envelope value of the incoming pulse at time t (chirp phase included).
Complex pulse_time_value(const ProbePulseSpec& pulse, double t);

// Omega1(z,t) = Omega1(0, t - z/v_g) exp[-i alpha(t - z/v_g)] exp[i alpha(t)]
Complex adiabatic_time_solution(const ProbePulseSpec& pulse, const ControlFieldSpec& control,
                                const MediumParams& medium, double z, double t);

// Ladder propagation in the analytic mode basis U'[s,k] = J_{s-k}(-g_eff):
// per column, out = U' diag(exp[i z (omega + k delta)/v_g]) U'^{-1} in.
FloquetSpectrum adiabatic_propagate(const FloquetSpectrum& input,
                                    const ControlFieldSpec& control,
                                    const MediumParams& medium, double z);

// Spectrum of the adiabatic solution for a chirped-Gaussian probe: the
// matched chirp and pure-Gaussian cases use their single/double Bessel
// sums; other pulses go through the mode-basis route on the grid.
FloquetSpectrum adiabatic_spectrum(const ProbePulseSpec& pulse,
                                   const ControlFieldSpec& control,
                                   const MediumParams& medium, double z,
                                   const FloquetGrid& grid);

// Tridiagonal analytic coupling matrix: diag s*delta, off-diagonals
// delta*g_eff/2, with exact eigenvalues k*delta and eigenvectors
// J_{s-k}(-g_eff).
struct NPrimeSystem {
    int s_max = 0;
    double delta = 0.0;
    double g_eff = 0.0;
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd analytic_modes;      // U'[s,k] = J_{s-k}(-g_eff)
    Eigen::VectorXd analytic_eigenvalues; // k*delta
    Eigen::VectorXd numeric_eigenvalues;  // sorted ascending
    double max_interior_deviation = 0.0;  // numeric vs k*delta, edge modes excluded
};

NPrimeSystem nprime_eigensystem(double g_eff, double delta, int s_max);

// Overlap of two normalized chirped-Gaussian pulses,
// V = W sum_{n,s} J_n(g1) J_s(g2) exp[-(n D1 - s D2)^2 / (4 (1/tau1^2 + 1/tau2^2))],
// W = sqrt(2 tau1 tau2 / (tau1^2 + tau2^2)).
Complex overlap(const ProbePulseSpec& pulse1, const ProbePulseSpec& pulse2);

struct ProjectionResult {
    ProbePulseSpec optimal_pulse; // same envelope, chirp depth g sin2(theta), frequency delta
    Complex coefficient;          // overlap with the optimal pulse
    double residual_norm = 0.0;   // sqrt(1 - |V|^2)
};

ProjectionResult project_onto_optimal(const ProbePulseSpec& pulse,
                                      const ControlFieldSpec& control,
                                      const MediumParams& medium);

// z period of the spectrum oscillation, 2 pi c cos2(theta) / delta.
double oscillation_period(const MediumParams& medium, const ControlFieldSpec& control);

} // namespace eit

#endif
