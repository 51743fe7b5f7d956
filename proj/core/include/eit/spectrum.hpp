#ifndef EIT_SPECTRUM_HPP
#define EIT_SPECTRUM_HPP

#include "eit/model.hpp"

#include <Eigen/Dense>

namespace eit {

// Two-index frequency grid: reduced frequencies omega in the base band
// [-delta/2, delta/2) times the ladder index s in [-s_max, s_max].
// The physical frequency of cell (i, s) is base_freq(i) + s * delta.
struct FloquetGrid {
    double delta = 0.0;
    int n_omega = 0;
    int s_max = 0;

    double domega() const { return delta / n_omega; }
    double base_freq(int i) const { return -0.5 * delta + i * domega(); }
    int n_ladder() const { return 2 * s_max + 1; }
    double physical_freq(int i, int s) const { return base_freq(i) + s * delta; }

    bool operator==(const FloquetGrid&) const = default;

    void validate() const;
};

// Complex probe amplitudes on a FloquetGrid. Row index = s + s_max,
// column index = base-frequency index.
struct FloquetSpectrum {
    FloquetGrid grid;
    Eigen::MatrixXcd amplitudes;

    FloquetSpectrum() = default;
    explicit FloquetSpectrum(const FloquetGrid& g)
        : grid(g), amplitudes(Eigen::MatrixXcd::Zero(g.n_ladder(), g.n_omega)) {}

    Complex& at(int i, int s) { return amplitudes(s + grid.s_max, i); }
    Complex at(int i, int s) const { return amplitudes(s + grid.s_max, i); }

    // Integrated spectral power sum |amp|^2 domega.
    double total_power() const;

    bool all_finite() const;

    // Amplitudes sorted by physical frequency (the ladder cells interleave
    // into one uniform axis of spacing domega).
    std::vector<std::pair<double, Complex>> flatten() const;
};

// Analytic spectrum of the chirped-Gaussian probe at z = 0, evaluated on
// the grid with the convention F(omega) = integral dt exp(i omega t) f(t).
FloquetSpectrum incoming_spectrum(const ProbePulseSpec& pulse, const FloquetGrid& grid);

// Closed-form chirped-Gaussian transform at a single physical frequency.
Complex pulse_spectrum_value(const ProbePulseSpec& pulse, double freq);

} // namespace eit

#endif
