#include "eit/spectrum.hpp"
#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "eit/units.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eit {

void FloquetGrid::validate() const {
    if (delta <= 0.0)
        throw ValidationError("grid: ladder spacing delta must be positive");
    if (n_omega < 2)
        throw ValidationError("grid: need at least 2 base-band samples");
    if (s_max < 0)
        throw ValidationError("grid: s_max must be non-negative");
}

double FloquetSpectrum::total_power() const {
    return amplitudes.squaredNorm() * grid.domega();
}

bool FloquetSpectrum::all_finite() const {
    return amplitudes.allFinite();
}

std::vector<std::pair<double, Complex>> FloquetSpectrum::flatten() const {
    std::vector<std::pair<double, Complex>> out;
    out.reserve(static_cast<std::size_t>(grid.n_ladder()) * grid.n_omega);
    for (int s = -grid.s_max; s <= grid.s_max; ++s)
        for (int i = 0; i < grid.n_omega; ++i)
            out.emplace_back(grid.physical_freq(i, s), at(i, s));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Complex pulse_spectrum_value(const ProbePulseSpec& pulse, double freq) {
    pulse.validate();
    const double tau = pulse.tau;
    const double amp = std::sqrt(AtomicUnits::pi) * tau;
    Complex sum = 0.0;
    if (pulse.chirp_depth == 0.0) {
        const double arg = freq * tau;
        sum = std::exp(-0.25 * arg * arg);
    } else {
        const int n_max = static_cast<int>(std::ceil(std::fabs(pulse.chirp_depth))) + 25;
        const BesselRow row = bessel_row(n_max + 8, pulse.chirp_depth);
        for (int n = -n_max; n <= n_max; ++n) {
            const double arg = (freq + n * pulse.chirp_freq) * tau;
            if (std::fabs(arg) > 60.0)
                continue;
            sum += row.at(n) * std::exp(-0.25 * arg * arg);
        }
    }
    Complex value = pulse.omega10 * amp * sum;
    if (pulse.center_time != 0.0)
        value *= std::exp(Complex(0.0, freq * pulse.center_time));
    return value;
}

FloquetSpectrum incoming_spectrum(const ProbePulseSpec& pulse, const FloquetGrid& grid) {
    pulse.validate();
    grid.validate();
    const double spectral_width = 1.0 / pulse.tau;
    if (spectral_width / grid.domega() < 8.0) {
        std::ostringstream msg;
        msg << "under-resolved spectrum: " << spectral_width / grid.domega()
            << " samples across 1/tau, need at least 8";
        throw ValidationError(msg.str());
    }
    const int needed = static_cast<int>(std::ceil(std::fabs(pulse.chirp_depth))) + 8;
    if (grid.s_max < needed && pulse.chirp_depth != 0.0) {
        std::ostringstream msg;
        msg << "ladder range too small: s_max=" << grid.s_max
            << ", need at least ceil(chirp_depth) + 8 = " << needed;
        throw ValidationError(msg.str());
    }

    FloquetSpectrum spec(grid);
    for (int s = -grid.s_max; s <= grid.s_max; ++s)
        for (int i = 0; i < grid.n_omega; ++i)
            spec.at(i, s) = pulse_spectrum_value(pulse, grid.physical_freq(i, s));
    return spec;
}

} // namespace eit
