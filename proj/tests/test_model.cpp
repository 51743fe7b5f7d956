#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eit/bessel.hpp"
#include "eit/errors.hpp"
#include "eit/model.hpp"
#include "eit/spectrum.hpp"
#include "eit/units.hpp"

#include <cmath>

using namespace eit;

namespace {

MediumParams standard_medium() {
    return {2e-13, 1.0, 1e-1, 1e-9, 1e-14, 0.0, 0.0};
}

FloquetGrid standard_grid() {
    return {2e-9, 256, 20};
}

} // namespace

TEST_CASE("kappa2 from the medium constants") {
    MediumParams m = standard_medium();
    CHECK(derive_kappa2(m) == doctest::Approx(1.2566370614359174e-13).epsilon(1e-14));

    MediumParams empty = m;
    empty.atom_density = 0.0;
    CHECK(derive_kappa2(empty) == 0.0);

    MediumParams doubled = m;
    doubled.atom_density *= 2.0;
    CHECK(derive_kappa2(doubled) == doctest::Approx(2.0 * derive_kappa2(m)).epsilon(1e-14));
}

TEST_CASE("mixing angle") {
    const double kappa2 = 1.2566370614359174e-13;
    const MixingAngle m = mixing_angle(kappa2, Complex(1e-8, 0.0));
    CHECK(m.sin2 == doctest::Approx(0.9992048580384087).epsilon(1e-12));
    CHECK(m.v_group == doctest::Approx(AtomicUnits::c * m.cos2));

    const MixingAngle vacuum = mixing_angle(0.0, Complex(1e-8, 0.0));
    CHECK(vacuum.sin2 == 0.0);
    CHECK(vacuum.v_group == AtomicUnits::c);

    CHECK_THROWS_AS(mixing_angle(kappa2, Complex(0.0, 0.0)), ValidationError);

    // sin2 strictly increases with kappa2 at fixed control amplitude
    double prev = -1.0;
    for (double k2 : {0.0, 1e-18, 1e-16, 1e-14, 1e-13, 1e-12}) {
        const double s = mixing_angle(k2, Complex(1e-8, 0.0)).sin2;
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("chirp coefficients: sinusoidal") {
    ControlFieldSpec flat{Complex(1e-8, 0.0), SinusoidalChirp{0.0, 2e-9}};
    const ChirpCoefficients c0 = chirp_coefficients(flat, 10);
    for (int n = -10; n <= 10; ++n)
        CHECK(std::abs(c0.at(n) - (n == 0 ? 1.0 : 0.0)) < 1e-15);

    ControlFieldSpec chirped{Complex(1e-8, 0.0), SinusoidalChirp{5.0, 2e-9}};
    const ChirpCoefficients c = chirp_coefficients(chirped, 20);
    CHECK(c.at(0).real() == doctest::Approx(-0.177596771314338304).epsilon(1e-12));
    CHECK(c.at(-3) == -c.at(3)); // J_{-n} = (-1)^n J_n

    // unitarity sum_n c_n* c_{n+k} = delta_{k0}
    for (int k = -12; k <= 12; ++k) {
        Complex acc = 0.0;
        for (int n = -20; n <= 20; ++n)
            acc += std::conj(c.at(n)) * c.at(n + k);
        CHECK(std::abs(acc - (k == 0 ? 1.0 : 0.0)) < 1e-10);
    }

    CHECK_THROWS_AS(chirp_coefficients(chirped, 10), ValidationError); // n_max < g + 8
}

TEST_CASE("chirp coefficients: general periodic passthrough and rejection") {
    // A valid coefficient set (a sinusoidal chirp in disguise).
    const BesselRow row = bessel_row(24, 2.5);
    GeneralPeriodicPhase gp;
    gp.delta = 1e-9;
    for (int n = -12; n <= 12; ++n)
        gp.coefficients.push_back(row.at(n));
    ControlFieldSpec ok{Complex(1e-8, 0.0), gp};
    const ChirpCoefficients c = chirp_coefficients(ok, 14);
    CHECK(std::abs(c.at(2) - Complex(bessel_j(2, 2.5), 0.0)) < 1e-13);
    CHECK(c.at(14) == Complex(0.0, 0.0)); // zero-padded beyond the given range

    GeneralPeriodicPhase bad;
    bad.delta = 1e-9;
    bad.coefficients = {Complex(0.5, 0.0), Complex(0.5, 0.0), Complex(0.5, 0.0)};
    ControlFieldSpec broken{Complex(1e-8, 0.0), bad};
    CHECK_THROWS_AS(chirp_coefficients(broken, 5), ValidationError);
}

TEST_CASE("incoming spectrum: pure Gaussian") {
    ProbePulseSpec pulse{Complex(1e-10, 0.0), 8e9, 0.0, 0.0, 0.0};
    const FloquetGrid grid = standard_grid();
    const FloquetSpectrum spec = incoming_spectrum(pulse, grid);

    // Peak at nu = 0 equals Omega10 tau sqrt(pi) = 1.42
    const int i0 = grid.n_omega / 2;
    CHECK(std::abs(spec.at(i0, 0)) ==
          doctest::Approx(1e-10 * 8e9 * std::sqrt(AtomicUnits::pi)).epsilon(1e-12));
    CHECK(std::abs(spec.at(i0, 0)) == doctest::Approx(1.42).epsilon(2e-3));

    // Closed-form Gaussian transform at every grid point.
    for (int s = -grid.s_max; s <= grid.s_max; ++s) {
        for (int i = 0; i < grid.n_omega; i += 7) {
            const double nu = grid.physical_freq(i, s);
            const double ref = 1e-10 * std::sqrt(AtomicUnits::pi) * 8e9 *
                               std::exp(-0.25 * nu * nu * 8e9 * 8e9);
            CHECK(std::abs(spec.at(i, s) - ref) <= 1e-12 * std::max(ref, 1e-30) + 1e-300);
        }
    }

    // Parseval: sum |F|^2 domega = 2 pi integral |f|^2 dt
    const double lhs = spec.total_power();
    const double rhs = 2.0 * AtomicUnits::pi * 1e-20 * 8e9 *
                       std::sqrt(AtomicUnits::pi / 2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("incoming spectrum: chirped peaks at the chirp-frequency comb") {
    const double g_eff = 4.996;
    ProbePulseSpec pulse{Complex(1e-10, 0.0), 8e9, g_eff, 2e-9, 0.0};
    const FloquetGrid grid = standard_grid();
    const FloquetSpectrum spec = incoming_spectrum(pulse, grid);
    const double scale = 1e-10 * 8e9 * std::sqrt(AtomicUnits::pi);
    const int i0 = grid.n_omega / 2;
    for (int n = -6; n <= 6; ++n) {
        // peak at nu = -n * delta lives in cell (i0, -n)
        const double expected = scale * std::fabs(bessel_j(n, g_eff));
        CHECK(std::abs(spec.at(i0, -n)) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("incoming spectrum rejects an under-resolved grid") {
    ProbePulseSpec pulse{Complex(1e-10, 0.0), 8e9, 0.0, 0.0, 0.0};
    FloquetGrid coarse{2e-9, 32, 20}; // 2 samples across 1/tau
    CHECK_THROWS_AS(incoming_spectrum(pulse, coarse), ValidationError);
}

TEST_CASE("spectral width scales as 1/tau (non-overlapping comb)") {
    // For a long pulse the comb peaks are isolated: midway between two
    // comb lines the spectrum is negligible.
    ProbePulseSpec pulse{Complex(1e-10, 0.0), 6.4e10, 4.996, 2e-9, 0.0};
    const FloquetGrid grid{2e-9, 1024, 20};
    const FloquetSpectrum spec = incoming_spectrum(pulse, grid);
    const int i0 = grid.n_omega / 2;
    const double peak = std::abs(spec.at(i0, 0));
    const double valley = std::abs(spec.at(0, 0)); // nu = -delta/2
    CHECK(valley < 1e-8 * peak);
}
