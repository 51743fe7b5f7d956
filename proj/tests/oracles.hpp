// Independent oracles used by the test suites. These deliberately avoid
// the library's own evaluation paths: Bessel values come from the power
// series, overlaps from direct quadrature, single-channel propagation
// from the scalar susceptibility.
#ifndef EIT_TESTS_ORACLES_HPP
#define EIT_TESTS_ORACLES_HPP

#include "eit/model.hpp"
#include "eit/units.hpp"

#include <cmath>
#include <complex>

namespace eit::tests {

// Truncated power series J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!),
// adequate to ~1e-13 relative for |x| <= 20, n <= 25.
inline double bessel_series(int n, double x) {
    long double term = 1.0L;
    const long double half = static_cast<long double>(x) / 2.0L;
    for (int m = 1; m <= n; ++m)
        term *= half / m;
    long double sum = term;
    for (int k = 1; k <= 60; ++k) {
        term *= -half * half / (static_cast<long double>(k) * (n + k));
        sum += term;
    }
    return static_cast<double>(sum);
}

// Overlap of two normalized chirped Gaussians by Simpson quadrature.
inline std::complex<double> overlap_quadrature(const ProbePulseSpec& p1,
                                               const ProbePulseSpec& p2,
                                               int n_points = 80001) {
    const double t_span = 8.0 * std::max(p1.tau, p2.tau);
    const double h = 2.0 * t_span / (n_points - 1);
    std::complex<double> acc = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double t = -t_span + i * h;
        const double env =
            std::exp(-t * t / (p1.tau * p1.tau) - t * t / (p2.tau * p2.tau));
        const double phase = -p1.chirp_depth * std::sin(p1.chirp_freq * t) +
                             p2.chirp_depth * std::sin(p2.chirp_freq * t);
        const double w = (i == 0 || i == n_points - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * env * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    acc *= h / 3.0;
    return acc * std::sqrt(2.0 / (AtomicUnits::pi * p1.tau * p2.tau));
}

// Scalar (unchirped-control) propagation factor exp[i z/c (nu + omega1 chi(nu)/2)]
// expressed directly through the EIT denominator.
inline std::complex<double> scalar_eit_factor(double nu, const MediumParams& medium,
                                              std::complex<double> omega2, double kappa2,
                                              double z) {
    const std::complex<double> denom =
        std::complex<double>(nu + medium.delta1, medium.gamma_ab) -
        std::norm(omega2) / std::complex<double>(nu + medium.delta1 - medium.delta2,
                                                 medium.gamma_cb);
    const std::complex<double> expo =
        std::complex<double>(0.0, z / AtomicUnits::c) * (nu - kappa2 / denom);
    if (expo.real() < -745.0)
        return {0.0, 0.0};
    return std::exp(expo);
}

} // namespace eit::tests

#endif
