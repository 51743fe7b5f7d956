#include "eit/bessel.hpp"
#include "eit/errors.hpp"

#include <cmath>
#include <cstdlib>

namespace eit {

double BesselRow::at(int n) const {
    const int a = std::abs(n);
    if (a >= static_cast<int>(values.size()))
        return 0.0;
    double v = values[a];
    if (n < 0 && (a & 1))
        v = -v;
    return v;
}

BesselRow bessel_row(int n_max, double x) {
    if (n_max < 0)
        throw ValidationError("bessel_row: n_max must be non-negative");
    const double ax = std::fabs(x);
    if (static_cast<double>(n_max) < ax + 8.0)
        throw NumericalError("bessel_row: recurrence unstable, need n_max >= |x| + 8");

    BesselRow row;
    row.argument = x;
    row.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

    if (ax == 0.0) {
        row.values[0] = 1.0;
        return row;
    }

    // Start the downward recurrence well above n_max.
    const int n_start = n_max + static_cast<int>(std::ceil(10.0 + 1.5 * ax));
    double jp = 0.0;      // J_{n+1}
    double jc = 1e-300;   // J_n, arbitrary seed
    double norm = 0.0;    // accumulates J_0 + 2 sum J_{2k}
    for (int n = n_start; n >= 0; --n) {
        const double jm = (2.0 * (n + 1) / ax) * jc - jp; // J_n from J_{n+1}, J_{n+2}
        jp = jc;
        jc = jm;
        if (std::fabs(jc) > 1e250) { // rescale to avoid overflow
            const double s = 1e-250;
            jc *= s;
            jp *= s;
            norm *= s;
            for (double& v : row.values)
                v *= s;
        }
        if (n <= n_max)
            row.values[static_cast<std::size_t>(n)] = jc;
        if (n > 0 && n % 2 == 0)
            norm += 2.0 * jc;
    }
    norm += jc; // J_0 term
    for (double& v : row.values)
        v /= norm;

    if (x < 0.0) { // J_n(-x) = (-1)^n J_n(x)
        for (std::size_t n = 1; n < row.values.size(); n += 2)
            row.values[n] = -row.values[n];
        row.argument = x;
    }
    return row;
}

double bessel_j(int n, double x) {
    const int a = std::abs(n);
    const int n_max = a + static_cast<int>(std::ceil(std::fabs(x))) + 10;
    const BesselRow row = bessel_row(n_max, std::fabs(x));
    double v = row.values[static_cast<std::size_t>(a)];
    if (n < 0 && (a & 1))
        v = -v;
    if (x < 0.0 && (std::abs(n) & 1))
        v = -v;
    return v;
}

} // namespace eit
