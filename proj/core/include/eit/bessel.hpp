#ifndef EIT_BESSEL_HPP
#define EIT_BESSEL_HPP

#include <vector>

namespace eit {

// Bessel functions of the first kind, integer order, real argument.
// Computed by Miller's backward recurrence with normalization through
// J_0(x) + 2 sum_k J_{2k}(x) = 1.

struct BesselRow {
    double argument = 0.0;
    std::vector<double> values; // J_0(x) .. J_{n_max}(x)

    int order_max() const { return static_cast<int>(values.size()) - 1; }

    // J_n(x) for any integer n, using J_{-n} = (-1)^n J_n.
    double at(int n) const;
};

// Row J_0(x)..J_{n_max}(x). Requires n_max >= |x| + 8 for a stable recurrence.
BesselRow bessel_row(int n_max, double x);

// Single value J_n(x), any integer n.
double bessel_j(int n, double x);

} // namespace eit

#endif
