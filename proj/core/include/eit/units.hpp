#ifndef EIT_UNITS_HPP
#define EIT_UNITS_HPP

namespace eit {

// Atomic units (hbar = 1, electron mass = 1, elementary charge = 1).
// All quantities in this library are expressed in these units.
struct AtomicUnits {
    static constexpr double time_si = 2.42e-17;          // seconds per a.u. of time
    static constexpr double length_si = 0.529e-10;       // meters per a.u. of length
    static constexpr double frequency_si_mhz = 6.58e9;   // MHz per a.u. of frequency
    static constexpr double c = 137.036;                 // speed of light
    static constexpr double pi = 3.14159265358979323846;
    static constexpr double eps0 = 1.0 / (4.0 * pi);     // vacuum permittivity
    static constexpr double hbar = 1.0;
};

} // namespace eit

#endif
