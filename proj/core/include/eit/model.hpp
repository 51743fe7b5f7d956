#ifndef EIT_MODEL_HPP
#define EIT_MODEL_HPP

#include <complex>
#include <variant>
#include <vector>

namespace eit {

using Complex = std::complex<double>;

// Atomic/medium constants, all in atomic units.
struct MediumParams {
    double atom_density = 0.0; // number density
    double dipole_ab = 0.0;    // dipole matrix element between states a and b
    double omega1 = 0.0;       // probe carrier frequency
    double gamma_ab = 0.0;     // coherence relaxation rate a-b
    double gamma_cb = 0.0;     // coherence relaxation rate c-b
    double delta1 = 0.0;       // probe detuning
    double delta2 = 0.0;       // control detuning

    void validate() const; // throws ValidationError
};

// Sinusoidal phase modulation phi(t) = depth * sin(delta * t).
struct SinusoidalChirp {
    double depth = 0.0; // dimensionless
    double delta = 0.0; // modulation frequency
};

// Arbitrary periodic phase given through its Fourier coefficients c_n,
// n in [-n_max, n_max]; realness of the phase requires
// sum_n conj(c_n) c_{n+k} = delta_{k0}.
struct GeneralPeriodicPhase {
    double delta = 0.0;
    std::vector<Complex> coefficients; // size 2*n_max + 1, index n + n_max
};

struct ControlFieldSpec {
    Complex omega2; // Rabi amplitude
    std::variant<SinusoidalChirp, GeneralPeriodicPhase> phase;

    double chirp_delta() const;
    void validate() const;
};

// Incoming probe: Gaussian envelope with an optional sinusoidal chirp.
struct ProbePulseSpec {
    Complex omega10;          // peak Rabi amplitude
    double tau = 0.0;         // Gaussian time width
    double chirp_depth = 0.0; // 0 for a pure Gaussian
    double chirp_freq = 0.0;
    double center_time = 0.0;

    void validate() const;
};

// kappa^2 = density * |d_ab|^2 * omega1 / (2 eps0 hbar)
double derive_kappa2(const MediumParams& medium);

struct MixingAngle {
    double tan2 = 0.0; // tan^2(theta) = kappa^2 / |Omega2|^2
    double sin2 = 0.0;
    double cos2 = 0.0;
    double v_group = 0.0; // c * cos^2(theta)
};

// Throws ValidationError("undefined mixing angle") for omega2 == 0.
MixingAngle mixing_angle(double kappa2, Complex omega2);

// Fourier coefficients of exp(i phi(t)), indexed n in [-n_max, n_max].
struct ChirpCoefficients {
    int n_max = 0;
    std::vector<Complex> values; // size 2*n_max + 1

    Complex at(int n) const {
        if (n < -n_max || n > n_max)
            return {0.0, 0.0};
        return values[static_cast<std::size_t>(n + n_max)];
    }
};

// Sinusoidal chirps give c_n = J_n(depth); general phases are validated
// for unitarity (tolerance 1e-8) and passed through.
ChirpCoefficients chirp_coefficients(const ControlFieldSpec& control, int n_max);

} // namespace eit

#endif
