#pragma once

// Physical parameter records and unit conversions.
//
// Internal units: angular frequency in rad/ns, time in ns, hbar = k_B = 1.
// User-facing frequencies are ordinary frequencies nu = w / 2pi quoted in
// MHz or GHz; temperatures are in mK.

#include <numbers>
#include <string>
#include <string_view>

namespace lzs {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// k_B / h in GHz per kelvin.
inline constexpr double kBoltzmannOverPlanckGHzPerK = 20.836619;

enum class FreqUnit { MHz, GHz };

/// Ordinary frequency with an explicit unit tag.
struct Frequency {
    double value = 0.0;
    FreqUnit unit = FreqUnit::MHz;

    friend bool operator==(const Frequency&, const Frequency&) = default;
};

/// Ordinary frequency -> angular frequency in rad/ns.
double to_angular(Frequency f);
/// Angular frequency in rad/ns -> ordinary frequency in `unit`.
Frequency from_angular(double w, FreqUnit unit);

/// Temperature in mK -> energy units (rad/ns).
double temperature_to_angular(double millikelvin);
double temperature_to_millikelvin(double angular);

/// Parses "90 MHz", "5GHz", "0.01 GHz". Throws ValidationError naming `field`.
Frequency parse_frequency(std::string_view text, const std::string& field);
std::string to_string(FreqUnit unit);

/// Two-level parameters as quoted in figure captions.
struct RawInputs {
    Frequency delta;
    Frequency eps0;
    Frequency amp;
    Frequency omega;
    Frequency gamma2;
    double t1_ns = 0.0;
    double temperature_mk = 0.0;
};

/// Driven dissipative two-level system in internal units.
///
/// gamma01 is the interwell rate |0> -> |1>, gamma10 the reverse. Detailed
/// balance gamma10 = gamma01 exp(-eps0 / T) holds, and max(gamma01, gamma10)
/// is 1/T1.
struct QubitParams {
    double delta = 0.0;
    double eps0 = 0.0;
    double amp = 0.0;
    double omega = 0.0;
    double gamma2 = 0.0;
    double gamma01 = 0.0;
    double gamma10 = 0.0;
    double temperature = 0.0;

    double period() const { return kTwoPi / omega; }
    /// Interwell relaxation time; +inf when both interwell rates vanish.
    double t1() const;
};

/// Converts and validates; interwell rates follow from T1 and detailed balance.
QubitParams build_params(const RawInputs& raw);

/// Inverse of build_params (all frequencies reported in `unit`).
RawInputs to_raw(const QubitParams& p, FreqUnit unit = FreqUnit::MHz);

/// Full invariant check for params produced by build_params.
void validate(const QubitParams& p);

/// Weaker check used by the dynamics: finite fields, omega > 0, rates >= 0.
/// Model limits such as delta = 0 or zero relaxation are allowed.
void require_physical(const QubitParams& p);

/// Interwell rates (gamma01, gamma10) for detuning eps0 at fixed T1.
struct InterwellRates {
    double gamma01;
    double gamma10;
};
InterwellRates detailed_balance(double eps0, double temperature, double t1_ns);

/// Equilibrium rho00 = gamma10 / (gamma01 + gamma10) without driving.
double thermal_population(const QubitParams& p);
double thermal_population(double eps0, double temperature);

/// Flux-qubit three-level model. Slopes are in rad/ns per mPhi0, fluxes in mPhi0.
struct ThreeLevelParams {
    double delta01 = 0.0;
    double delta20 = 0.0;
    double m0 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double phi20 = 0.0;
    double phi_dc = 0.0;
    double phi_rf = 0.0;
    double omega = 0.0;
    double gamma2 = 0.0;
    double gamma21 = 0.0;
    double t1 = 0.0;
    double temperature = 0.0;

    double period() const { return kTwoPi / omega; }
};

void validate(const ThreeLevelParams& p);

}  // namespace lzs
