#pragma once

#include <cmath>

#include "lzs/params.hpp"

namespace lzs::test {

inline constexpr double kT1 = 1.0 / (kTwoPi * 5e-5);

inline double mhz(double v) { return to_angular({v, FreqUnit::MHz}); }

// Two-level point in caption units (MHz), 50 mK unless stated.
inline QubitParams point(double delta, double eps0, double amp, double omega, double gamma2, double t1 = kT1,
                         double temperature_mk = 50.0) {
    RawInputs raw;
    raw.delta = {delta, FreqUnit::MHz};
    raw.eps0 = {eps0, FreqUnit::MHz};
    raw.amp = {amp, FreqUnit::MHz};
    raw.omega = {omega, FreqUnit::MHz};
    raw.gamma2 = {gamma2, FreqUnit::MHz};
    raw.t1_ns = t1;
    raw.temperature_mk = temperature_mk;
    return build_params(raw);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace lzs::test
