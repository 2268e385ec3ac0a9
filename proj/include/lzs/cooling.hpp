#pragma once

// Three-level flux qubit: |0> in the left well, |1> and |2> in the right
// well. Driving through the 0-2 crossover followed by the fast 2 -> 1 decay
// pumps population out of |0>.

#include <vector>

#include "lzs/params.hpp"
#include "lzs/rates.hpp"

namespace lzs {

struct FluxDetuning {
    double eps01 = 0.0;
    double eps02 = 0.0;
};

FluxDetuning eps_from_flux(const ThreeLevelParams& p, double phi);

/// Flux drive mapped to energies at the static bias phi_dc.
ThreeLevelDrive drive_from_flux(const ThreeLevelParams& p);

ThreeLevelRates rates_threelevel(const ThreeLevelParams& p, CoolingMethod method, double t);

struct ThreeLevelState {
    double rho00 = 0.0;
    double rho11 = 0.0;
    double rho22 = 0.0;
};

struct CoolingOptions {
    int samples_per_period = 400;
    double rtol = 1e-9;
    double atol = 1e-11;
    /// Integrate period after period (drift rule) instead of solving for the
    /// fixed point of the one-period map.
    bool long_horizon = false;
    double drift_tol = 1e-6;
    int drift_periods = 3;
    double min_t1_multiple = 5.0;
    double cap_t1_multiple = 50.0;
};

struct CoolingResult {
    ThreeLevelState state;  ///< period average
    std::vector<double> times;
    std::vector<ThreeLevelState> waveform;
    bool converged = false;
};

CoolingResult cool_steady(const ThreeLevelParams& p, CoolingMethod method, const CoolingOptions& opts = {});

/// Two-level thermal population of |0> at eps01(phi_dc).
double equilibrium_rho00(const ThreeLevelParams& p);

struct FrequencyRange {
    double lo = 0.0;  ///< angular frequency
    double hi = 0.0;
};

/// Smallest drive frequency in the range at which the steady average of
/// rho00 sits at least `margin` below equilibrium. The bracket is checked at
/// both ends first; BracketError if it does not straddle the criterion.
double min_cooling_frequency(const ThreeLevelParams& p, double phi_rf, FrequencyRange range, double margin = 0.02,
                             CoolingMethod method = CoolingMethod::NCA, const CoolingOptions& opts = {});

}  // namespace lzs
