#pragma once

// Population of |0> from the analytic approximations: coherent and
// stationary RWA, stationary perturbation-RWA, the averaged (APA) and
// incoherent (NCA) rate pictures, and the time-dependent rate equations
//   d rho00/dt = -(W01(t) + gamma01) rho00 + (W10(t) + gamma10)(1 - rho00).

#include <vector>

#include "lzs/ode.hpp"
#include "lzs/params.hpp"
#include "lzs/rates.hpp"

namespace lzs {

struct PopulationCurve {
    std::vector<double> times;
    std::vector<double> rho00;
    double avg_rho00 = 0.0;  ///< trapezoid average over the final drive period
};

/// Coherent RWA population of |0> starting from |1>, dissipation ignored.
double pop_rwa_coherent(const QubitParams& p, double t);

/// Stationary RWA with the per-resonance fraction summed over n. Each
/// resonance contributes its excess over the thermal value, so for
/// overlapping resonances (gamma2 ~ w) the result can exceed 1.
double pop_rwa_stationary(const QubitParams& p);

/// (W + gamma10) / (2W + gamma01 + gamma10) with W = rate_prwa(eps0).
double pop_prwa_stationary(const QubitParams& p);

/// Same closed form read as the period-averaged rate equations.
double pop_apa(const QubitParams& p);

struct RateCurveOptions {
    int samples_per_period = 400;
    double rtol = 1e-10;
    double atol = 1e-12;
    HarmonicOptions harmonics;
};

/// Rate equations with the time-dependent MDLZ rates, integrated as an ODE.
PopulationCurve pop_timedep(const QubitParams& p, double t_final, double init_rho00,
                            const RateCurveOptions& opts = {});
/// Same, sampled on a caller-supplied non-decreasing grid starting from t = 0.
PopulationCurve pop_timedep(const QubitParams& p, std::vector<double> grid, double init_rho00,
                            const RateCurveOptions& opts = {});
/// Same dynamics from the exponential-integral solution, by quadrature.
PopulationCurve pop_timedep_closed_form(const QubitParams& p, double t_final, double init_rho00,
                                        const RateCurveOptions& opts = {});

/// Rate equations with the instantaneous incoherent rate, as an ODE.
PopulationCurve pop_nca(const QubitParams& p, double t_final, double init_rho00, const RateCurveOptions& opts = {});
PopulationCurve pop_nca(const QubitParams& p, std::vector<double> grid, double init_rho00,
                        const RateCurveOptions& opts = {});
PopulationCurve pop_nca_closed_form(const QubitParams& p, double t_final, double init_rho00,
                                    const RateCurveOptions& opts = {});

/// Periodic steady state of a rate model, same settling rule as the Bloch oracle.
struct RateSteadyState {
    std::vector<double> times;  ///< one period
    std::vector<double> rho00;
    double avg_rho00 = 0.0;
    double peak_to_peak = 0.0;
    bool converged = false;
    long periods_elapsed = 0;
};

struct RateSteadyOptions {
    RateCurveOptions curve;
    double drift_tol = 1e-6;
    int drift_periods = 3;
    double min_t1_multiple = 5.0;
    double cap_t1_multiple = 50.0;
    long cap_periods_without_t1 = 200000;
    /// Integrate period after period until the average settles instead of
    /// solving for the fixed point of the one-period map.
    bool long_horizon = false;
};

RateSteadyState timedep_steady(const QubitParams& p, const RateSteadyOptions& opts = {});
RateSteadyState nca_steady(const QubitParams& p, const RateSteadyOptions& opts = {});

/// Uniform grid with spacing T/samples_per_period ending exactly at t_final
/// (t = 0 is prepended when the spacing does not divide t_final).
std::vector<double> end_aligned_grid(double t_final, double period, int samples_per_period);

}  // namespace lzs
