#pragma once

// Numerical reference for the driven dissipative qubit: Bloch equations
// d rho/dt = -i[H, rho] + Gamma[rho] with
//   H = -(delta/2) sigma_x - (eps(t)/2) sigma_z,  eps(t) = eps0 + A sin(w t),
//   sigma_z = |1><1| - |0><0|,
// interwell relaxation gamma01 (|0> -> |1>), gamma10 (|1> -> |0>) on the
// populations and dephasing gamma2 on the coherence.

#include <span>
#include <vector>

#include "lzs/ode.hpp"
#include "lzs/params.hpp"

namespace lzs {

/// Density matrix of the qubit; coherence is rho_01 = coh_re + i coh_im.
struct DensityState {
    double rho00 = 1.0;
    double rho11 = 0.0;
    double coh_re = 0.0;
    double coh_im = 0.0;

    static DensityState ground0() { return {1.0, 0.0, 0.0, 0.0}; }
    static DensityState ground1() { return {0.0, 1.0, 0.0, 0.0}; }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityState> states;
};

/// Equation-of-motion frame. Lab: Hamiltonian above. Gauge: the interaction
/// picture w.r.t. the detuning term, where the coupling carries the phase
/// exp(-i int_0^t eps). Populations agree; outputs are always lab frame.
enum class Frame { Lab, Gauge };

struct BlochOptions {
    Frame frame = Frame::Lab;
    double rtol = 1e-8;
    double atol = 1e-10;
};

/// min(T/200, 0.1 / max(|eps0| + A, delta, gamma2)).
double bloch_max_step(const QubitParams& p);

/// Samples the solution from `init` at t = 0 on `sample_grid` (sorted, within [0, t_final]).
Trajectory integrate(const QubitParams& p, const DensityState& init, double t_final,
                     std::span<const double> sample_grid, const BlochOptions& opts = {});

struct PeriodicSteadyState {
    Trajectory waveform;  ///< one drive period, samples_per_period + 1 points
    double avg_rho00 = 0.0;
    double peak_to_peak = 0.0;
    bool converged = false;
    long periods_elapsed = 0;
};

struct SteadyStateOptions {
    BlochOptions bloch;
    int samples_per_period = 400;
    double drift_tol = 1e-6;
    int drift_periods = 3;
    double min_t1_multiple = 5.0;  ///< never stop before this many T1
    double cap_t1_multiple = 50.0;
    long cap_periods_without_t1 = 200000;  ///< cap when there is no interwell relaxation
};

/// Direct long-horizon integration until the period-averaged rho00 settles.
PeriodicSteadyState steady_state(const QubitParams& p, const DensityState& init,
                                 const SteadyStateOptions& opts = {});

/// Same limit cycle from the one-period affine map of the Bloch vector:
/// integrates the fundamental matrix over a single period, solves for the
/// fixed point, then samples one period from it. `converged` reports whether
/// that period closes on itself to 1e-8.
PeriodicSteadyState steady_state_floquet(const QubitParams& p, const SteadyStateOptions& opts = {});

}  // namespace lzs
