#pragma once

// Period-by-period integration of a periodically driven ODE until the
// period-averaged observable settles.

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "lzs/ode.hpp"

namespace lzs {

struct PeriodicOptions {
    int samples_per_period = 400;
    double drift_tol = 1e-6;  ///< max change of the period average ...
    int drift_periods = 3;    ///< ... over this many consecutive periods
    double min_time = 0.0;    ///< do not stop before this much simulated time
    double cap_time = 0.0;    ///< give up (converged = false) after this much
};

template <std::size_t N>
struct PeriodicRun {
    std::vector<double> times;  ///< last period, samples_per_period + 1 points
    std::vector<State<N>> states;
    double avg = 0.0;           ///< trapezoid average of the observable over `times`
    double peak_to_peak = 0.0;
    bool converged = false;
    long periods = 0;
};

/// Trapezoid average of samples on a uniform grid.
inline double trapezoid_average(const std::vector<double>& v) {
    if (v.size() < 2) return v.empty() ? 0.0 : v.front();
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s / static_cast<double>(v.size() - 1);
}

/// Integrates one period [t0, t0 + period] writing samples_per_period + 1 states.
template <std::size_t N, class Rhs>
void integrate_period(DormandPrince<N>& solver, Rhs& rhs, double& t, State<N>& y, double t0, double period,
                      int samples, std::vector<double>& times, std::vector<State<N>>& states) {
    times.resize(static_cast<std::size_t>(samples) + 1);
    states.resize(static_cast<std::size_t>(samples) + 1);
    times[0] = t0;
    states[0] = y;
    for (int i = 1; i <= samples; ++i) {
        const double target = t0 + period * static_cast<double>(i) / samples;
        solver.advance(rhs, t, y, target);
        times[i] = target;
        states[i] = y;
    }
}

template <std::size_t N, class Rhs, class Observable>
PeriodicRun<N> run_to_periodic(Rhs rhs, State<N> y, double period, Observable observe,
                               const PeriodicOptions& opts, const OdeOptions& ode) {
    DormandPrince<N> solver(ode);
    PeriodicRun<N> run;
    std::deque<double> history;
    std::vector<double> values;
    double t = 0.0;
    for (long k = 0;; ++k) {
        const double t0 = static_cast<double>(k) * period;
        t = t0;  // absorb rounding so every period starts on the grid
        integrate_period(solver, rhs, t, y, t0, period, opts.samples_per_period, run.times, run.states);
        values.resize(run.states.size());
        std::transform(run.states.begin(), run.states.end(), values.begin(), observe);
        run.avg = trapezoid_average(values);
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        run.peak_to_peak = *hi - *lo;
        run.periods = k + 1;

        history.push_back(run.avg);
        if (history.size() > static_cast<std::size_t>(opts.drift_periods) + 1) history.pop_front();
        const double elapsed = t0 + period;
        if (history.size() == static_cast<std::size_t>(opts.drift_periods) + 1 && elapsed >= opts.min_time) {
            bool settled = true;
            for (std::size_t i = 1; i < history.size(); ++i)
                settled = settled && std::abs(history[i] - history[i - 1]) < opts.drift_tol;
            if (settled) {
                run.converged = true;
                return run;
            }
        }
        if (elapsed >= opts.cap_time) return run;
    }
}

}  // namespace lzs
