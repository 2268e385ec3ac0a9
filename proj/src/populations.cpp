#include "lzs/populations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lzs/errors.hpp"
#include "lzs/periodic.hpp"
#include "lzs/specfun.hpp"

namespace lzs {

namespace {

double saturation_ratio(double w, const QubitParams& p) {
    const double den = 2.0 * w + p.gamma01 + p.gamma10;
    if (den == 0.0) return thermal_population(p.eps0, p.temperature);
    return (w + p.gamma10) / den;
}

// Shortest time scale of the incoherent rate: crossing the Lorentzian of
// width gamma2 at the fastest sweep speed A w.
double nca_feature_time(const QubitParams& p) {
    if (p.amp == 0.0) return p.period();
    return std::min(p.period(), p.gamma2 / (p.amp * p.omega));
}

struct TimedepRates {
    const RateSeries* series;
    RatePair operator()(double t) const { return series->at(t); }
};

struct NcaRates {
    const QubitParams* p;
    RatePair operator()(double t) const {
        const double w = rate_nca(*p, t);
        return {w, w, t};
    }
};

template <class RateFn>
struct ScalarRhs {
    RateFn rate;
    double g01;
    double g10;
    void operator()(double t, const State<1>& y, State<1>& dy) const {
        const RatePair r = rate(t);
        dy[0] = -(r.w01 + g01) * y[0] + (r.w10 + g10) * (1.0 - y[0]);
    }
};

double final_period_average(const std::vector<double>& times, const std::vector<double>& v, double period) {
    if (times.empty()) return 0.0;
    const double start = times.back() - period;
    std::size_t first = 0;
    while (first < times.size() && times[first] < start - 1e-9 * period) ++first;
    if (first + 1 >= times.size()) return v.back();
    double area = 0.0;
    for (std::size_t i = first + 1; i < times.size(); ++i) area += 0.5 * (v[i] + v[i - 1]) * (times[i] - times[i - 1]);
    const double span = times.back() - times[first];
    return span > 0.0 ? area / span : v.back();
}

void check_init(double init) {
    if (!(init >= 0.0 && init <= 1.0)) throw ValidationError("init_rho00", "must lie in [0, 1]");
}

void check_grid(const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || grid[i] < 0.0) throw ValidationError("sample_grid", "times must be finite and >= 0");
        if (i > 0 && grid[i] < grid[i - 1]) throw ValidationError("sample_grid", "times must be non-decreasing");
    }
}

template <class RateFn>
PopulationCurve curve_ode(const QubitParams& p, RateFn rate, std::vector<double> grid, double init, double h_max,
                          const RateCurveOptions& opts) {
    check_init(init);
    check_grid(grid);
    PopulationCurve curve;
    curve.times = std::move(grid);
    curve.rho00.reserve(curve.times.size());
    OdeOptions ode;
    ode.rtol = opts.rtol;
    ode.atol = opts.atol;
    ode.h_max = h_max;
    DormandPrince<1> solver(ode);
    ScalarRhs<RateFn> rhs{rate, p.gamma01, p.gamma10};
    double t = 0.0;
    State<1> y{init};
    for (double ts : curve.times) {
        solver.advance(rhs, t, y, ts);
        curve.rho00.push_back(y[0]);
    }
    curve.avg_rho00 = final_period_average(curve.times, curve.rho00, p.period());
    return curve;
}

// rho(t) = exp(-I(t)) [rho0 + int_0^t b(s) exp(I(s)) ds], I = int_0^t a,
// a = W01 + W10 + gamma01 + gamma10, b = W10 + gamma10. Evaluated interval by
// interval so the exponentials never overflow; Simpson on both integrals.
template <class RateFn>
PopulationCurve curve_quadrature(const QubitParams& p, RateFn rate, double t_final, double init, int fine_per_period,
                                 const RateCurveOptions& opts) {
    check_init(init);
    PopulationCurve curve;
    curve.times = end_aligned_grid(t_final, p.period(), opts.samples_per_period);
    if (opts.samples_per_period < 1) throw ValidationError("samples_per_period", "must be positive");
    const int refine = std::max(1, (fine_per_period + opts.samples_per_period - 1) / opts.samples_per_period);
    auto coeffs = [&](double t) {
        const RatePair r = rate(t);
        return std::pair{r.w01 + r.w10 + p.gamma01 + p.gamma10, r.w10 + p.gamma10};
    };

    double rho = init;
    double t_prev = 0.0;
    auto [a_prev, b_prev] = coeffs(0.0);
    for (double target : curve.times) {
        const double span = target - t_prev;
        const int pieces = span > 0.0 ? refine : 0;
        for (int k = 1; k <= pieces; ++k) {
            const double ta = t_prev + span * (k - 1) / pieces;
            const double tb = t_prev + span * k / pieces;
            const double h = tb - ta;
            const auto [a_m, b_m] = coeffs(0.5 * (ta + tb));
            const auto [a_b, b_b] = coeffs(tb);
            const double d_full = h / 6.0 * (a_prev + 4.0 * a_m + a_b);
            const double d_first_half = h / 24.0 * (5.0 * a_prev + 8.0 * a_m - a_b);
            const double decay = std::exp(-d_full);
            rho = decay * rho + h / 6.0 * (b_prev * decay + 4.0 * b_m * std::exp(-(d_full - d_first_half)) + b_b);
            a_prev = a_b;
            b_prev = b_b;
        }
        t_prev = target;
        curve.rho00.push_back(rho);
    }
    curve.avg_rho00 = final_period_average(curve.times, curve.rho00, p.period());
    return curve;
}

template <class RateFn>
struct PairRhs {
    ScalarRhs<RateFn> one;
    void operator()(double t, const State<2>& y, State<2>& dy) const {
        State<1> d{};
        one(t, State<1>{y[0]}, d);
        dy[0] = d[0];
        one(t, State<1>{y[1]}, d);
        dy[1] = d[0];
    }
};

template <std::size_t N>
RateSteadyState to_rate_steady(const PeriodicRun<N>& run) {
    RateSteadyState out;
    out.times = run.times;
    out.rho00.reserve(run.states.size());
    for (const auto& s : run.states) out.rho00.push_back(s[0]);
    out.avg_rho00 = run.avg;
    out.peak_to_peak = run.peak_to_peak;
    out.converged = run.converged;
    out.periods_elapsed = run.periods;
    return out;
}

// The one-period map of a linear scalar equation is affine, rho(T) = a rho(0) + b;
// two trajectories give a and b and the limit cycle starts at b / (1 - a).
template <class RateFn>
RateSteadyState steady_rate_fixed_point(const QubitParams& p, RateFn rate, const OdeOptions& ode, int samples) {
    const double period = p.period();
    const ScalarRhs<RateFn> rhs{rate, p.gamma01, p.gamma10};
    State<2> ends{0.0, 1.0};
    {
        DormandPrince<2> solver(ode);
        double t = 0.0;
        PairRhs<RateFn> pair{rhs};
        solver.advance(pair, t, ends, period);
    }
    const double slope = ends[1] - ends[0];
    const double start = slope < 1.0 ? ends[0] / (1.0 - slope) : thermal_population(p);

    DormandPrince<1> solver(ode);
    double t = 0.0;
    State<1> y{start};
    PeriodicRun<1> run;
    ScalarRhs<RateFn> local = rhs;
    integrate_period(solver, local, t, y, 0.0, period, samples, run.times, run.states);
    std::vector<double> values;
    for (const auto& s : run.states) values.push_back(s[0]);
    run.avg = trapezoid_average(values);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    run.peak_to_peak = *hi - *lo;
    const double closure = std::abs(values.back() - start);
    run.converged = std::isfinite(closure) && closure < 1e-8;
    run.periods = 1;
    return to_rate_steady(run);
}

template <class RateFn>
RateSteadyState steady_rate(const QubitParams& p, RateFn rate, double h_max, const RateSteadyOptions& opts) {
    OdeOptions ode;
    ode.rtol = opts.curve.rtol;
    ode.atol = opts.curve.atol;
    ode.h_max = h_max;
    if (!opts.long_horizon) return steady_rate_fixed_point(p, rate, ode, opts.curve.samples_per_period);

    PeriodicOptions po;
    po.samples_per_period = opts.curve.samples_per_period;
    po.drift_tol = opts.drift_tol;
    po.drift_periods = opts.drift_periods;
    const double t1 = p.t1();
    if (std::isfinite(t1)) {
        po.min_time = opts.min_t1_multiple * t1;
        po.cap_time = opts.cap_t1_multiple * t1;
    } else {
        po.cap_time = static_cast<double>(opts.cap_periods_without_t1) * p.period();
    }
    po.cap_time = std::max(po.cap_time, (opts.drift_periods + 1) * p.period());
    // Start from the thermal state; the limit cycle does not depend on it.
    State<1> y0{thermal_population(p)};
    auto run = run_to_periodic<1>(ScalarRhs<RateFn>{rate, p.gamma01, p.gamma10}, y0, p.period(),
                                  [](const State<1>& s) { return s[0]; }, po, ode);
    return to_rate_steady(run);
}

double timedep_h_max(const QubitParams& p, const RateSeries& series, int samples) {
    return p.period() / std::max(samples, 8 * (series.harmonics() + 1));
}

double nca_h_max(const QubitParams& p, int samples) {
    return std::min(p.period() / samples, 0.5 * nca_feature_time(p));
}

int timedep_fine_points(const RateSeries& series, int samples) {
    return std::max(samples, 64 * (series.harmonics() + 1));
}

int nca_fine_points(const QubitParams& p, int samples) {
    const double per_period = 32.0 * p.period() / nca_feature_time(p);
    return std::max(samples, static_cast<int>(std::min(per_period, 4e6)));
}

}  // namespace

std::vector<double> end_aligned_grid(double t_final, double period, int samples_per_period) {
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ValidationError("t_final", "must be finite and >= 0");
    if (samples_per_period < 1) throw ValidationError("samples_per_period", "must be positive");
    const double h = period / samples_per_period;
    const auto steps = static_cast<long>(std::floor(t_final / h * (1.0 + 1e-12)));
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps) + 2);
    const double first = t_final - static_cast<double>(steps) * h;
    if (first > 1e-9 * h) grid.push_back(0.0);
    for (long k = 0; k <= steps; ++k) grid.push_back(std::max(0.0, t_final - static_cast<double>(steps - k) * h));
    if (first <= 1e-9 * h) grid.front() = 0.0;
    return grid;
}

double pop_rwa_coherent(const QubitParams& p, double t) {
    require_physical(p);
    const double x = p.amp / p.omega;
    const int n_max = truncation_order(x);
    const BesselRow row = bessel_row(x, n_max);
    double sum = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        const double coupling2 = p.delta * p.delta * row[n] * row[n];
        const double detune = p.eps0 - n * p.omega;
        const double rabi2 = coupling2 + detune * detune;
        if (rabi2 == 0.0) continue;
        sum += coupling2 / rabi2 * (1.0 - std::cos(std::sqrt(rabi2) * t));
    }
    return 0.5 * sum;
}

double pop_rwa_stationary(const QubitParams& p) {
    require_physical(p);
    const double x = p.amp / p.omega;
    const int n_max = truncation_order(x);
    const BesselRow row = bessel_row(x, n_max);
    const double relax = p.gamma01 + p.gamma10;
    const double thermal = thermal_population(p);
    double excess = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        const double detune = p.eps0 - n * p.omega;
        const double den = p.gamma2 * p.gamma2 + detune * detune;
        const double a = den > 0.0 ? p.delta * p.delta * row[n] * row[n] * p.gamma2 / den : 0.0;
        if (a + relax == 0.0) continue;
        excess += (0.5 * a + p.gamma10) / (a + relax) - thermal;
    }
    return thermal + excess;
}

double pop_prwa_stationary(const QubitParams& p) { return saturation_ratio(rate_prwa(p, p.eps0), p); }

double pop_apa(const QubitParams& p) { return saturation_ratio(rate_prwa(p, p.eps0), p); }

PopulationCurve pop_timedep(const QubitParams& p, double t_final, double init_rho00, const RateCurveOptions& opts) {
    return pop_timedep(p, end_aligned_grid(t_final, p.period(), opts.samples_per_period), init_rho00, opts);
}

PopulationCurve pop_timedep(const QubitParams& p, std::vector<double> grid, double init_rho00,
                            const RateCurveOptions& opts) {
    const RateSeries series(p, opts.harmonics);
    return curve_ode(p, TimedepRates{&series}, std::move(grid), init_rho00,
                     timedep_h_max(p, series, opts.samples_per_period), opts);
}

PopulationCurve pop_timedep_closed_form(const QubitParams& p, double t_final, double init_rho00,
                                        const RateCurveOptions& opts) {
    const RateSeries series(p, opts.harmonics);
    return curve_quadrature(p, TimedepRates{&series}, t_final, init_rho00,
                            timedep_fine_points(series, opts.samples_per_period), opts);
}

PopulationCurve pop_nca(const QubitParams& p, double t_final, double init_rho00, const RateCurveOptions& opts) {
    return pop_nca(p, end_aligned_grid(t_final, p.period(), opts.samples_per_period), init_rho00, opts);
}

PopulationCurve pop_nca(const QubitParams& p, std::vector<double> grid, double init_rho00,
                        const RateCurveOptions& opts) {
    require_physical(p);
    if (p.gamma2 == 0.0) throw SingularRateError("incoherent rate needs gamma2 > 0");
    return curve_ode(p, NcaRates{&p}, std::move(grid), init_rho00, nca_h_max(p, opts.samples_per_period), opts);
}

PopulationCurve pop_nca_closed_form(const QubitParams& p, double t_final, double init_rho00,
                                    const RateCurveOptions& opts) {
    require_physical(p);
    if (p.gamma2 == 0.0) throw SingularRateError("incoherent rate needs gamma2 > 0");
    return curve_quadrature(p, NcaRates{&p}, t_final, init_rho00, nca_fine_points(p, opts.samples_per_period), opts);
}

RateSteadyState timedep_steady(const QubitParams& p, const RateSteadyOptions& opts) {
    const RateSeries series(p, opts.curve.harmonics);
    return steady_rate(p, TimedepRates{&series}, timedep_h_max(p, series, opts.curve.samples_per_period), opts);
}

RateSteadyState nca_steady(const QubitParams& p, const RateSteadyOptions& opts) {
    require_physical(p);
    if (p.gamma2 == 0.0) throw SingularRateError("incoherent rate needs gamma2 > 0");
    return steady_rate(p, NcaRates{&p}, nca_h_max(p, opts.curve.samples_per_period), opts);
}

}  // namespace lzs
