#include "lzs/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "lzs/bloch.hpp"
#include "lzs/cooling.hpp"
#include "lzs/errors.hpp"
#include "lzs/populations.hpp"
#include "lzs/regime.hpp"

namespace lzs {

namespace {

constexpr const char* kAxisNames[] = {"eps0", "omega", "amp", "gamma2", "phi_rf", "phi_dc", "time"};
constexpr const char* kMethodNames[] = {"ORACLE", "RWA_STAT", "PRWA",     "APA",   "NCA",
                                        "TIMEDEP", "COOL_APA", "COOL_NCA", "REGIME"};

bool is_frequency_axis(Axis a) {
    return a == Axis::Eps0 || a == Axis::Omega || a == Axis::Amp || a == Axis::Gamma2;
}

bool is_cooling(Method m) { return m == Method::COOL_APA || m == Method::COOL_NCA; }

QubitParams two_level_at(const SweepSpec& spec, double x) {
    RawInputs raw = spec.base;
    const Frequency f{x, spec.axis_unit};
    switch (spec.axis) {
        case Axis::Eps0: raw.eps0 = f; break;
        case Axis::Omega: raw.omega = f; break;
        case Axis::Amp: raw.amp = f; break;
        case Axis::Gamma2: raw.gamma2 = f; break;
        default: break;
    }
    return build_params(raw);
}

ThreeLevelParams three_level_at(const SweepSpec& spec, double x) {
    ThreeLevelRaw raw = spec.base3;
    const Frequency f{x, spec.axis_unit};
    switch (spec.axis) {
        case Axis::Omega: raw.omega = f; break;
        case Axis::Gamma2: raw.gamma2 = f; break;
        case Axis::PhiRf: raw.phi_rf = x; break;
        case Axis::PhiDc: raw.phi_dc = x; break;
        default: break;
    }
    return build_params(raw);
}

Cell failed(const std::exception& e) {
    Cell c;
    c.value = std::numeric_limits<double>::quiet_NaN();
    c.ok = false;
    c.converged = false;
    c.error = e.what();
    return c;
}

Cell evaluate_point(const SweepSpec& spec, Method m, double x) {
    try {
        Cell c;
        if (spec.model == Model::ThreeLevel) {
            const ThreeLevelParams p = three_level_at(spec, x);
            CoolingOptions opts;
            opts.samples_per_period = spec.options.samples_per_period;
            const auto r = cool_steady(p, m == Method::COOL_APA ? CoolingMethod::APA : CoolingMethod::NCA, opts);
            c.value = r.state.rho00;
            c.converged = r.converged;
            return c;
        }
        const QubitParams p = two_level_at(spec, x);
        RateSteadyOptions rate_opts;
        rate_opts.curve.samples_per_period = spec.options.samples_per_period;
        switch (m) {
            case Method::ORACLE: {
                SteadyStateOptions so;
                so.samples_per_period = spec.options.samples_per_period;
                const auto s = spec.options.oracle == OracleRoute::Floquet
                                   ? steady_state_floquet(p, so)
                                   : steady_state(p, DensityState::ground0(), so);
                c.value = s.avg_rho00;
                c.converged = s.converged;
                break;
            }
            case Method::RWA_STAT: c.value = pop_rwa_stationary(p); break;
            case Method::PRWA: c.value = pop_prwa_stationary(p); break;
            case Method::APA: c.value = pop_apa(p); break;
            case Method::NCA: {
                const auto s = nca_steady(p, rate_opts);
                c.value = s.avg_rho00;
                c.converged = s.converged;
                break;
            }
            case Method::TIMEDEP: {
                const auto s = timedep_steady(p, rate_opts);
                c.value = s.avg_rho00;
                c.converged = s.converged;
                break;
            }
            case Method::REGIME: {
                const auto r = classify(p);
                c.label = to_string(r.label);
                c.value = r.avg_rate;
                break;
            }
            default: throw ValidationError("methods", to_string(m) + " needs the three-level model");
        }
        return c;
    } catch (const std::exception& e) {
        return failed(e);
    }
}

// Whole time trace for one method; one cell per grid point.
std::vector<Cell> evaluate_trace(const SweepSpec& spec, Method m) {
    const std::vector<double>& grid = spec.points;
    try {
        const QubitParams p = build_params(spec.base);
        const bool one = spec.options.start_in_one;
        std::vector<double> values;
        switch (m) {
            case Method::ORACLE: {
                const auto traj = integrate(p, one ? DensityState::ground1() : DensityState::ground0(), grid.back(),
                                            grid);
                for (const auto& s : traj.states) values.push_back(s.rho00);
                break;
            }
            case Method::RWA_STAT:
                // Coherent RWA: population transferred out of the initial state.
                for (double t : grid) {
                    const double moved = pop_rwa_coherent(p, t);
                    values.push_back(one ? moved : 1.0 - moved);
                }
                break;
            case Method::NCA: {
                RateCurveOptions o;
                o.samples_per_period = spec.options.samples_per_period;
                values = pop_nca(p, grid, one ? 0.0 : 1.0, o).rho00;
                break;
            }
            case Method::TIMEDEP: {
                RateCurveOptions o;
                o.samples_per_period = spec.options.samples_per_period;
                values = pop_timedep(p, grid, one ? 0.0 : 1.0, o).rho00;
                break;
            }
            default: throw ValidationError("methods", to_string(m) + " has no time trace");
        }
        std::vector<Cell> cells(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) cells[i].value = values[i];
        return cells;
    } catch (const std::exception& e) {
        return std::vector<Cell>(grid.size(), failed(e));
    }
}

SweepResult empty_result(const SweepSpec& spec) {
    SweepResult r;
    r.spec = spec;
    r.rows.resize(spec.points.size());
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        r.rows[i].axis = spec.points[i];
        r.rows[i].cells.resize(spec.methods.size());
    }
    return r;
}

template <class Loop>
SweepResult run(const SweepSpec& spec, Loop loop) {
    validate(spec);
    SweepResult result = empty_result(spec);
    const long n_methods = static_cast<long>(spec.methods.size());
    if (spec.axis == Axis::Time) {
        loop(n_methods, [&](long k) {
            const auto cells = evaluate_trace(spec, spec.methods[k]);
            for (std::size_t i = 0; i < cells.size(); ++i) result.rows[i].cells[k] = cells[i];
        });
    } else {
        const long n = static_cast<long>(spec.points.size()) * n_methods;
        loop(n, [&](long k) {
            const long i = k / n_methods, j = k % n_methods;
            result.rows[i].cells[j] = evaluate_point(spec, spec.methods[j], spec.points[i]);
        });
    }
    return result;
}

bool numeric(Method m) { return m != Method::REGIME; }

}  // namespace

std::string to_string(Axis a) { return kAxisNames[static_cast<int>(a)]; }
std::string to_string(Method m) { return kMethodNames[static_cast<int>(m)]; }

Axis parse_axis(const std::string& s) {
    for (int i = 0; i < 7; ++i)
        if (s == kAxisNames[i]) return static_cast<Axis>(i);
    throw ValidationError("axis", "unknown axis '" + s + "'");
}

Method parse_method(const std::string& s) {
    for (int i = 0; i < 9; ++i)
        if (s == kMethodNames[i]) return static_cast<Method>(i);
    throw ValidationError("methods", "unknown method '" + s + "'");
}

ThreeLevelParams build_params(const ThreeLevelRaw& raw) {
    ThreeLevelParams p;
    p.delta01 = to_angular(raw.delta01);
    p.delta20 = to_angular(raw.delta20);
    p.m0 = to_angular(raw.m0);
    p.m1 = to_angular(raw.m1);
    p.m2 = to_angular(raw.m2);
    p.phi20 = raw.phi20;
    p.phi_dc = raw.phi_dc;
    p.phi_rf = raw.phi_rf;
    p.omega = to_angular(raw.omega);
    p.gamma2 = to_angular(raw.gamma2);
    p.gamma21 = to_angular(raw.gamma21);
    p.t1 = raw.t1_ns;
    if (!std::isfinite(raw.temperature_mk) || raw.temperature_mk <= 0.0)
        throw ValidationError("temperature", "must be positive");
    p.temperature = temperature_to_angular(raw.temperature_mk);
    validate(p);
    return p;
}

void validate(const SweepSpec& spec) {
    if (spec.points.empty()) throw ValidationError("points", "must not be empty");
    for (double x : spec.points)
        if (!std::isfinite(x)) throw ValidationError("points", "must be finite");
    if (spec.methods.empty()) throw ValidationError("methods", "must not be empty");
    if (spec.options.samples_per_period < 2) throw ValidationError("samples_per_period", "must be at least 2");
    for (std::size_t i = 0; i < spec.methods.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (spec.methods[i] == spec.methods[j])
                throw ValidationError("methods", "duplicate method " + to_string(spec.methods[i]));

    const bool three = spec.model == Model::ThreeLevel;
    for (Method m : spec.methods) {
        if (is_cooling(m) != three)
            throw ValidationError("methods", to_string(m) + (three ? " needs the two-level model"
                                                                  : " needs the three-level model"));
    }
    const Axis a = spec.axis;
    if (three && !(a == Axis::Omega || a == Axis::Gamma2 || a == Axis::PhiRf || a == Axis::PhiDc))
        throw ValidationError("axis", to_string(a) + " does not apply to the three-level model");
    if (!three && (a == Axis::PhiRf || a == Axis::PhiDc))
        throw ValidationError("axis", to_string(a) + " needs the three-level model");
    if (a == Axis::Time) {
        for (Method m : spec.methods)
            if (m != Method::ORACLE && m != Method::RWA_STAT && m != Method::NCA && m != Method::TIMEDEP)
                throw ValidationError("methods", to_string(m) + " has no time trace");
        for (std::size_t i = 0; i < spec.points.size(); ++i) {
            if (spec.points[i] < 0.0) throw ValidationError("points", "times must be >= 0");
            if (i > 0 && spec.points[i] <= spec.points[i - 1])
                throw ValidationError("points", "times must be strictly increasing");
        }
    }
    if (!three) {
        build_params(spec.base);  // base must be valid on its own
    } else {
        build_params(spec.base3);
    }
}

std::string axis_title(const SweepSpec& spec) {
    if (spec.axis == Axis::Time) return "time_ns";
    if (is_frequency_axis(spec.axis)) return to_string(spec.axis) + "_" + to_string(spec.axis_unit);
    return to_string(spec.axis) + "_mPhi0";
}

bool SweepResult::all_ok() const {
    for (const auto& row : rows)
        for (const auto& c : row.cells)
            if (!c.ok) return false;
    return true;
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    return run(spec, [threads](long n, auto&& body) {
        const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
        for (long k = 0; k < n; ++k) body(k);
    });
}

SweepResult run_sweep_serial(const SweepSpec& spec) {
    return run(spec, [](long n, auto&& body) {
        for (long k = 0; k < n; ++k) body(k);
    });
}

CsvTable to_table(const SweepResult& result) {
    const SweepSpec& spec = result.spec;
    const auto oracle_it = std::find(spec.methods.begin(), spec.methods.end(), Method::ORACLE);
    const bool has_oracle = oracle_it != spec.methods.end();
    const std::size_t oracle = static_cast<std::size_t>(oracle_it - spec.methods.begin());

    CsvTable t;
    t.header.push_back(axis_title(spec));
    for (Method m : spec.methods) t.header.push_back(to_string(m));
    if (has_oracle) {
        for (Method m : spec.methods)
            if (m != Method::ORACLE && numeric(m)) t.header.push_back(to_string(m) + "_dev");
        t.header.push_back("ORACLE_converged");
    }
    t.header.insert(t.header.end(), {"converged", "ok", "error"});

    for (const auto& row : result.rows) {
        std::vector<std::string> out;
        out.push_back(format_number(row.axis));
        for (std::size_t j = 0; j < spec.methods.size(); ++j) {
            const Cell& c = row.cells[j];
            if (spec.methods[j] == Method::REGIME)
                out.push_back(c.ok ? c.label : "nan");
            else
                out.push_back(format_number(c.ok ? c.value : std::numeric_limits<double>::quiet_NaN()));
        }
        if (has_oracle) {
            const Cell& o = row.cells[oracle];
            for (std::size_t j = 0; j < spec.methods.size(); ++j) {
                if (j == oracle || !numeric(spec.methods[j])) continue;
                const Cell& c = row.cells[j];
                const double dev = (c.ok && o.ok) ? std::abs(c.value - o.value) : std::numeric_limits<double>::quiet_NaN();
                out.push_back(format_number(dev));
            }
            out.push_back(o.ok && o.converged ? "1" : "0");
        }
        bool conv = true, ok = true;
        std::string err;
        for (std::size_t j = 0; j < spec.methods.size(); ++j) {
            const Cell& c = row.cells[j];
            conv = conv && c.converged;
            ok = ok && c.ok;
            if (!c.ok && err.empty()) err = to_string(spec.methods[j]) + ": " + c.error;
        }
        std::replace(err.begin(), err.end(), '\n', ' ');
        out.push_back(conv ? "1" : "0");
        out.push_back(ok ? "1" : "0");
        out.push_back(err);
        t.rows.push_back(std::move(out));
    }
    return t;
}

void emit_csv(const SweepResult& result, const std::string& path) { write_csv(to_table(result), path); }

std::map<std::string, DeviationStats> compare(const CsvTable& table) {
    const int oracle = table.column("ORACLE");
    if (oracle < 0) throw ValidationError("ORACLE", "compare needs an ORACLE column");
    const int conv = table.column("ORACLE_converged");
    std::map<std::string, DeviationStats> out;
    for (std::size_t col = 1; col < table.header.size(); ++col) {
        const std::string& name = table.header[col];
        if (static_cast<int>(col) == oracle || name == "REGIME") continue;
        bool is_method = false;
        for (const char* m : kMethodNames) is_method = is_method || name == m;
        if (!is_method) continue;
        DeviationStats s;
        double sum = 0.0;
        for (const auto& row : table.rows) {
            if (conv >= 0 && row[conv] != "1") continue;
            const double a = std::strtod(row[col].c_str(), nullptr);
            const double o = std::strtod(row[oracle].c_str(), nullptr);
            if (!std::isfinite(a) || !std::isfinite(o)) continue;
            const double d = std::abs(a - o);
            if (s.rows_used == 0 || d > s.max_abs_dev) {
                s.max_abs_dev = d;
                s.argmax_point = std::strtod(row[0].c_str(), nullptr);
            }
            sum += d;
            ++s.rows_used;
        }
        s.mean_abs_dev = s.rows_used ? sum / s.rows_used : 0.0;
        out[name] = s;
    }
    return out;
}

std::map<std::string, DeviationStats> compare(const SweepResult& result) {
    // Straight from the cells so no precision is lost to formatting.
    const auto& methods = result.spec.methods;
    const auto it = std::find(methods.begin(), methods.end(), Method::ORACLE);
    if (it == methods.end()) throw ValidationError("ORACLE", "compare needs an ORACLE column");
    const std::size_t oracle = static_cast<std::size_t>(it - methods.begin());
    std::map<std::string, DeviationStats> out;
    for (std::size_t j = 0; j < methods.size(); ++j) {
        if (j == oracle || !numeric(methods[j])) continue;
        DeviationStats s;
        double sum = 0.0;
        for (const auto& row : result.rows) {
            const Cell& o = row.cells[oracle];
            const Cell& c = row.cells[j];
            if (!o.ok || !o.converged || !c.ok) continue;
            const double d = std::abs(c.value - o.value);
            if (s.rows_used == 0 || d > s.max_abs_dev) {
                s.max_abs_dev = d;
                s.argmax_point = row.axis;
            }
            sum += d;
            ++s.rows_used;
        }
        s.mean_abs_dev = s.rows_used ? sum / s.rows_used : 0.0;
        out[to_string(methods[j])] = s;
    }
    return out;
}

}  // namespace lzs
