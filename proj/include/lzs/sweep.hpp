#pragma once

// Declarative parameter sweeps over the two-level and three-level models.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lzs/csv.hpp"
#include "lzs/params.hpp"

namespace lzs {

enum class Model { TwoLevel, ThreeLevel };

enum class Axis { Eps0, Omega, Amp, Gamma2, PhiRf, PhiDc, Time };

enum class Method { ORACLE, RWA_STAT, PRWA, APA, NCA, TIMEDEP, COOL_APA, COOL_NCA, REGIME };

std::string to_string(Axis a);
std::string to_string(Method m);
Axis parse_axis(const std::string& s);
Method parse_method(const std::string& s);

/// Three-level inputs in lab units: frequencies, slopes per mPhi0, fluxes in mPhi0.
struct ThreeLevelRaw {
    Frequency delta01{0.013, FreqUnit::GHz};
    Frequency delta20{0.09, FreqUnit::GHz};
    Frequency m0{1.44, FreqUnit::GHz};
    Frequency m1{1.44, FreqUnit::GHz};
    Frequency m2{1.09, FreqUnit::GHz};
    double phi20 = 8.4;
    double phi_dc = 0.05;
    double phi_rf = 10.0;
    Frequency omega{5.0, FreqUnit::MHz};
    Frequency gamma2{0.06, FreqUnit::GHz};
    Frequency gamma21{0.1, FreqUnit::GHz};
    double t1_ns = 1.0 / (kTwoPi * 5e-5);
    double temperature_mk = 50.0;
};

ThreeLevelParams build_params(const ThreeLevelRaw& raw);

enum class OracleRoute { Floquet, Direct };

struct SweepOptions {
    int samples_per_period = 400;
    OracleRoute oracle = OracleRoute::Floquet;
    bool start_in_one = false;  ///< time axis: start in |1> instead of |0>
};

struct SweepSpec {
    Model model = Model::TwoLevel;
    RawInputs base;
    ThreeLevelRaw base3;
    Axis axis = Axis::Eps0;
    FreqUnit axis_unit = FreqUnit::MHz;  ///< frequency axes only
    std::vector<double> points;          ///< in axis_unit, ns, or mPhi0
    std::vector<Method> methods;
    std::string output;
    SweepOptions options;
};

/// Throws ValidationError naming the offending field.
void validate(const SweepSpec& spec);

/// Axis column title, e.g. "eps0_MHz", "time_ns", "phi_rf_mPhi0".
std::string axis_title(const SweepSpec& spec);

struct Cell {
    double value = 0.0;
    std::string label;       ///< REGIME only
    bool converged = true;   ///< steady-state methods
    bool ok = true;
    std::string error;
};

struct SweepRow {
    double axis = 0.0;
    std::vector<Cell> cells;  ///< one per spec.methods entry
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;

    bool all_ok() const;
};

/// Points are evaluated in parallel (OpenMP); threads <= 0 keeps the runtime default.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);
/// Same table computed in order on the calling thread.
SweepResult run_sweep_serial(const SweepSpec& spec);

/// Columns: axis, methods in spec order, <M>_dev per numeric method when
/// ORACLE is present, ORACLE_converged, converged, ok, error.
CsvTable to_table(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);

struct DeviationStats {
    double max_abs_dev = 0.0;
    double mean_abs_dev = 0.0;
    double argmax_point = 0.0;
    int rows_used = 0;
};

/// Deviation of every numeric method from ORACLE over rows where the oracle
/// converged and both values are present. ValidationError without ORACLE.
std::map<std::string, DeviationStats> compare(const CsvTable& table);
std::map<std::string, DeviationStats> compare(const SweepResult& result);

}  // namespace lzs
