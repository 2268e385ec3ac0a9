#pragma once

// JSON sweep documents:
//
//   {
//     "model": "two_level",
//     "base": {"delta": "90 MHz", "eps0": "4950 MHz", "amp": "5 GHz", "omega": "10 MHz",
//              "gamma2": "110 MHz", "relax_rate": "0.05 MHz", "temperature_mk": 50},
//     "axis": "eps0",
//     "range": {"from": "-6 GHz", "to": "6 GHz", "count": 100, "spacing": "linear"},
//     "methods": ["PRWA", "ORACLE"],
//     "output": "fig3b.csv",
//     "overrides": {"samples_per_period": 400, "oracle": "floquet", "init": "ground0"}
//   }
//
// "points" may replace "range". Interwell relaxation is given either as
// "t1_ns" or as the rate 1/T1 ("relax_rate"). Unknown keys are errors.

#include <string>

#include <json.hpp>

#include "lzs/sweep.hpp"

namespace lzs {

SweepSpec parse_config(const std::string& document);
SweepSpec parse_config(const nlohmann::json& doc);

/// Input of the cooling-threshold search:
///   {"base": {three-level base}, "range": {"from": "0.001 MHz", "to": "20 MHz"},
///    "margin": 0.02, "method": "NCA"}
struct CoolThresholdSpec {
    ThreeLevelRaw base;
    Frequency from{0.001, FreqUnit::MHz};
    Frequency to{20.0, FreqUnit::MHz};
    double margin = 0.02;
    bool apa = false;
};

CoolThresholdSpec parse_cool_threshold(const std::string& document);

}  // namespace lzs
