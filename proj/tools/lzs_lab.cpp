// lzs_lab: parameter sweeps, figure presets and diagnostics for the driven
// dissipative flux qubit.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lzs/config.hpp"
#include "lzs/cooling.hpp"
#include "lzs/csv.hpp"
#include "lzs/errors.hpp"
#include "lzs/presets.hpp"
#include "lzs/regime.hpp"
#include "lzs/sweep.hpp"

namespace {

constexpr int kValidationExit = 2;
constexpr int kPointFailureExit = 3;

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw lzs::ValidationError("config", "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int thread_count(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("LZS_LAB_THREADS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
        throw lzs::ValidationError("LZS_LAB_THREADS", "must be a positive integer");
    }
    return 0;
}

int run_and_write(const lzs::SweepSpec& spec, const std::string& path, int threads) {
    const lzs::SweepResult result = lzs::run_sweep(spec, threads);
    if (path.empty() || path == "-") {
        std::cout << lzs::to_csv(lzs::to_table(result));
    } else {
        lzs::emit_csv(result, path);
        std::cerr << "wrote " << result.rows.size() << " rows to " << path << "\n";
    }
    if (!result.all_ok()) {
        std::cerr << "some points failed; see the error column\n";
        return kPointFailureExit;
    }
    return 0;
}

void print_stats(const std::map<std::string, lzs::DeviationStats>& stats) {
    std::printf("%-10s %14s %14s %16s %6s\n", "method", "max_abs_dev", "mean_abs_dev", "argmax_point", "rows");
    for (const auto& [name, s] : stats)
        std::printf("%-10s %14.6g %14.6g %16.10g %6d\n", name.c_str(), s.max_abs_dev, s.mean_abs_dev, s.argmax_point,
                    s.rows_used);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sweeps and figure presets for a strongly driven dissipative flux qubit"};
    app.require_subcommand(1);
    int threads_flag = 0;
    app.add_option("--threads", threads_flag, "worker threads for point evaluation (env LZS_LAB_THREADS)");

    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON config");
    std::string config_path, sweep_out;
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("-o,--output", sweep_out, "CSV path (default: the config's output, '-' for stdout)");

    auto* preset = app.add_subcommand("preset", "run a built-in figure preset");
    std::string preset_name, preset_dir = ".";
    bool print_config = false, list = false;
    preset->add_option("name", preset_name, "preset name");
    preset->add_option("-d,--dir", preset_dir, "directory for <preset>.csv");
    preset->add_flag("--print-config", print_config, "print the preset's JSON config and exit");
    preset->add_flag("--list", list, "list preset names");

    auto* cmp = app.add_subcommand("compare", "deviation of each method from ORACLE in a sweep CSV");
    std::string csv_path;
    cmp->add_option("csv", csv_path, "sweep CSV")->required();

    auto* regime = app.add_subcommand("regime", "classify one parameter point");
    std::string delta = "90 MHz", eps0, amp, omega, gamma2, relax = "0.05 MHz";
    double temperature_mk = 50.0;
    regime->add_option("--delta", delta, "tunnel splitting, e.g. \"90 MHz\"")->capture_default_str();
    regime->add_option("--eps0", eps0, "static detuning")->required();
    regime->add_option("--amp", amp, "drive amplitude")->required();
    regime->add_option("--omega", omega, "drive frequency")->required();
    regime->add_option("--gamma2", gamma2, "decoherence rate")->required();
    regime->add_option("--relax-rate", relax, "interwell relaxation rate 1/T1")->capture_default_str();
    regime->add_option("--temperature-mk", temperature_mk, "bath temperature in mK")->capture_default_str();

    auto* cool = app.add_subcommand("cool-threshold", "lowest drive frequency that still cools the qubit");
    std::string cool_path;
    cool->add_option("config", cool_path, "threshold config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kValidationExit;
    }

    try {
        const int threads = thread_count(threads_flag);
        if (*sweep) {
            const lzs::SweepSpec spec = lzs::parse_config(slurp(config_path));
            return run_and_write(spec, sweep_out.empty() ? spec.output : sweep_out, threads);
        }
        if (*preset) {
            if (list) {
                for (const auto& n : lzs::preset_names()) std::cout << n << "\n";
                return 0;
            }
            if (preset_name.empty()) throw lzs::ValidationError("name", "preset name required (see --list)");
            const auto doc = lzs::preset_document(preset_name);
            if (print_config) {
                std::cout << doc.dump(2) << "\n";
                return 0;
            }
            const lzs::SweepSpec spec = lzs::parse_config(doc);
            return run_and_write(spec, preset_dir + "/" + preset_name + ".csv", threads);
        }
        if (*cmp) {
            print_stats(lzs::compare(lzs::read_csv(csv_path)));
            return 0;
        }
        if (*regime) {
            lzs::RawInputs raw;
            raw.delta = lzs::parse_frequency(delta, "delta");
            raw.eps0 = lzs::parse_frequency(eps0, "eps0");
            raw.amp = lzs::parse_frequency(amp, "amp");
            raw.omega = lzs::parse_frequency(omega, "omega");
            raw.gamma2 = lzs::parse_frequency(gamma2, "gamma2");
            raw.t1_ns = 1.0 / lzs::to_angular(lzs::parse_frequency(relax, "relax-rate"));
            raw.temperature_mk = temperature_mk;
            const lzs::RegimeReport r = lzs::classify(lzs::build_params(raw));
            std::cout << "label " << lzs::to_string(r.label) << "\n";
            std::cout << "avg_rate_MHz " << lzs::format_number(r.avg_rate / lzs::kTwoPi * 1e3) << "\n";
            for (const auto& [k, v] : r.margins) std::cout << k << " " << lzs::format_number(v) << "\n";
            if (r.near_amplitude_warning) std::cout << "warning: high coherence near eps0 = A\n";
            return 0;
        }
        if (*cool) {
            const lzs::CoolThresholdSpec spec = lzs::parse_cool_threshold(slurp(cool_path));
            const lzs::ThreeLevelParams p = lzs::build_params(spec.base);
            const double w = lzs::min_cooling_frequency(
                p, p.phi_rf, {lzs::to_angular(spec.from), lzs::to_angular(spec.to)}, spec.margin,
                spec.apa ? lzs::CoolingMethod::APA : lzs::CoolingMethod::NCA);
            std::cout << "threshold_MHz " << lzs::format_number(w / lzs::kTwoPi * 1e3) << "\n";
            return 0;
        }
    } catch (const lzs::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidationExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
