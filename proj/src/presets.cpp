#include "lzs/presets.hpp"

#include <map>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

using nlohmann::json;

json two_level(const std::string& eps0, const std::string& amp, const std::string& omega, const std::string& gamma2) {
    return {{"delta", "90 MHz"}, {"eps0", eps0},           {"amp", amp},          {"omega", omega},
            {"gamma2", gamma2},  {"relax_rate", "0.05 MHz"}, {"temperature_mk", 50}};
}

json eps0_range(bool small_amplitude) {
    if (small_amplitude) return {{"from", "-0.2 GHz"}, {"to", "0.2 GHz"}, {"count", 101}, {"spacing", "linear"}};
    return {{"from", "-6 GHz"}, {"to", "6 GHz"}, {"count", 100}, {"spacing", "linear"}};
}

json eps0_sweep(const std::string& name, const std::string& amp, const std::string& omega, const std::string& gamma2,
                const std::string& method, bool narrow) {
    return {{"model", "two_level"},
            {"base", two_level("4950 MHz", amp, omega, gamma2)},
            {"axis", "eps0"},
            {"range", eps0_range(narrow)},
            {"methods", {method, "ORACLE", "REGIME"}},
            {"output", name + ".csv"}};
}

json time_trace(const std::string& name, json base, double t_end, int count, json methods, const std::string& init) {
    return {{"model", "two_level"},
            {"base", std::move(base)},
            {"axis", "time"},
            {"range", {{"from", 0}, {"to", t_end}, {"count", count}, {"spacing", "linear"}}},
            {"methods", std::move(methods)},
            {"output", name + ".csv"},
            {"overrides", {{"init", init}}}};
}

std::map<std::string, json> build() {
    std::map<std::string, json> m;

    json free = two_level("90 MHz", "5 GHz", "90 MHz", "0 MHz");
    free.erase("relax_rate");
    free["t1_ns"] = 1e15;  // no interwell relaxation on this time scale
    m["fig2a"] = time_trace("fig2a", free, 500.0, 1001, {"ORACLE", "RWA_STAT"}, "ground1");

    const char* g3[] = {"3 MHz", "110 MHz", "1050 MHz"};
    const char* panels3 = "abcdef";
    for (int i = 0; i < 6; ++i) {
        const std::string name = std::string("fig3") + panels3[i];
        m[name] = eps0_sweep(name, i < 3 ? "5 GHz" : "0.01 GHz", "90 MHz", g3[i % 3], "PRWA", false);
    }

    const struct {
        const char* omega;
        const char* amp;
    } f4[] = {{"10 MHz", "5 GHz"}, {"1 MHz", "5 GHz"}, {"90 MHz", "5 GHz"}, {"1 MHz", "0.01 GHz"}};
    for (int i = 0; i < 4; ++i) {
        const std::string name = std::string("fig4") + "abcd"[i];
        m[name] = time_trace(name, two_level("4950 MHz", f4[i].amp, f4[i].omega, "110 MHz"), 10000.0, 2001,
                             {"ORACLE", "TIMEDEP"}, "ground0");
    }

    const char* g5[] = {"40 MHz", "110 MHz", "1050 MHz"};
    for (int i = 0; i < 6; ++i) {
        const std::string name = std::string("fig5") + "abcdef"[i];
        m[name] = eps0_sweep(name, i < 3 ? "5 GHz" : "0.01 GHz", "1 MHz", g5[i % 3], "APA", i >= 3);
    }

    const char* g6[] = {"40 MHz", "110 MHz", "1050 MHz", "3 MHz"};
    for (int i = 0; i < 8; ++i) {
        const std::string name = std::string("fig6") + "abcdefgh"[i];
        m[name] = eps0_sweep(name, i < 4 ? "5 GHz" : "0.01 GHz", "10 MHz", g6[i % 4], "APA", i >= 4);
    }

    const char* g7[] = {"3 MHz", "40 MHz", "110 MHz", "1050 MHz"};
    for (int i = 0; i < 4; ++i) {
        const std::string name = std::string("fig7") + "abcd"[i];
        m[name] = eps0_sweep(name, "5 GHz", "1 MHz", g7[i], "NCA", false);
    }

    const char* g8[] = {"1050 MHz", "3 MHz"};
    for (int i = 0; i < 2; ++i) {
        const std::string name = std::string("fig8") + "ab"[i];
        m[name] = time_trace(name, two_level("4125 MHz", "5 GHz", "1 MHz", g8[i]), 20000.0, 2001, {"ORACLE", "NCA"},
                             "ground0");
    }

    m["fig9b"] = {{"model", "two_level"},
                  {"base", two_level("4950 MHz", "5 GHz", "10 MHz", "110 MHz")},
                  {"axis", "omega"},
                  {"range", {{"from", "0.5 MHz"}, {"to", "500 MHz"}, {"count", 31}, {"spacing", "log"}}},
                  {"methods", {"APA", "NCA", "ORACLE", "REGIME"}},
                  {"output", "fig9b.csv"}};

    m["fig10b"] = {{"model", "three_level"},
                   {"base",
                    {{"delta01", "0.013 GHz"},
                     {"delta20", "0.09 GHz"},
                     {"m0", "1.44 GHz"},
                     {"m1", "1.44 GHz"},
                     {"m2", "1.09 GHz"},
                     {"phi20", 8.4},
                     {"phi_dc", 0.05},
                     {"phi_rf", 10.0},
                     {"omega", "5 MHz"},
                     {"gamma2", "0.06 GHz"},
                     {"gamma21", "0.1 GHz"},
                     {"relax_rate", "0.05 MHz"},
                     {"temperature_mk", 50}}},
                   {"axis", "omega"},
                   {"range", {{"from", "0.01 MHz"}, {"to", "20 MHz"}, {"count", 34}, {"spacing", "log"}}},
                   {"methods", {"COOL_NCA"}},
                   {"output", "fig10b.csv"}};
    return m;
}

const std::map<std::string, json>& table() {
    static const std::map<std::string, json> t = build();
    return t;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, doc] : table()) {
            (void)doc;
            v.push_back(k);
        }
        return v;
    }();
    return names;
}

json preset_document(const std::string& name) {
    const auto it = table().find(name);
    if (it == table().end()) throw ValidationError("preset", "unknown preset '" + name + "'");
    return it->second;
}

}  // namespace lzs
