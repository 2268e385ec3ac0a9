#include "lzs/config.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lzs/errors.hpp"

namespace lzs {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ValidationError(where, "must be an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ValidationError(where.empty() ? key : where + "." + key, "unknown key");
    }
}

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

Frequency frequency(const json& v, const std::string& field) {
    if (!v.is_string()) throw ValidationError(field, "must be a string with a unit, e.g. \"90 MHz\"");
    return parse_frequency(v.get<std::string>(), field);
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ValidationError(field, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ValidationError(field, "must be finite");
    return x;
}

// T1 either directly in ns or as the rate 1/T1.
double relaxation_time(const json& base, const std::string& where, double fallback) {
    const bool has_t1 = base.contains("t1_ns"), has_rate = base.contains("relax_rate");
    if (has_t1 && has_rate) throw ValidationError(join(where, "t1_ns"), "give t1_ns or relax_rate, not both");
    if (has_t1) return number(base["t1_ns"], join(where, "t1_ns"));
    if (has_rate) {
        const double rate = to_angular(frequency(base["relax_rate"], join(where, "relax_rate")));
        if (!(rate > 0.0)) throw ValidationError(join(where, "relax_rate"), "must be positive");
        return 1.0 / rate;
    }
    return fallback;
}

RawInputs parse_two_level_base(const json& base) {
    const std::string w = "base";
    reject_unknown(base, w, {"delta", "eps0", "amp", "omega", "gamma2", "t1_ns", "relax_rate", "temperature_mk"});
    RawInputs raw;
    for (const char* key : {"delta", "eps0", "amp", "omega", "gamma2"})
        if (!base.contains(key)) throw ValidationError(join(w, key), "is required");
    raw.delta = frequency(base["delta"], "base.delta");
    raw.eps0 = frequency(base["eps0"], "base.eps0");
    raw.amp = frequency(base["amp"], "base.amp");
    raw.omega = frequency(base["omega"], "base.omega");
    raw.gamma2 = frequency(base["gamma2"], "base.gamma2");
    raw.t1_ns = relaxation_time(base, w, 1.0 / (kTwoPi * 5e-5));
    raw.temperature_mk = base.contains("temperature_mk") ? number(base["temperature_mk"], "base.temperature_mk") : 50.0;
    return raw;
}

ThreeLevelRaw parse_three_level_base(const json& base) {
    const std::string w = "base";
    reject_unknown(base, w,
                   {"delta01", "delta20", "m0", "m1", "m2", "phi20", "phi_dc", "phi_rf", "omega", "gamma2", "gamma21",
                    "t1_ns", "relax_rate", "temperature_mk"});
    ThreeLevelRaw raw;
    auto freq = [&](const char* key, Frequency& out) {
        if (base.contains(key)) out = frequency(base[key], join(w, key));
    };
    auto flux = [&](const char* key, double& out) {
        if (base.contains(key)) out = number(base[key], join(w, key));
    };
    freq("delta01", raw.delta01);
    freq("delta20", raw.delta20);
    freq("m0", raw.m0);
    freq("m1", raw.m1);
    freq("m2", raw.m2);
    freq("omega", raw.omega);
    freq("gamma2", raw.gamma2);
    freq("gamma21", raw.gamma21);
    flux("phi20", raw.phi20);
    flux("phi_dc", raw.phi_dc);
    flux("phi_rf", raw.phi_rf);
    raw.t1_ns = relaxation_time(base, w, raw.t1_ns);
    if (base.contains("temperature_mk")) raw.temperature_mk = number(base["temperature_mk"], "base.temperature_mk");
    return raw;
}

bool frequency_axis(Axis a) { return a == Axis::Eps0 || a == Axis::Omega || a == Axis::Amp || a == Axis::Gamma2; }

// Axis value in the spec's unit; the first frequency seen fixes the unit.
double axis_value(const json& v, const std::string& field, Axis axis, std::optional<FreqUnit>& unit) {
    if (!frequency_axis(axis)) return number(v, field);
    const Frequency f = frequency(v, field);
    if (!unit) unit = f.unit;
    if (f.unit == *unit) return f.value;
    return from_angular(to_angular(f), *unit).value;
}

std::vector<double> expand_range(const json& range, Axis axis, std::optional<FreqUnit>& unit) {
    reject_unknown(range, "range", {"from", "to", "count", "spacing"});
    for (const char* key : {"from", "to", "count"})
        if (!range.contains(key)) throw ValidationError(join("range", key), "is required");
    const double from = axis_value(range["from"], "range.from", axis, unit);
    const double to = axis_value(range["to"], "range.to", axis, unit);
    if (!range["count"].is_number_integer()) throw ValidationError("range.count", "must be an integer");
    const long count = range["count"].get<long>();
    if (count < 1) throw ValidationError("range.count", "must be at least 1");
    std::string spacing = "linear";
    if (range.contains("spacing")) {
        if (!range["spacing"].is_string()) throw ValidationError("range.spacing", "must be \"linear\" or \"log\"");
        spacing = range["spacing"].get<std::string>();
    }
    if (spacing != "linear" && spacing != "log") throw ValidationError("range.spacing", "must be \"linear\" or \"log\"");
    const bool log = spacing == "log";
    if (log && !(from > 0.0 && to > 0.0)) throw ValidationError("range", "log spacing needs positive end points");

    std::vector<double> pts(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double s = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        pts[i] = log ? std::exp(std::log(from) + s * (std::log(to) - std::log(from))) : from + s * (to - from);
    }
    pts.front() = from;
    if (count > 1) pts.back() = to;
    return pts;
}

SweepOptions parse_overrides(const json& o) {
    reject_unknown(o, "overrides", {"samples_per_period", "oracle", "init"});
    SweepOptions opts;
    if (o.contains("samples_per_period")) {
        if (!o["samples_per_period"].is_number_integer())
            throw ValidationError("overrides.samples_per_period", "must be an integer");
        opts.samples_per_period = o["samples_per_period"].get<int>();
    }
    if (o.contains("oracle")) {
        const std::string route = o["oracle"].is_string() ? o["oracle"].get<std::string>() : "";
        if (route == "floquet")
            opts.oracle = OracleRoute::Floquet;
        else if (route == "direct")
            opts.oracle = OracleRoute::Direct;
        else
            throw ValidationError("overrides.oracle", "must be \"floquet\" or \"direct\"");
    }
    if (o.contains("init")) {
        const std::string init = o["init"].is_string() ? o["init"].get<std::string>() : "";
        if (init == "ground0")
            opts.start_in_one = false;
        else if (init == "ground1")
            opts.start_in_one = true;
        else
            throw ValidationError("overrides.init", "must be \"ground0\" or \"ground1\"");
    }
    return opts;
}

json parse_document(const std::string& document) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        // Report a line number rather than a byte offset.
        const std::size_t upto = std::min<std::size_t>(e.byte, document.size());
        const long line = 1 + std::count(document.begin(), document.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw ValidationError("line " + std::to_string(line), e.what());
    }
}

}  // namespace

SweepSpec parse_config(const std::string& document) { return parse_config(parse_document(document)); }

CoolThresholdSpec parse_cool_threshold(const std::string& document) {
    const json doc = parse_document(document);
    reject_unknown(doc, "", {"base", "range", "margin", "method"});
    CoolThresholdSpec spec;
    if (!doc.contains("base")) throw ValidationError("base", "is required");
    spec.base = parse_three_level_base(doc["base"]);
    if (doc.contains("range")) {
        reject_unknown(doc["range"], "range", {"from", "to"});
        if (doc["range"].contains("from")) spec.from = frequency(doc["range"]["from"], "range.from");
        if (doc["range"].contains("to")) spec.to = frequency(doc["range"]["to"], "range.to");
    }
    if (doc.contains("margin")) spec.margin = number(doc["margin"], "margin");
    if (doc.contains("method")) {
        const std::string m = doc["method"].is_string() ? doc["method"].get<std::string>() : "";
        if (m != "APA" && m != "NCA") throw ValidationError("method", "must be \"APA\" or \"NCA\"");
        spec.apa = m == "APA";
    }
    build_params(spec.base);
    return spec;
}

SweepSpec parse_config(const json& doc) {
    reject_unknown(doc, "", {"model", "base", "axis", "points", "range", "methods", "output", "overrides"});
    SweepSpec spec;
    const std::string model = doc.contains("model") && doc["model"].is_string() ? doc["model"].get<std::string>()
                                                                                 : "two_level";
    if (doc.contains("model") && !doc["model"].is_string()) throw ValidationError("model", "must be a string");
    if (model == "two_level")
        spec.model = Model::TwoLevel;
    else if (model == "three_level")
        spec.model = Model::ThreeLevel;
    else
        throw ValidationError("model", "must be \"two_level\" or \"three_level\"");

    if (!doc.contains("base")) throw ValidationError("base", "is required");
    if (spec.model == Model::TwoLevel)
        spec.base = parse_two_level_base(doc["base"]);
    else
        spec.base3 = parse_three_level_base(doc["base"]);

    if (!doc.contains("axis") || !doc["axis"].is_string()) throw ValidationError("axis", "is required (string)");
    spec.axis = parse_axis(doc["axis"].get<std::string>());

    std::optional<FreqUnit> unit;
    const bool has_points = doc.contains("points"), has_range = doc.contains("range");
    if (has_points == has_range) throw ValidationError("points", "give exactly one of points or range");
    if (has_points) {
        if (!doc["points"].is_array()) throw ValidationError("points", "must be an array");
        std::size_t i = 0;
        for (const auto& v : doc["points"])
            spec.points.push_back(axis_value(v, "points[" + std::to_string(i++) + "]", spec.axis, unit));
    } else {
        spec.points = expand_range(doc["range"], spec.axis, unit);
    }
    spec.axis_unit = unit.value_or(FreqUnit::MHz);

    if (!doc.contains("methods") || !doc["methods"].is_array()) throw ValidationError("methods", "is required (array)");
    for (const auto& m : doc["methods"]) {
        if (!m.is_string()) throw ValidationError("methods", "entries must be strings");
        spec.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw ValidationError("output", "must be a string");
        spec.output = doc["output"].get<std::string>();
    }
    if (doc.contains("overrides")) spec.options = parse_overrides(doc["overrides"]);
    validate(spec);
    return spec;
}

}  // namespace lzs
