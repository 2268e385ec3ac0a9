#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "lzs/config.hpp"
#include "lzs/csv.hpp"
#include "lzs/errors.hpp"
#include "lzs/presets.hpp"
#include "lzs/sweep.hpp"

using namespace lzs;

namespace {

const char* kMinimal = R"({
  "base": {"delta": "90 MHz", "eps0": "4950 MHz", "amp": "5 GHz", "omega": "10 MHz", "gamma2": "110 MHz"},
  "axis": "eps0",
  "points": ["4950 MHz"],
  "methods": ["APA"]
})";

const char* kSmallSweep = R"({
  "base": {"delta": "90 MHz", "eps0": "0 MHz", "amp": "0.01 GHz", "omega": "90 MHz", "gamma2": "110 MHz",
           "relax_rate": "0.05 MHz"},
  "axis": "eps0",
  "range": {"from": "-0.4 GHz", "to": "0.4 GHz", "count": 5},
  "methods": ["PRWA", "ORACLE", "APA", "NCA", "TIMEDEP", "REGIME"]
})";

std::string field_of(const std::string& doc) {
    try {
        parse_config(doc);
    } catch (const ValidationError& e) {
        return e.field();
    }
    return "none";
}

std::string with(const std::string& doc, const std::string& from, const std::string& to) {
    std::string s = doc;
    s.replace(s.find(from), from.size(), to);
    return s;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("minimal document gets defaults") {
    const SweepSpec s = parse_config(std::string(kMinimal));
    CHECK(s.model == Model::TwoLevel);
    CHECK(s.points.size() == 1);
    CHECK(s.points[0] == 4950.0);
    CHECK(s.axis_unit == FreqUnit::MHz);
    CHECK(s.base.temperature_mk == 50.0);
    CHECK(s.options.samples_per_period == 400);
    CHECK(s.options.oracle == OracleRoute::Floquet);
    REQUIRE(s.methods.size() == 1);
    CHECK(s.methods[0] == Method::APA);
}

TEST_CASE("range expands to the requested count") {
    const std::string doc = with(kMinimal, R"("points": ["4950 MHz"])",
                                 R"("range": {"from": "-6 GHz", "to": "6 GHz", "count": 100})");
    const SweepSpec s = parse_config(doc);
    REQUIRE(s.points.size() == 100);
    CHECK(s.axis_unit == FreqUnit::GHz);
    CHECK(s.points.front() == -6.0);
    CHECK(s.points.back() == 6.0);
    CHECK(axis_title(s) == "eps0_GHz");

    const SweepSpec lg = parse_config(with(kMinimal, R"("axis": "eps0",
  "points": ["4950 MHz"])", R"("axis": "omega", "range": {"from": "1 MHz", "to": "100 MHz", "count": 3, "spacing": "log"})"));
    REQUIRE(lg.points.size() == 3);
    CHECK(lg.points[1] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("bad documents are rejected with the field named") {
    CHECK(field_of(with(kMinimal, R"(["APA"])", R"(["COOL_APA"])")) == "methods");
    CHECK(field_of(with(kMinimal, R"("axis")", R"("colour": 1, "axis")")) == "colour");
    CHECK(field_of(with(kMinimal, R"("gamma2": "110 MHz")", R"("gamma2": "110 MHz", "tau": 3)")) == "base.tau");
    CHECK(field_of(with(kMinimal, R"(["APA"])", "[]")) == "methods");
    CHECK(field_of(with(kMinimal, R"(["4950 MHz"])", "[]")) == "points");
    CHECK(field_of(with(kMinimal, R"("10 MHz")", R"("10 Hz")")) == "base.omega");
    CHECK(field_of(with(kMinimal, R"("eps0",
  "points": ["4950 MHz"])", R"("phi_rf", "points": [1.5])")) == "axis");
    // a syntax error reports where it happened
    const std::string broken = with(kMinimal, R"("axis": "eps0",)", R"("axis": "eps0")");
    const std::string f = field_of(broken);
    CHECK(f.rfind("line ", 0) == 0);
}

TEST_CASE("every preset parses") {
    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        const SweepSpec s = parse_config(preset_document(name));
        CHECK(s.output == name + ".csv");
        CHECK_FALSE(s.points.empty());
    }
    CHECK(preset_names().size() == 33);
    CHECK_THROWS_AS(preset_document("fig11"), ValidationError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(500.0) == "500");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(std::stod(format_number(1.0 / 3.0)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(format_number(1.0 / 3.0).size() <= 14);
}

TEST_CASE("csv round trip") {
    CsvTable t;
    t.header = {"a", "b,c", "label"};
    t.rows = {{"1", "2.5", "APA"}, {"-3e-05", "x \"y\"", ""}};
    const std::string text = to_csv(t);
    CHECK(text.back() == '\n');
    CHECK(text.find('\r') == std::string::npos);
    const CsvTable back = parse_csv(text);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.column("label") == 2);
    CHECK(back.column("missing") == -1);
    CHECK_THROWS(parse_csv("a,b\n1\n"));

    const auto path = std::filesystem::temp_directory_path() / "lzs_roundtrip.csv";
    write_csv(t, path.string());
    CHECK(read_csv(path.string()).rows == t.rows);
    std::filesystem::remove(path);
    CHECK_THROWS(read_csv((std::filesystem::temp_directory_path() / "no_such_dir" / "x.csv").string()));
}

TEST_CASE("sweep table layout and statistics") {
    const SweepSpec spec = parse_config(std::string(kSmallSweep));
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.rows.size() == 5);
    CHECK(r.all_ok());
    const CsvTable t = to_table(r);
    const std::vector<std::string> head = {"eps0_GHz", "PRWA",      "ORACLE",     "APA",    "NCA",
                                           "TIMEDEP",  "REGIME",    "PRWA_dev",   "APA_dev", "NCA_dev",
                                           "TIMEDEP_dev", "ORACLE_converged", "converged", "ok", "error"};
    CHECK(t.header == head);
    CHECK(t.rows.size() == 5);

    // deviation columns are recomputed from the method columns
    for (const auto& row : t.rows) {
        const double dev = std::abs(std::stod(row[1]) - std::stod(row[2]));
        CHECK(std::stod(row[7]) == doctest::Approx(dev).epsilon(1e-9));
        CHECK(row[6] == "BOUNDARY");  // w = delta
    }
    const CsvTable back = parse_csv(to_csv(t));
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            const double a = std::stod(t.rows[i][j]), b = std::stod(back.rows[i][j]);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }

    const auto stats = compare(r);
    CHECK(stats.at("PRWA").rows_used == 5);
    CHECK(stats.at("PRWA").max_abs_dev < 0.05);
    CHECK(stats.at("PRWA").mean_abs_dev <= stats.at("PRWA").max_abs_dev);
    const auto from_csv = compare(back);
    CHECK(from_csv.at("APA").max_abs_dev == doctest::Approx(stats.at("APA").max_abs_dev).epsilon(1e-10));
}

TEST_CASE("comparison corner cases") {
    CsvTable same;
    same.header = {"eps0_MHz", "APA", "ORACLE", "ORACLE_converged"};
    same.rows = {{"1", "0.4", "0.4", "1"}, {"2", "0.3", "0.3", "1"}};
    CHECK(compare(same).at("APA").max_abs_dev == 0.0);
    CHECK(compare(same).at("APA").mean_abs_dev == 0.0);

    CsvTable one;
    one.header = same.header;
    one.rows = {{"1", "0.4", "0.43", "1"}};
    const auto s = compare(one).at("APA");
    CHECK(s.max_abs_dev == s.mean_abs_dev);
    CHECK(s.rows_used == 1);

    CsvTable unconverged = same;
    unconverged.rows[1] = {"2", "0.9", "0.3", "0"};
    CHECK(compare(unconverged).at("APA").rows_used == 1);

    CsvTable none;
    none.header = {"eps0_MHz", "APA"};
    none.rows = {{"1", "0.4"}};
    CHECK_THROWS_AS(compare(none), ValidationError);
}

TEST_CASE("parallel and serial sweeps emit the same bytes") {
    const SweepSpec spec = parse_config(std::string(kSmallSweep));
    const std::string a = to_csv(to_table(run_sweep(spec, 4)));
    const std::string b = to_csv(to_table(run_sweep_serial(spec)));
    const std::string c = to_csv(to_table(run_sweep(spec, 2)));
    CHECK(a == b);
    CHECK(a == c);

    SweepSpec cool;
    cool.model = Model::ThreeLevel;
    cool.axis = Axis::Omega;
    cool.points = {0.5, 5.0};
    cool.methods = {Method::COOL_APA, Method::COOL_NCA};
    validate(cool);
    const SweepResult r = run_sweep(cool);
    CHECK(r.all_ok());
    CHECK(to_csv(to_table(r)) == to_csv(to_table(run_sweep_serial(cool))));
}

TEST_CASE("per-point failures are recorded, not thrown") {
    SweepSpec spec = parse_config(std::string(kMinimal));
    spec.base.gamma2 = {0.0, FreqUnit::MHz};
    spec.base.omega = {90.0, FreqUnit::MHz};
    spec.points = {4950.0, 4900.0};
    spec.methods = {Method::PRWA};
    const SweepResult r = run_sweep(spec);
    REQUIRE(r.rows.size() == 2);
    CHECK_FALSE(r.rows[0].cells[0].ok);
    CHECK_FALSE(r.rows[0].cells[0].error.empty());
    CHECK(r.rows[1].cells[0].ok);
    CHECK_FALSE(r.all_ok());
}

}
