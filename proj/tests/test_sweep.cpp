#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pcslab/csv.hpp"
#include "pcslab/sweep.hpp"

using namespace pcslab;

namespace {

constexpr double kPi = std::numbers::pi;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SweepSpec small_q2_spec() {
    SweepSpec s;
    s.quantity = Quantity::Q2;
    s.fixed = {{"delta", 0}, {"coupling", 0.3}, {"alpha", 8 * kPi / 9}};
    s.swept = {"gamma_re", 0.5, 3.0, 6, false};
    s.oracle_check = true;
    return s;
}

} // namespace

TEST_CASE("run_sweep determinism across runs and thread counts") {
    SweepSpec s = small_q2_spec();
    SweepResult a = run_sweep(s, 1);
    SweepResult b = run_sweep(s, 4);
    SweepResult c = run_sweep(s, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t i = 0; i < a.rows.size(); ++i)
        for (size_t j = 0; j < a.rows[i].size(); ++j) {
            CHECK(csv::format_double(a.rows[i][j]) == csv::format_double(b.rows[i][j]));
            CHECK(csv::format_double(b.rows[i][j]) == csv::format_double(c.rows[i][j]));
        }
    // oracle deviation column well under the gate
    for (auto& row : a.rows) CHECK(row[2] < 1e-6);
    CHECK(a.warnings == 0);
}

TEST_CASE("run_sweep rejects invalid specs") {
    SweepSpec s = small_q2_spec();
    s.fixed["gamma_re"] = 1.0; // swept parameter also fixed
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
    s = small_q2_spec();
    s.swept.count = 1;
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
    s = small_q2_spec();
    s.quantity = Quantity::SuccessProb; // no oracle pairing
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
    s = small_q2_spec();
    s.swept = {"gamma_re", -1.0, 1.0, 4, true}; // log needs min > 0
    CHECK_THROWS_AS(run_sweep(s), std::invalid_argument);
}

TEST_CASE("numerical failures become NaN rows with warnings") {
    SweepSpec s;
    s.quantity = Quantity::CrossCorr;
    s.fixed = {{"gamma_re", 0.0}, {"delta", 0}}; // zero mean photon number
    s.swept = {"alpha", 0.0, 1.0, 3, false};
    SweepResult r = run_sweep(s);
    CHECK(r.warnings == 3);
    for (auto& row : r.rows) CHECK(std::isnan(row[1]));
}

TEST_CASE("log scale sweep values") {
    SweepSpec s;
    s.quantity = Quantity::Q2;
    s.fixed = {{"delta", 0}};
    s.swept = {"gamma_re", 0.1, 10.0, 3, true};
    SweepResult r = run_sweep(s);
    CHECK(r.rows[0][0] == doctest::Approx(0.1));
    CHECK(r.rows[1][0] == doctest::Approx(1.0));
    CHECK(r.rows[2][0] == doctest::Approx(10.0));
    // Gamma=0 asymptote from the spec example: values approach -0.125
    SweepSpec s2;
    s2.quantity = Quantity::Q2;
    s2.fixed = {{"delta", 0}, {"coupling", 0.0}, {"vartheta", 0.0}};
    s2.swept = {"gamma_re", 0.1, 30.0, 50, true};
    SweepResult r2 = run_sweep(s2);
    CHECK(r2.rows.back()[1] == doctest::Approx(-0.125).epsilon(0.02));
}

TEST_CASE("selftest determinism and gate") {
    SelftestResult a = run_selftest(6, 1);
    SelftestResult b = run_selftest(6, 4);
    CHECK(a.pass);
    CHECK(a.max_rel_deviation < 1e-8);
    REQUIRE(a.table.rows.size() == b.table.rows.size());
    for (size_t i = 0; i < a.table.rows.size(); ++i)
        for (size_t j = 0; j < a.table.rows[i].size(); ++j)
            CHECK(csv::format_double(a.table.rows[i][j]) ==
                  csv::format_double(b.table.rows[i][j]));
}

TEST_CASE("config validation") {
    // empty file: defaults report, ok
    ValidationReport rep = validate_sweep_config(parse_config_text(""));
    CHECK(rep.ok);
    CHECK(!rep.resolved.empty());

    // alpha out of range names the measurement invariant
    rep = validate_sweep_config(parse_config_text("quantity=Q2\nsweep=gamma_re\nalpha=3.2\n"));
    CHECK(!rep.ok);
    bool found = false;
    for (auto& v : rep.violations)
        if (v.find("alpha") != std::string::npos && v.find("[0, pi)") != std::string::npos)
            found = true;
    CHECK(found);

    // weak_value key is rejected with a pointer to alpha
    rep = validate_sweep_config(parse_config_text("weak_value=5.761\n"));
    CHECK(!rep.ok);
    found = false;
    for (auto& v : rep.violations)
        if (v.find("alpha") != std::string::npos) found = true;
    CHECK(found);

    // unknown keys are reported
    rep = validate_sweep_config(parse_config_text("quantum=Q2\n"));
    CHECK(!rep.ok);

    // parse errors carry line/column
    CHECK_THROWS_AS(parse_config_text("quantity Q2\n"), ConfigError);
    try {
        parse_config_text("quantity=Q2\nbroken line\n");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
    }

    // a sound config builds a runnable spec
    SweepSpec s = sweep_spec_from_config(parse_config_text(
        "quantity=SumSqueezing\nsweep=gamma_re\nmin=0.1\nmax=2\ncount=5\n"
        "coupling=1\nalpha=2.7925268031909273\noracle_check=1\n"));
    CHECK(s.quantity == Quantity::SumSqueezing);
    SweepResult r = run_sweep(s);
    CHECK(r.warnings == 0);
    CHECK(r.rows.size() == 5);
}

TEST_CASE("figure presets and CSV output") {
    CHECK(find_figure_preset("fig3a") != nullptr);
    CHECK(find_figure_preset("nope") == nullptr);
    CHECK(figure_presets().size() == 19);

    auto dir = std::filesystem::temp_directory_path() / "pcslab_test_fig";
    std::filesystem::remove_all(dir);
    FigureRun run = run_figure(*find_figure_preset("fig13"), dir.string());
    CHECK(run.warnings == 0);
    CHECK(run.files.size() == 4);
    std::string text = slurp(run.files[0]);
    CHECK(text.rfind("# params: quantity=SuccessProb", 0) == 0);
    CHECK(text.find("\r") == std::string::npos); // LF endings only
    // byte-identical re-run
    FigureRun run2 = run_figure(*find_figure_preset("fig13"), (dir / "again").string());
    CHECK(slurp(run.files[0]) == slurp(run2.files[0]));
    std::filesystem::remove_all(dir);
}

TEST_CASE("all shipped presets are statically sound") {
    for (const auto& p : figure_presets()) {
        CHECK(!p.curves.empty());
        for (const auto& c : p.curves) {
            CHECK(c.spec.swept.count >= 2);
            CHECK(c.spec.fixed.count(c.spec.swept.param) == 0);
            if (c.spec.oracle_check) CHECK(quantity_supports_oracle(c.spec.quantity));
            CHECK(c.spec.swept.min < c.spec.swept.max);
        }
    }
}

TEST_CASE("preset oracle deviation stays under the reporting gate") {
    const FigurePreset* fig = find_figure_preset("fig3a");
    REQUIRE(fig != nullptr);
    const SweepSpec& curve = fig->curves[1].spec; // coupling 0.3
    REQUIRE(curve.oracle_check);
    SweepResult r = run_sweep(curve);
    CHECK(r.warnings == 0);
    double worst = 0.0;
    for (auto& row : r.rows) worst = std::max(worst, row[2]);
    CHECK(worst < 1e-6);
}

TEST_CASE("wigner sweep output shape") {
    SweepSpec s;
    s.quantity = Quantity::WignerDiag;
    s.fixed = {{"gamma_re", 0.5}, {"delta", 2}};
    s.swept = {"axis", -1.0, 1.0, 9, false};
    s.plane = Plane::ReRe;
    SweepResult r = run_sweep(s);
    CHECK(r.columns.size() == 2);
    CHECK(r.rows.size() == 9);
    for (auto& row : r.rows) {
        CHECK(row[1] >= -1.0);
        CHECK(row[1] <= 1.0);
    }
}
