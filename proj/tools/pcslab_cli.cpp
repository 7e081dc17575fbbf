// Command-line front end: figure presets, free-form sweeps, config validation,
// and the closed-form-vs-oracle selftest. All outputs are deterministic CSV.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "pcslab/csv.hpp"
#include "pcslab/sweep.hpp"

using namespace pcslab;

namespace {

int cmd_figure(const std::string& id, const std::string& out_dir, int threads) {
    const FigurePreset* preset = find_figure_preset(id);
    if (!preset) {
        std::cerr << "error: unknown figure id '" << id << "'. Known ids:";
        for (const auto& p : figure_presets()) std::cerr << ' ' << p.id;
        std::cerr << "\n";
        return 1;
    }
    FigureRun run = run_figure(*preset, out_dir, threads);
    for (const auto& f : run.files) std::cout << "wrote " << f << "\n";
    if (run.warnings > 0) {
        std::cerr << "warning: " << run.warnings << " point(s) failed and were written as NaN\n";
        return 2;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int threads) {
    ParsedConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    SweepSpec spec;
    try {
        spec = sweep_spec_from_config(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::filesystem::create_directories(out_dir);
    SweepResult res = run_sweep(spec, threads);
    const std::string path = out_dir + "/" + sweep_output_stem(spec) + ".csv";
    write_sweep_csv(res, path);
    std::cout << "wrote " << path << "\n";
    if (res.warnings > 0) {
        std::cerr << "warning: " << res.warnings << " point(s) failed and were written as NaN\n";
        return 2;
    }
    return 0;
}

int cmd_validate(const std::string& config_path) {
    ParsedConfig cfg;
    try {
        cfg = parse_config_file(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    ValidationReport rep = validate_sweep_config(cfg);
    std::cout << "resolved configuration:\n";
    for (const auto& line : rep.resolved) std::cout << "  " << line << "\n";
    if (!rep.violations.empty()) {
        std::cout << "violations:\n";
        for (const auto& v : rep.violations) std::cout << "  " << v << "\n";
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int cmd_selftest(const std::string& out_dir, int draws, int threads) {
    SelftestResult res = run_selftest(draws, threads);
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/selftest.csv";
    write_sweep_csv(res.table, path);
    std::cout << "wrote " << path << "\n";
    std::cout << "max relative deviation over " << draws << " draws x 12 moments: "
              << csv::format_double(res.max_rel_deviation) << "\n";
    std::cout << (res.pass ? "PASS" : "FAIL") << " (gate 1e-8)\n";
    return res.pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pair-coherent-state measurement laboratory"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware)")
        ->capture_default_str();

    std::string fig_id, out_dir = ".", config_path;
    auto* fig = app.add_subcommand("figure", "emit the CSV set of a figure preset");
    fig->add_option("id", fig_id, "preset id, e.g. fig3a")->required();
    fig->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "run a sweep described by a config file");
    sweep->add_option("--config", config_path, "key=value config file")->required();
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "check a config file without computing");
    validate->add_option("--config", config_path, "key=value config file")->required();

    int draws = 50;
    auto* selftest = app.add_subcommand("selftest", "closed-form vs oracle equivalence suite");
    selftest->add_option("--out", out_dir, "output directory")->capture_default_str();
    selftest->add_option("--draws", draws, "number of random draws")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (fig->parsed()) return cmd_figure(fig_id, out_dir, threads);
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir, threads);
        if (validate->parsed()) return cmd_validate(config_path);
        if (selftest->parsed()) return cmd_selftest(out_dir, draws, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
