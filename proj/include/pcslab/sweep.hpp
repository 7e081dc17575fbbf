#ifndef PCSLAB_SWEEP_HPP
#define PCSLAB_SWEEP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcslab/config.hpp"
#include "pcslab/wigner.hpp"

namespace pcslab {

inline constexpr const char* kVersion = "0.1.0";

enum class Quantity {
    Q1, Q2, SumSqueezing, CrossCorr, AutoCorrA, AutoCorrB, HZ, DeltaHZ, EPR, DeltaEPR,
    StateFidelity, AvgFidelityClosed, AvgFidelityNumeric, SuccessProb, WignerCut2D, WignerDiag
};

const char* quantity_name(Quantity q);
std::optional<Quantity> quantity_from_name(const std::string& name);

/// True for quantities whose closed-form value pairs with the grid oracle
/// (eligible for the max_abs_deviation column).
bool quantity_supports_oracle(Quantity q);

struct SweepRange {
    std::string param; // one of the fixed-parameter names, or "axis" for Wigner
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_scale = false;
};

/// Declarative description of one parameter sweep producing one CSV.
struct SweepSpec {
    Quantity quantity = Quantity::Q2;
    std::map<std::string, double> fixed; // gamma_re, gamma_im, delta, coupling, alpha, vartheta, varpi
    SweepRange swept;
    bool oracle_check = false;
    Plane plane = Plane::ReRe; // Wigner quantities only
    std::string label;         // optional output-name stem override
};

struct SweepResult {
    std::string params_comment;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    int warnings = 0;
};

SweepResult run_sweep(const SweepSpec& spec, int threads = 0);
void write_sweep_csv(const SweepResult& result, const std::string& path);

/// Default stem used for the CSV filename when SweepSpec::label is empty.
std::string sweep_output_stem(const SweepSpec& spec);

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
    std::vector<std::string> resolved; // fully resolved key=value lines
};

/// Checks a parsed config without computing anything.
ValidationReport validate_sweep_config(const ParsedConfig& cfg);

/// Builds a runnable spec; throws std::invalid_argument on any violation.
SweepSpec sweep_spec_from_config(const ParsedConfig& cfg);

/// Oracle-equivalence suite: random parameter draws (fixed seed), all twelve
/// moments, closed form vs grid oracle.
struct SelftestResult {
    SweepResult table;
    double max_rel_deviation = 0.0;
    bool pass = false;
};
SelftestResult run_selftest(int draws = 50, int threads = 0);

/// One curve (one CSV) of a figure preset.
struct CurveSpec {
    std::string label;
    SweepSpec spec;
};

struct FigurePreset {
    std::string id;
    std::string note;
    std::vector<CurveSpec> curves;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset* find_figure_preset(const std::string& id);

/// Runs every curve of the preset; returns the written file paths.
/// Any point-level numerical warning is reflected in `warnings`.
struct FigureRun {
    std::vector<std::string> files;
    int warnings = 0;
};
FigureRun run_figure(const FigurePreset& preset, const std::string& out_dir, int threads = 0);

} // namespace pcslab

#endif
