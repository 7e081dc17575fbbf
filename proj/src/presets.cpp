#include "pcslab/sweep.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

namespace pcslab {

namespace {

constexpr double kPi = std::numbers::pi;
const double kAlphaAnomalous = 8.0 * kPi / 9.0; // weak value tan(4pi/9) = 5.671

std::string num_label(const char* stem, double v) {
    std::ostringstream os;
    os << stem << v;
    std::string s = os.str();
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

SweepSpec gamma_sweep(Quantity q, double gmax, int count, std::map<std::string, double> fixed,
                      bool oracle) {
    SweepSpec s;
    s.quantity = q;
    s.fixed = std::move(fixed);
    s.swept = {"gamma_re", 0.05, gmax, count, false};
    s.oracle_check = oracle;
    return s;
}

SweepSpec alpha_sweep(Quantity q, int count, std::map<std::string, double> fixed, bool oracle) {
    SweepSpec s;
    s.quantity = q;
    s.fixed = std::move(fixed);
    s.swept = {"alpha", 0.0, 0.95 * kPi, count, false};
    s.oracle_check = oracle;
    return s;
}

void add_coupling_family(FigurePreset& fig, const SweepSpec& base,
                         std::initializer_list<double> couplings) {
    for (double g : couplings) {
        SweepSpec s = base;
        s.fixed["coupling"] = g;
        fig.curves.push_back({num_label("coupling", g), s});
    }
}

void add_delta_family(FigurePreset& fig, const SweepSpec& base,
                      std::initializer_list<int> deltas) {
    for (int d : deltas) {
        SweepSpec s = base;
        s.fixed["delta"] = d;
        fig.curves.push_back({num_label("delta", d), s});
    }
}

SweepSpec wigner_spec(Quantity q, Plane plane, std::map<std::string, double> fixed, double amax,
                      int count) {
    SweepSpec s;
    s.quantity = q;
    s.fixed = std::move(fixed);
    s.swept = {"axis", -amax, amax, count, false};
    s.plane = plane;
    return s;
}

std::vector<FigurePreset> build_presets() {
    std::vector<FigurePreset> ps;
    const std::map<std::string, double> anom = {{"delta", 0}, {"alpha", kAlphaAnomalous}};

    {
        FigurePreset f{"fig2", "quadrature squeezing Q1 vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::Q1, 20.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig3a", "quadrature squeezing Q2 vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::Q2, 20.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig3b", "Q2 vs preselection angle at gamma=10", {}};
        add_coupling_family(
            f, alpha_sweep(Quantity::Q2, 120, {{"gamma_re", 10.0}, {"delta", 0}}, true),
            {0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig4a", "sum squeezing vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::SumSqueezing, 4.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig4b", "sum squeezing vs preselection angle at gamma=0.5", {}};
        add_coupling_family(
            f,
            alpha_sweep(Quantity::SumSqueezing, 120, {{"gamma_re", 0.5}, {"delta", 0}}, true),
            {0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig5", "cross-correlation vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::CrossCorr, 10.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig7a", "mode-a autocorrelation vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::AutoCorrA, 10.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig7b", "mode-b autocorrelation vs gamma", {}};
        add_coupling_family(f, gamma_sweep(Quantity::AutoCorrB, 10.0, 160, anom, true),
                            {0.0, 0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig7-1a", "HZ enhancement vs gamma", {}};
        add_delta_family(f,
                         gamma_sweep(Quantity::DeltaHZ, 5.0, 160,
                                     {{"coupling", 0.3}, {"alpha", kAlphaAnomalous}}, true),
                         {0, 1, 2, 3});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig7-1b", "HZ enhancement vs preselection angle at gamma=1.5", {}};
        add_delta_family(
            f, alpha_sweep(Quantity::DeltaHZ, 120, {{"gamma_re", 1.5}, {"coupling", 0.3}}, true),
            {0, 1, 2, 3});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig8a", "EPR enhancement vs gamma", {}};
        add_delta_family(f,
                         gamma_sweep(Quantity::DeltaEPR, 5.0, 160,
                                     {{"coupling", 0.3}, {"alpha", kAlphaAnomalous}}, true),
                         {0, 1, 2, 3});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig8b", "EPR enhancement vs preselection angle at gamma=1.5", {}};
        add_delta_family(
            f,
            alpha_sweep(Quantity::DeltaEPR, 120, {{"gamma_re", 1.5}, {"coupling", 0.3}}, true),
            {0, 1, 2, 3});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig10", "joint Wigner cuts of the initial state, gamma=0.5", {}};
        for (int d : {0, 2}) {
            for (Plane pl : {Plane::ReRe, Plane::ImIm}) {
                auto s = wigner_spec(Quantity::WignerCut2D, pl,
                                     {{"gamma_re", 0.5}, {"delta", d}}, 3.0, 81);
                f.curves.push_back(
                    {num_label("delta", d) + (pl == Plane::ReRe ? "_ReRe" : "_ImIm"), s});
            }
        }
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig11-1", "joint Wigner cuts of the measured state", {}};
        const std::map<std::string, double> fx = {{"gamma_re", 0.5},
                                                  {"delta", 2},
                                                  {"coupling", 0.3},
                                                  {"alpha", kAlphaAnomalous}};
        f.curves.push_back({"ReRe", wigner_spec(Quantity::WignerCut2D, Plane::ReRe, fx, 3.0, 81)});
        f.curves.push_back({"ImIm", wigner_spec(Quantity::WignerCut2D, Plane::ImIm, fx, 3.0, 81)});
        f.curves.push_back(
            {"diag_ReRe", wigner_spec(Quantity::WignerDiag, Plane::ReRe, fx, 3.0, 201)});
        f.curves.push_back(
            {"diag_ImIm", wigner_spec(Quantity::WignerDiag, Plane::ImIm, fx, 3.0, 201)});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig11", "state distance between initial and measured states", {}};
        add_coupling_family(f, gamma_sweep(Quantity::StateFidelity, 10.0, 160, anom, false),
                            {0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    auto teleport_fig = [&](const char* id, int delta) {
        FigurePreset f{id, "average teleportation fidelity vs gamma", {}};
        {
            SweepSpec s = gamma_sweep(Quantity::AvgFidelityClosed, 5.0, 100,
                                      {{"delta", delta}, {"coupling", 0.0}}, false);
            f.curves.push_back({"initial", s});
        }
        for (double al : {0.0, 0.5 * kPi, kAlphaAnomalous}) {
            SweepSpec s = gamma_sweep(Quantity::AvgFidelityClosed, 5.0, 100,
                                      {{"delta", delta}, {"coupling", 1.0}, {"alpha", al}},
                                      false);
            f.curves.push_back({num_label("alpha", al), s});
        }
        ps.push_back(f);
    };
    teleport_fig("fig12a", 0);
    teleport_fig("fig12b", 1);
    {
        FigurePreset f{"fig12c", "average teleportation fidelity vs angle at gamma=3", {}};
        add_coupling_family(f,
                            alpha_sweep(Quantity::AvgFidelityClosed, 100,
                                        {{"gamma_re", 3.0}, {"delta", 0}}, false),
                            {0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    {
        FigurePreset f{"fig13", "postselection success probability vs angle at gamma=2", {}};
        add_coupling_family(f,
                            alpha_sweep(Quantity::SuccessProb, 120,
                                        {{"gamma_re", 2.0}, {"delta", 0}}, false),
                            {0.3, 0.5, 0.7, 1.0});
        ps.push_back(f);
    }
    return ps;
}

} // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = build_presets();
    return presets;
}

const FigurePreset* find_figure_preset(const std::string& id) {
    for (const auto& p : figure_presets())
        if (p.id == id) return &p;
    return nullptr;
}

FigureRun run_figure(const FigurePreset& preset, const std::string& out_dir, int threads) {
    std::filesystem::create_directories(out_dir);
    FigureRun run;
    for (const auto& curve : preset.curves) {
        SweepResult res = run_sweep(curve.spec, threads);
        run.warnings += res.warnings;
        std::string path = out_dir + "/" + preset.id + "_" + curve.label + ".csv";
        write_sweep_csv(res, path);
        run.files.push_back(path);
    }
    return run;
}

} // namespace pcslab
