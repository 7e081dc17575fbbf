#include "pcslab/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "pcslab/csv.hpp"
#include "pcslab/observables.hpp"
#include "pcslab/parallel.hpp"
#include "pcslab/teleport.hpp"

namespace pcslab {

namespace {

constexpr double kPi = std::numbers::pi;
const char* const kQuantityNames[] = {
    "Q1", "Q2", "SumSqueezing", "CrossCorr", "AutoCorrA", "AutoCorrB", "HZ", "DeltaHZ",
    "EPR", "DeltaEPR", "StateFidelity", "AvgFidelityClosed", "AvgFidelityNumeric",
    "SuccessProb", "WignerCut2D", "WignerDiag"};

const std::map<std::string, double>& default_params() {
    static const std::map<std::string, double> defaults = {
        {"gamma_re", 1.0}, {"gamma_im", 0.0}, {"delta", 0.0},   {"coupling", 0.0},
        {"alpha", 0.0},    {"vartheta", 0.0}, {"varpi", 0.0}};
    return defaults;
}

bool is_param_name(const std::string& k) { return default_params().count(k) != 0; }

struct PointParams {
    PcsParams pcs;
    MeasurementConfig cfg;
    double varpi = 0.0;
};

PointParams resolve_point(const std::map<std::string, double>& v) {
    PointParams p;
    p.pcs.gamma = Complex(v.at("gamma_re"), v.at("gamma_im"));
    p.pcs.delta = static_cast<int>(std::llround(v.at("delta")));
    p.cfg.alpha = v.at("alpha");
    p.cfg.vartheta = v.at("vartheta");
    p.cfg.coupling = v.at("coupling");
    p.varpi = v.at("varpi");
    return p;
}

double witness(Quantity q, const MomentSet& m, double varpi) {
    switch (q) {
        case Quantity::Q1: return quadrature_squeezing(m, 1);
        case Quantity::Q2: return quadrature_squeezing(m, 2);
        case Quantity::SumSqueezing: return sum_squeezing(m, varpi);
        case Quantity::CrossCorr: return cross_correlation(m);
        case Quantity::AutoCorrA: return autocorrelation(m, Mode::a);
        case Quantity::AutoCorrB: return autocorrelation(m, Mode::b);
        case Quantity::HZ: return hz_correlation(m);
        case Quantity::EPR: return epr_correlation(m);
        default: break;
    }
    throw std::logic_error("witness: not a moment-based quantity");
}

bool is_moment_quantity(Quantity q) {
    switch (q) {
        case Quantity::Q1:
        case Quantity::Q2:
        case Quantity::SumSqueezing:
        case Quantity::CrossCorr:
        case Quantity::AutoCorrA:
        case Quantity::AutoCorrB:
        case Quantity::HZ:
        case Quantity::EPR:
        case Quantity::DeltaHZ:
        case Quantity::DeltaEPR:
            return true;
        default:
            return false;
    }
}

double sweep_value(const SweepRange& r, int i) {
    const double f = static_cast<double>(i) / (r.count - 1);
    if (r.log_scale) return std::exp(std::log(r.min) + (std::log(r.max) - std::log(r.min)) * f);
    return r.min + (r.max - r.min) * f;
}

// Evaluates one scalar sweep point; returns {value, deviation} where the
// deviation is NaN when no oracle check was requested.
std::pair<double, double> evaluate_point(const SweepSpec& spec, const PointParams& pp) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Quantity q = spec.quantity;
    if (is_moment_quantity(q)) {
        double value;
        if (q == Quantity::DeltaHZ || q == Quantity::DeltaEPR) {
            MomentSet mY = closed_form_moments(pp.pcs, pp.cfg);
            MeasurementConfig init = pp.cfg;
            init.coupling = 0.0;
            MomentSet m0 = closed_form_moments(pp.pcs, init);
            value = q == Quantity::DeltaHZ ? hz_correlation(mY) - hz_correlation(m0)
                                           : epr_correlation(mY) - epr_correlation(m0);
            if (!spec.oracle_check) return {value, nan};
            MomentSet oY = oracle_moments(output_state(pp.pcs, pp.cfg));
            MomentSet o0 = oracle_moments(pcs_state(pp.pcs));
            double ov = q == Quantity::DeltaHZ ? hz_correlation(oY) - hz_correlation(o0)
                                               : epr_correlation(oY) - epr_correlation(o0);
            return {value, std::abs(value - ov)};
        }
        MomentSet m = closed_form_moments(pp.pcs, pp.cfg);
        value = witness(q, m, pp.varpi);
        if (!spec.oracle_check) return {value, nan};
        MomentSet o = oracle_moments(output_state(pp.pcs, pp.cfg));
        return {value, std::abs(value - witness(q, o, pp.varpi))};
    }
    switch (q) {
        case Quantity::StateFidelity: {
            TruncationSpec t;
            t.margin = displacement_margin(0.5 * pp.cfg.coupling);
            return {state_fidelity(pcs_state(pp.pcs, t), output_state(pp.pcs, pp.cfg)), nan};
        }
        case Quantity::AvgFidelityClosed: {
            double value = avg_fidelity_closed(pp.pcs, pp.cfg);
            if (!spec.oracle_check) return {value, nan};
            double numeric = avg_fidelity_numeric(output_state(pp.pcs, pp.cfg));
            return {value, std::abs(value - numeric)};
        }
        case Quantity::AvgFidelityNumeric:
            return {avg_fidelity_numeric(output_state(pp.pcs, pp.cfg)), nan};
        case Quantity::SuccessProb:
            return {success_probability(pp.pcs, pp.cfg), nan};
        default:
            throw std::logic_error("evaluate_point: unhandled quantity");
    }
}

std::string params_comment(const SweepSpec& spec, const std::map<std::string, double>& fixed) {
    std::ostringstream os;
    os << "# params: quantity=" << quantity_name(spec.quantity);
    os << " swept=" << spec.swept.param << " min=" << csv::format_double(spec.swept.min)
       << " max=" << csv::format_double(spec.swept.max) << " count=" << spec.swept.count
       << " scale=" << (spec.swept.log_scale ? "log" : "linear");
    for (const auto& [k, v] : fixed)
        if (k != spec.swept.param) os << ' ' << k << '=' << csv::format_double(v);
    if (spec.quantity == Quantity::WignerCut2D || spec.quantity == Quantity::WignerDiag)
        os << " plane=" << (spec.plane == Plane::ReRe ? "ReRe" : "ImIm");
    os << " oracle_check=" << (spec.oracle_check ? 1 : 0);
    os << " version=" << kVersion;
    return os.str();
}

SweepResult run_wigner_sweep(const SweepSpec& spec, const std::map<std::string, double>& vals,
                             int threads) {
    PointParams pp = resolve_point(vals);
    const double amax = std::max(std::abs(spec.swept.min), std::abs(spec.swept.max));
    TruncationSpec t;
    t.margin = displacement_margin(0.5 * pp.cfg.coupling) + displacement_margin(amax);
    TwoModeState state = output_state(pp.pcs, pp.cfg, t);

    SweepResult res;
    res.params_comment = params_comment(spec, vals);
    AxisRange axis{spec.swept.min, spec.swept.max, spec.swept.count};
    if (spec.quantity == Quantity::WignerDiag) {
        res.columns = {"t", "PJ"};
        auto series = wigner_cut_diag(state, spec.plane, axis, threads);
        for (auto& [tv, pj] : series) res.rows.push_back({tv, pj});
        return res;
    }
    res.columns = {"axis1", "axis2", "PJ"};
    PhaseGrid grid{axis, axis, spec.plane};
    WignerCut cut = wigner_cut_2d(state, grid, threads);
    for (int i = 0; i < axis.count; ++i)
        for (int j = 0; j < axis.count; ++j)
            res.rows.push_back({sweep_value(spec.swept, i), sweep_value(spec.swept, j),
                                cut.values[static_cast<size_t>(i) * axis.count + j]});
    return res;
}

} // namespace

const char* quantity_name(Quantity q) { return kQuantityNames[static_cast<int>(q)]; }

std::optional<Quantity> quantity_from_name(const std::string& name) {
    for (int i = 0; i < 16; ++i)
        if (name == kQuantityNames[i]) return static_cast<Quantity>(i);
    return std::nullopt;
}

bool quantity_supports_oracle(Quantity q) {
    return is_moment_quantity(q) || q == Quantity::AvgFidelityClosed;
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    if (spec.swept.count < 2) throw std::invalid_argument("run_sweep: count must be >= 2");
    if (spec.fixed.count(spec.swept.param))
        throw std::invalid_argument("run_sweep: swept parameter also appears as fixed");
    if (spec.oracle_check && !quantity_supports_oracle(spec.quantity))
        throw std::invalid_argument("run_sweep: oracle_check unsupported for this quantity");
    if (spec.swept.log_scale && !(spec.swept.min > 0.0))
        throw std::invalid_argument("run_sweep: log scale requires min > 0");

    std::map<std::string, double> vals = default_params();
    for (const auto& [k, v] : spec.fixed) {
        if (!is_param_name(k)) throw std::invalid_argument("run_sweep: unknown parameter " + k);
        vals[k] = v;
    }

    const bool wigner =
        spec.quantity == Quantity::WignerCut2D || spec.quantity == Quantity::WignerDiag;
    if (wigner) {
        if (spec.swept.param != "axis")
            throw std::invalid_argument("run_sweep: Wigner quantities sweep the 'axis' range");
        return run_wigner_sweep(spec, vals, threads);
    }
    if (!is_param_name(spec.swept.param))
        throw std::invalid_argument("run_sweep: unknown swept parameter " + spec.swept.param);

    SweepResult res;
    res.params_comment = params_comment(spec, vals);
    res.columns = {spec.swept.param, quantity_name(spec.quantity)};
    if (spec.oracle_check) res.columns.push_back("max_abs_deviation");
    res.rows.assign(spec.swept.count,
                    std::vector<double>(res.columns.size(),
                                        std::numeric_limits<double>::quiet_NaN()));

    std::vector<std::string> point_errors(spec.swept.count);
    parallel_for(spec.swept.count, threads, [&](int i) {
        std::map<std::string, double> pv = vals;
        const double x = sweep_value(spec.swept, i);
        pv[spec.swept.param] = x;
        res.rows[i][0] = x;
        try {
            auto [value, dev] = evaluate_point(spec, resolve_point(pv));
            res.rows[i][1] = value;
            if (spec.oracle_check) res.rows[i][2] = dev;
        } catch (const std::exception& e) {
            point_errors[i] = e.what();
        }
    });
    for (int i = 0; i < spec.swept.count; ++i) {
        if (!point_errors[i].empty()) {
            ++res.warnings;
            std::cerr << "warning: point " << spec.swept.param << "="
                      << csv::format_double(res.rows[i][0]) << ": " << point_errors[i] << "\n";
        }
    }
    return res;
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    csv::write_file(path, result.params_comment, result.columns, result.rows);
}

std::string sweep_output_stem(const SweepSpec& spec) {
    if (!spec.label.empty()) return spec.label;
    return std::string("sweep_") + quantity_name(spec.quantity) + "_" + spec.swept.param;
}

namespace {

struct KeyRule {
    const char* key;
    const char* meaning;
};

const KeyRule kKnownKeys[] = {
    {"quantity", "quantity to evaluate"},
    {"sweep", "name of the swept parameter"},
    {"min", "sweep range minimum"},
    {"max", "sweep range maximum"},
    {"count", "number of sweep points"},
    {"scale", "linear|log"},
    {"oracle_check", "0|1 closed-form vs oracle deviation column"},
    {"plane", "ReRe|ImIm (Wigner quantities)"},
    {"label", "output filename stem"},
    {"gamma_re", "Re gamma"},
    {"gamma_im", "Im gamma"},
    {"delta", "photon number difference (integer >= 0)"},
    {"coupling", "measurement strength Gamma >= 0"},
    {"alpha", "preselection angle in [0, pi)"},
    {"vartheta", "preselection phase in [0, 2*pi)"},
    {"varpi", "sum-squeezing phase"},
};

bool known_key(const std::string& k) {
    for (const auto& r : kKnownKeys)
        if (k == r.key) return true;
    return false;
}

bool parse_double(const std::string& s, double& out) {
    try {
        size_t pos = 0;
        out = std::stod(s, &pos);
        return pos == s.size() && std::isfinite(out);
    } catch (...) {
        return false;
    }
}

} // namespace

ValidationReport validate_sweep_config(const ParsedConfig& cfg) {
    ValidationReport rep;
    SweepSpec spec;
    spec.swept = {"gamma_re", 0.1, 1.0, 50, false};
    std::map<std::string, double> fixed;
    bool saw_quantity = false;

    for (const auto& e : cfg.entries) {
        if (e.key == "weak_value") {
            rep.violations.push_back(
                "line " + std::to_string(e.line) +
                ": weak values are derived, never set; specify the preselection angle "
                "'alpha' instead (A = e^{i vartheta} tan(alpha/2))");
            continue;
        }
        if (!known_key(e.key)) {
            rep.violations.push_back("line " + std::to_string(e.line) + ": unknown key '" +
                                     e.key + "'");
            continue;
        }
        if (e.key == "quantity") {
            auto q = quantity_from_name(e.value);
            if (!q)
                rep.violations.push_back("line " + std::to_string(e.line) +
                                         ": unknown quantity '" + e.value + "'");
            else {
                spec.quantity = *q;
                saw_quantity = true;
            }
        } else if (e.key == "sweep") {
            spec.swept.param = e.value;
        } else if (e.key == "scale") {
            if (e.value == "log")
                spec.swept.log_scale = true;
            else if (e.value == "linear")
                spec.swept.log_scale = false;
            else
                rep.violations.push_back("line " + std::to_string(e.line) +
                                         ": scale must be linear or log");
        } else if (e.key == "plane") {
            if (e.value == "ReRe")
                spec.plane = Plane::ReRe;
            else if (e.value == "ImIm")
                spec.plane = Plane::ImIm;
            else
                rep.violations.push_back("line " + std::to_string(e.line) +
                                         ": plane must be ReRe or ImIm");
        } else if (e.key == "label") {
            spec.label = e.value;
        } else if (e.key == "oracle_check") {
            if (e.value == "1" || e.value == "true")
                spec.oracle_check = true;
            else if (e.value == "0" || e.value == "false")
                spec.oracle_check = false;
            else
                rep.violations.push_back("line " + std::to_string(e.line) +
                                         ": oracle_check must be 0/1/true/false");
        } else {
            double v;
            if (!parse_double(e.value, v)) {
                rep.violations.push_back("line " + std::to_string(e.line) + ": key '" + e.key +
                                         "' needs a finite number, got '" + e.value + "'");
                continue;
            }
            if (e.key == "min")
                spec.swept.min = v;
            else if (e.key == "max")
                spec.swept.max = v;
            else if (e.key == "count")
                spec.swept.count = static_cast<int>(std::llround(v));
            else
                fixed[e.key] = v;
        }
    }

    // range rules (measurement/twomode invariants)
    auto check_range = [&](const char* key, double lo, double hi, bool hi_open,
                           const char* what) {
        auto it = fixed.find(key);
        if (it == fixed.end()) return;
        bool bad = it->second < lo || (hi_open ? it->second >= hi : it->second > hi);
        if (bad)
            rep.violations.push_back(std::string("key '") + key + "' violates " + what);
    };
    check_range("alpha", 0.0, kPi, true, "the measurement invariant alpha in [0, pi)");
    check_range("vartheta", 0.0, 2.0 * kPi, true,
                "the measurement invariant vartheta in [0, 2*pi)");
    check_range("coupling", 0.0, std::numeric_limits<double>::infinity(), false,
                "the measurement invariant coupling >= 0");
    if (fixed.count("delta") &&
        (fixed["delta"] < 0.0 || fixed["delta"] != std::floor(fixed["delta"])))
        rep.violations.push_back("key 'delta' must be a non-negative integer");

    if (!saw_quantity && cfg.entries.empty()) {
        // an empty file is a valid request for the defaults report
    }
    if (spec.swept.count < 2) rep.violations.push_back("count must be >= 2");
    if (!(spec.swept.min < spec.swept.max)) rep.violations.push_back("min must be < max");
    if (spec.swept.log_scale && !(spec.swept.min > 0.0))
        rep.violations.push_back("log scale requires min > 0");
    if (fixed.count(spec.swept.param))
        rep.violations.push_back("swept parameter '" + spec.swept.param +
                                 "' also appears as a fixed key");
    const bool wigner =
        spec.quantity == Quantity::WignerCut2D || spec.quantity == Quantity::WignerDiag;
    if (wigner) {
        if (spec.swept.param != "axis")
            rep.violations.push_back("Wigner quantities sweep the 'axis' range (sweep=axis)");
    } else if (!is_param_name(spec.swept.param)) {
        rep.violations.push_back("unknown swept parameter '" + spec.swept.param + "'");
    }
    if (spec.oracle_check && !quantity_supports_oracle(spec.quantity))
        rep.violations.push_back(std::string("oracle_check is unsupported for quantity ") +
                                 quantity_name(spec.quantity));

    spec.fixed = fixed;
    std::map<std::string, double> resolved = default_params();
    for (const auto& [k, v] : fixed) resolved[k] = v;
    rep.resolved.push_back(std::string("quantity=") + quantity_name(spec.quantity));
    rep.resolved.push_back("sweep=" + spec.swept.param);
    rep.resolved.push_back("min=" + csv::format_double(spec.swept.min));
    rep.resolved.push_back("max=" + csv::format_double(spec.swept.max));
    rep.resolved.push_back("count=" + std::to_string(spec.swept.count));
    rep.resolved.push_back(std::string("scale=") + (spec.swept.log_scale ? "log" : "linear"));
    rep.resolved.push_back(std::string("oracle_check=") + (spec.oracle_check ? "1" : "0"));
    for (const auto& [k, v] : resolved)
        rep.resolved.push_back(k + "=" + csv::format_double(v));
    rep.ok = rep.violations.empty();
    return rep;
}

SweepSpec sweep_spec_from_config(const ParsedConfig& cfg) {
    ValidationReport rep = validate_sweep_config(cfg);
    if (!rep.ok) {
        std::string msg = "invalid sweep config:";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }
    // re-walk entries to build the spec (validate already proved them sound)
    SweepSpec spec;
    spec.swept = {"gamma_re", 0.1, 1.0, 50, false};
    for (const auto& e : cfg.entries) {
        if (e.key == "quantity") spec.quantity = *quantity_from_name(e.value);
        else if (e.key == "sweep") spec.swept.param = e.value;
        else if (e.key == "scale") spec.swept.log_scale = e.value == "log";
        else if (e.key == "plane") spec.plane = e.value == "ImIm" ? Plane::ImIm : Plane::ReRe;
        else if (e.key == "label") spec.label = e.value;
        else if (e.key == "oracle_check") spec.oracle_check = e.value == "1" || e.value == "true";
        else {
            double v = 0.0;
            parse_double(e.value, v);
            if (e.key == "min") spec.swept.min = v;
            else if (e.key == "max") spec.swept.max = v;
            else if (e.key == "count") spec.swept.count = static_cast<int>(std::llround(v));
            else spec.fixed[e.key] = v;
        }
    }
    return spec;
}

SelftestResult run_selftest(int draws, int threads) {
    // Fixed-seed draws over the oracle-equivalence domain:
    // |gamma| in [0.1, 3], arg gamma in [0, 2pi), delta in {0..3},
    // coupling in [0, 1.5], alpha in [0, 0.95 pi).
    std::mt19937_64 rng(20250809u);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    struct Draw {
        PcsParams pcs;
        MeasurementConfig cfg;
    };
    std::vector<Draw> ds(draws);
    for (auto& d : ds) {
        const double mag = 0.1 + 2.9 * u01(rng);
        const double ph = 2.0 * kPi * u01(rng);
        d.pcs.gamma = std::polar(mag, ph);
        d.pcs.delta = static_cast<int>(u01(rng) * 4.0);
        d.cfg.coupling = 1.5 * u01(rng);
        d.cfg.alpha = 0.95 * kPi * u01(rng);
    }

    SelftestResult out;
    out.table.params_comment = std::string("# params: suite=oracle-equivalence draws=") +
                               std::to_string(draws) + " seed=20250809 tail_prob=1e-14" +
                               " version=" + kVersion;
    out.table.columns = {"draw",      "kind",      "closed_re", "closed_im",
                         "oracle_re", "oracle_im", "rel_dev"};
    out.table.rows.assign(static_cast<size_t>(draws) * kMomentKindCount,
                          std::vector<double>(7, 0.0));

    parallel_for(draws, threads, [&](int i) {
        const Draw& d = ds[i];
        TruncationSpec t;
        t.tail_prob = 1e-14;
        t.margin = displacement_margin(0.5 * d.cfg.coupling);
        TwoModeState psi = output_state(d.pcs, d.cfg, t);
        MomentSet closed = closed_form_moments(d.pcs, d.cfg);
        MomentSet oracle = oracle_moments(psi);
        for (int k = 0; k < kMomentKindCount; ++k) {
            MomentKind kind = kAllMomentKinds[k];
            const Complex c = closed[kind], o = oracle[kind];
            const double dev = std::abs(c - o) / std::max(std::abs(o), 1e-6);
            out.table.rows[static_cast<size_t>(i) * kMomentKindCount + k] = {
                static_cast<double>(i), static_cast<double>(k), c.real(), c.imag(),
                o.real(),               o.imag(),               dev};
        }
    });
    for (const auto& row : out.table.rows)
        out.max_rel_deviation = std::max(out.max_rel_deviation, row[6]);
    out.pass = out.max_rel_deviation < 1e-8;
    return out;
}

} // namespace pcslab
