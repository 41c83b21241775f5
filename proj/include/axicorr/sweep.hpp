#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "axicorr/correlations.hpp"
#include "axicorr/thermal.hpp"

namespace axicorr {

struct ConfigParseError : std::runtime_error {
    explicit ConfigParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigValidationError : std::runtime_error {
    explicit ConfigValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownKeyError : std::runtime_error {
    explicit UnknownKeyError(const std::string& key)
        : std::runtime_error("unknown config key \"" + key + "\"") {}
};

enum class GridKind { linear, log };
enum class Measure { lqu, lqfi };

inline const char* to_string(Measure m) { return m == Measure::lqu ? "LQU" : "LQFI"; }

/// Temperature-sweep description. renormalize divides the exchange
/// couplings J and Jz by S before building the Hamiltonian.
struct SweepConfig {
    int s2 = 1;
    ModelParams params;
    double t_min = 0.0, t_max = 0.0;
    int n_points = 2;
    GridKind grid = GridKind::linear;
    bool renormalize = false;

    SpinLength spin() const { return SpinLength(s2); }

    ModelParams effective_params() const {
        ModelParams p = params;
        if (renormalize) {
            const double inv_s = 2.0 / s2;
            p.j *= inv_s;
            p.jz *= inv_s;
        }
        return p;
    }

    std::vector<double> temperatures() const {
        std::vector<double> ts(static_cast<std::size_t>(n_points));
        if (grid == GridKind::linear) {
            const double step = (t_max - t_min) / (n_points - 1);
            for (int i = 0; i < n_points; ++i) ts[i] = t_min + step * i;
        } else {
            const double lstep = (std::log(t_max) - std::log(t_min)) / (n_points - 1);
            for (int i = 0; i < n_points; ++i) ts[i] = std::exp(std::log(t_min) + lstep * i);
        }
        ts.back() = t_max;
        return ts;
    }
};

/// Strict JSON config: exactly the keys below, nothing else.
inline SweepConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigParseError("config root must be a JSON object");

    static const std::vector<std::string> keys = {
        "s2", "b1", "b2", "j", "jz", "k1", "k2", "dz",
        "t_min", "t_max", "n_points", "grid", "renormalize"};
    for (const auto& item : doc.items()) {
        bool known = false;
        for (const auto& k : keys) known |= (item.key() == k);
        if (!known) throw UnknownKeyError(item.key());
    }
    for (const auto& k : keys)
        if (!doc.contains(k)) throw ConfigParseError("missing config key \"" + k + "\"");

    auto number = [&](const std::string& key) -> double {
        const auto& v = doc.at(key);
        if (!v.is_number()) throw ConfigParseError("key \"" + key + "\" must be a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigParseError("key \"" + key + "\" must be finite");
        return x;
    };
    auto integer = [&](const std::string& key) -> int {
        const auto& v = doc.at(key);
        if (!v.is_number_integer()) throw ConfigParseError("key \"" + key + "\" must be an integer");
        return v.get<int>();
    };

    SweepConfig cfg;
    cfg.s2 = integer("s2");
    cfg.params.b1 = number("b1");
    cfg.params.b2 = number("b2");
    cfg.params.j = number("j");
    cfg.params.jz = number("jz");
    cfg.params.k1 = number("k1");
    cfg.params.k2 = number("k2");
    cfg.params.dz = number("dz");
    cfg.t_min = number("t_min");
    cfg.t_max = number("t_max");
    cfg.n_points = integer("n_points");
    if (!doc.at("grid").is_string()) throw ConfigParseError("key \"grid\" must be a string");
    const std::string grid = doc.at("grid").get<std::string>();
    if (grid == "linear") cfg.grid = GridKind::linear;
    else if (grid == "log") cfg.grid = GridKind::log;
    else throw ConfigValidationError("grid must be \"linear\" or \"log\"");
    if (!doc.at("renormalize").is_boolean())
        throw ConfigParseError("key \"renormalize\" must be a boolean");
    cfg.renormalize = doc.at("renormalize").get<bool>();

    if (cfg.s2 < 1) throw ConfigValidationError("s2 must be >= 1");
    if (!(cfg.t_min > 0.0)) throw ConfigValidationError("t_min must be positive");
    if (!(cfg.t_max > cfg.t_min)) throw ConfigValidationError("t_max must exceed t_min");
    if (cfg.n_points < 2) throw ConfigValidationError("n_points must be >= 2");
    return cfg;
}

struct SweepRow {
    double t = 0.0;
    CorrelationResult corr;
    std::string error; // empty on success
};

/// One row per grid temperature, ascending. Per-row failures are recorded
/// in the error field instead of aborting the sweep.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    const auto ham = build_model_hamiltonian(cfg.effective_params(), cfg.spin()).compact;
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(cfg.n_points));
    for (double t : cfg.temperatures()) {
        SweepRow row;
        row.t = t;
        try {
            row.corr = thermal_correlations(ham, t);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Crossing {
    double t = 0.0;
    Branch left = Branch::zero;  // active branch just below the crossing
    Branch right = Branch::one;  // and just above
};

struct Plateau {
    double t_begin = 0.0, t_end = 0.0;
};

struct TransitionReport {
    Measure measure = Measure::lqu;
    std::vector<Crossing> crossings;
    std::vector<Plateau> plateaus; // degenerate tie regions on the grid
};

namespace detail {

inline double branch_difference(const AHamiltonian& ham, double t, Measure measure) {
    const AState rho = gibbs_state(ham, t);
    const SpectralForm sf = gibbs_spectral(ham, t);
    const MeasureResult r = measure == Measure::lqu ? lqu(rho, sf) : lqfi(rho, sf);
    return r.b0 - r.b1;
}

} // namespace detail

/// Scan the sweep grid for sign changes of branch0 - branch1 and refine
/// each bracket by bisection. Runs of grid ties (|diff| < 1e-12) are
/// reported as plateaus, never as crossings. Bisection continues well past
/// the 1e-6 width target so the branch gap at the reported point is below
/// 1e-9 even for shallow intersections.
inline TransitionReport detect_transitions(const SweepConfig& cfg, Measure measure) {
    const auto ham = build_model_hamiltonian(cfg.effective_params(), cfg.spin()).compact;
    const auto ts = cfg.temperatures();
    std::vector<double> diff(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        diff[i] = detail::branch_difference(ham, ts[i], measure);

    TransitionReport report;
    report.measure = measure;

    const auto tie = [&](std::size_t i) { return std::abs(diff[i]) < tie_tol; };

    std::size_t i = 0;
    while (i < ts.size()) {
        if (tie(i)) {
            std::size_t j = i;
            while (j + 1 < ts.size() && tie(j + 1)) ++j;
            report.plateaus.push_back({ts[i], ts[j]});
            i = j + 1;
            continue;
        }
        ++i;
    }

    std::size_t prev = ts.size(); // last non-tie index seen
    for (std::size_t idx = 0; idx < ts.size(); ++idx) {
        if (tie(idx)) {
            prev = ts.size();
            continue; // sign changes across a plateau belong to the plateau
        }
        if (prev != ts.size() && diff[prev] * diff[idx] < 0.0) {
            double lo = ts[prev], hi = ts[idx], flo = diff[prev];
            for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = detail::branch_difference(ham, mid, measure);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (flo * fm < 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            Crossing c;
            c.t = 0.5 * (lo + hi);
            c.left = diff[prev] < 0.0 ? Branch::zero : Branch::one;
            c.right = diff[prev] < 0.0 ? Branch::one : Branch::zero;
            report.crossings.push_back(c);
        }
        prev = idx;
    }
    return report;
}

/// Fixed CSV schema, 17 significant digits, '\n' endings; byte-identical
/// output for identical configs. Failed rows carry the error message in
/// the method column with numeric fields as nan.
inline std::string emit_csv(const std::vector<SweepRow>& rows) {
    std::string out = "T,U0,U1,U,F0,F1,F,active_U,active_F,method\n";
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& row : rows) {
        out += num(row.t);
        if (row.error.empty()) {
            const auto& c = row.corr;
            for (double v : {c.u0, c.u1, c.u, c.f0, c.f1, c.f}) {
                out += ',';
                out += num(v);
            }
            out += ',';
            out += to_string(c.active_u);
            out += ',';
            out += to_string(c.active_f);
            out += ',';
            out += to_string(c.method);
        } else {
            for (int k = 0; k < 6; ++k) out += ",nan";
            out += ",error,error,";
            std::string msg = row.error;
            for (auto& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            out += msg;
        }
        out += '\n';
    }
    return out;
}

} // namespace axicorr
