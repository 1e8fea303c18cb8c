#pragma once

#include <json.hpp>

#include "config.hpp"
#include "verify.hpp"
#include "version.hpp"

namespace openxxz {

using json = nlohmann::ordered_json;

struct SpectrumRecord {
    std::string label;
    std::string source;  // diagonalization | tq | bethe | derivative
    std::vector<Complex> values;
};

struct LevelRecord {
    int level = -1;
    std::string bc;
    std::vector<Complex> roots1, roots2;
    double bae_residual = 0.0;
    double tq_residual = 0.0;
    bool flagged = false;
    std::string diagnostic;
    std::vector<EnergyRecord> energies;
};

struct ResultBundle {
    json config_echo;
    std::vector<CheckResult> checks;
    std::vector<SpectrumRecord> spectra;
    std::vector<LevelRecord> levels;
    std::vector<std::pair<std::string, double>> timings;

    bool all_checks_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    bool any_flagged() const {
        for (const auto& l : levels)
            if (l.flagged) return true;
        return false;
    }
};

inline json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json config_echo_json(const RunConfig& cfg) {
    json j;
    j["command"] = cfg.command;
    j["s2"] = cfg.params.two_s;
    j["N"] = cfg.params.sites;
    j["p"] = cfg.params.p;
    j["alpha_minus"] = format_complex(cfg.params.alpha_minus);
    j["alpha_plus"] = format_complex(cfg.params.alpha_plus);
    j["beta_minus"] = format_complex(cfg.params.beta_minus);
    j["beta_plus"] = format_complex(cfg.params.beta_plus);
    j["theta_minus"] = format_complex(cfg.params.theta_minus);
    j["theta_plus"] = format_complex(cfg.params.theta_plus);
    if (cfg.bc) j["case"] = to_string(*cfg.bc);
    j["seed"] = cfg.seed;
    if (!cfg.table.empty()) j["table"] = cfg.table;
    if (!cfg.tolerances.empty()) {
        json t;
        for (const auto& [k, v] : cfg.tolerances) t[k] = v;
        j["tolerances"] = t;
    }
    return j;
}

inline json to_json(const ResultBundle& b) {
    json j;
    j["version"] = version_string;
    j["config"] = b.config_echo;
    json checks = json::array();
    for (const auto& c : b.checks)
        checks.push_back(json{{"name", c.name},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass},
                              {"details", c.details}});
    j["checks"] = checks;
    json spectra = json::array();
    for (const auto& s : b.spectra) {
        json vals = json::array();
        for (Complex v : s.values) vals.push_back(complex_json(v));
        spectra.push_back(json{{"label", s.label}, {"source", s.source}, {"values", vals}});
    }
    j["spectra"] = spectra;
    json levels = json::array();
    for (const auto& l : b.levels) {
        json lv;
        lv["level"] = l.level;
        lv["case"] = l.bc;
        json r1 = json::array(), r2 = json::array();
        for (Complex r : l.roots1) r1.push_back(complex_json(r));
        for (Complex r : l.roots2) r2.push_back(complex_json(r));
        lv["roots1"] = r1;
        lv["roots2"] = r2;
        lv["bae_residual"] = l.bae_residual;
        lv["tq_residual"] = l.tq_residual;
        lv["flagged"] = l.flagged;
        if (!l.diagnostic.empty()) lv["diagnostic"] = l.diagnostic;
        json en = json::array();
        for (const auto& e : l.energies)
            en.push_back(json{{"E", e.energy},
                              {"source", to_string(e.source)},
                              {"residual_imag", e.residual_imag}});
        lv["energies"] = en;
        levels.push_back(lv);
    }
    j["levels"] = levels;
    json tm;
    for (const auto& [k, v] : b.timings) tm[k] = v;
    j["timings"] = tm;
    return j;
}

// roots as flat CSV: one row per (level, root_index, re, im, which_Q)
inline std::string roots_csv(const ResultBundle& b) {
    std::ostringstream os;
    os.precision(17);
    os << "level,root_index,re,im,which_q\n";
    for (const auto& l : b.levels) {
        int idx = 0;
        for (Complex r : l.roots1) os << l.level << "," << idx++ << "," << r.real() << "," << r.imag() << ",1\n";
        idx = 0;
        for (Complex r : l.roots2) os << l.level << "," << idx++ << "," << r.real() << "," << r.imag() << ",2\n";
    }
    return os.str();
}

// check mode: re-derive every pass/fail from the recorded residuals and
// tolerances without re-solving anything
struct CheckReport {
    bool consistent = true;  // recorded pass flags match residual <= tolerance
    bool all_pass = true;
    std::vector<std::string> notes;
};

inline CheckReport check_bundle(const json& j) {
    CheckReport rep;
    if (j.contains("checks"))
        for (const auto& c : j.at("checks")) {
            const bool should = c.at("residual").get<double>() <= c.at("tolerance").get<double>();
            if (should != c.at("pass").get<bool>()) {
                rep.consistent = false;
                rep.notes.push_back("check '" + c.at("name").get<std::string>() +
                                    "': recorded pass flag contradicts residual/tolerance");
            }
            if (!should) {
                rep.all_pass = false;
                rep.notes.push_back("check '" + c.at("name").get<std::string>() + "' fails: residual " +
                                    std::to_string(c.at("residual").get<double>()));
            }
        }
    if (j.contains("levels"))
        for (const auto& l : j.at("levels"))
            if (l.at("flagged").get<bool>()) {
                rep.all_pass = false;
                rep.notes.push_back("level " + std::to_string(l.at("level").get<int>()) +
                                    " is flagged");
            }
    return rep;
}

}  // namespace openxxz
