#pragma once

#include <chrono>

#include "bethe.hpp"
#include "bundle.hpp"

namespace openxxz {

namespace detail {

class StageClock {
  public:
    explicit StageClock(ResultBundle& b) : bundle_(b) {}
    template <typename F>
    auto time(const std::string& stage, F&& f) {
        const auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            bundle_.timings.emplace_back(stage, seconds_since(t0));
        } else {
            auto r = f();
            bundle_.timings.emplace_back(stage, seconds_since(t0));
            return r;
        }
    }

  private:
    static double seconds_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    ResultBundle& bundle_;
};

inline std::vector<double> sorted_real(const std::vector<Complex>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (Complex z : v) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

// Drives the full identity battery for the configured parameters.
inline ResultBundle run_verify(const RunConfig& cfg) {
    cfg.validate();
    ResultBundle b;
    b.config_echo = config_echo_json(cfg);
    detail::StageClock clock(b);
    VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.tol_override = cfg.tolerances;
    b.checks = clock.time("identity_suites", [&] { return run_identity_suites(cfg.params, opt); });
    return b;
}

// Hamiltonian spectrum for the spin-1 chain, transfer-matrix spectrum otherwise.
inline ResultBundle run_spectrum(const RunConfig& cfg) {
    cfg.validate();
    ResultBundle b;
    b.config_echo = config_echo_json(cfg);
    detail::StageClock clock(b);
    if (cfg.params.two_s == 2) {
        auto ev = clock.time("diagonalization", [&] {
            return spectrum(build_hamiltonian(cfg.params.sites, cfg.params).matrix);
        });
        b.spectra.push_back(SpectrumRecord{"hamiltonian_energies", "diagonalization", ev});
    } else {
        auto ev = clock.time("diagonalization", [&] {
            return spectrum(
                transfer(1, cfg.params.two_s, cfg.spectral_point, cfg.params.sites, cfg.params));
        });
        b.spectra.push_back(SpectrumRecord{
            "transfer_eigenvalues_at_" + format_complex(cfg.spectral_point), "diagonalization", ev});
    }
    return b;
}

// Bethe solve plus, for spin 1, the three-way energy cross-check.
inline ResultBundle run_bethe(const RunConfig& cfg) {
    cfg.validate();
    if (!cfg.bc) throw ConfigError("bethe requires case (I or II)");
    ResultBundle b;
    b.config_echo = config_echo_json(cfg);
    detail::StageClock clock(b);

    SolveSettings st;
    st.tol = cfg.tol("bae", 1e-10);
    st.tq_tol = cfg.tol("tq", 1e-7);
    auto sols = clock.time("solve", [&] { return solve_bethe(*cfg.bc, cfg.params, st); });

    for (const auto& s : sols) {
        LevelRecord l;
        l.level = s.level_index;
        l.bc = to_string(s.bc);
        l.roots1 = s.roots1;
        l.roots2 = s.roots2;
        l.bae_residual = s.bae_residual;
        l.tq_residual = s.tq_residual;
        l.flagged = s.flagged;
        l.diagnostic = s.diagnostic;
        b.levels.push_back(std::move(l));
    }
    double worst_bae = 0.0, worst_tq = 0.0;
    int admissible = 0;
    for (const auto& s : sols) {
        worst_bae = std::max(worst_bae, s.bae_residual);
        worst_tq = std::max(worst_tq, s.tq_residual);
        if (!s.flagged) ++admissible;
    }
    const long expected = cfg.params.state_dim();
    b.checks.push_back(CheckResult{"completeness",
                                   static_cast<double>(expected - admissible), 0.5,
                                   admissible == expected,
                                   std::to_string(admissible) + " of " + std::to_string(expected) +
                                       " branches admissible"});
    b.checks.push_back(CheckResult{"bae_residual_max", worst_bae, st.tol, worst_bae <= st.tol, ""});
    b.checks.push_back(
        CheckResult{"tq_residual_max", worst_tq, st.tq_tol, worst_tq <= st.tq_tol, ""});

    if (cfg.params.two_s == 2) {
        auto ev = clock.time("diagonalization", [&] {
            return spectrum(build_hamiltonian(cfg.params.sites, cfg.params).matrix);
        });
        b.spectra.push_back(SpectrumRecord{"hamiltonian_energies", "diagonalization", ev});
        clock.time("energies", [&] {
            BranchFamily family(cfg.params.two_s, cfg.params.sites, cfg.params);
            std::vector<double> e_diag;
            for (Complex z : ev) e_diag.push_back(z.real());
            std::vector<double> e_deriv, e_bethe;
            for (auto& l : b.levels) {
                const EnergyRecord ed = energy_from_derivative(family, l.level, cfg.params);
                const EnergyRecord eb = energy_from_bethe(sols[static_cast<std::size_t>(l.level)],
                                                          cfg.params.sites, cfg.params);
                l.energies.push_back(ed);
                l.energies.push_back(eb);
                e_deriv.push_back(ed.energy);
                e_bethe.push_back(eb.energy);
            }
            std::sort(e_deriv.begin(), e_deriv.end());
            std::sort(e_bethe.begin(), e_bethe.end());
            double d_dd = 0.0, d_db = 0.0;
            for (std::size_t i = 0; i < e_diag.size(); ++i) {
                const double sc = std::max(1.0, std::abs(e_diag[i]));
                d_dd = std::max(d_dd, std::abs(e_diag[i] - e_deriv[i]) / sc);
                d_db = std::max(d_db, std::abs(e_diag[i] - e_bethe[i]) / sc);
            }
            const double tol_dd = cfg.tol("energy_derivative", 1e-8);
            const double tol_db = cfg.tol("energy_bethe", 1e-6);
            b.checks.push_back(CheckResult{"energy_diag_vs_derivative", d_dd, tol_dd,
                                           d_dd <= tol_dd, "sorted-level pairing"});
            b.checks.push_back(CheckResult{"energy_diag_vs_bethe", d_db, tol_db, d_db <= tol_db,
                                           "sorted-level pairing"});
        });
    }
    return b;
}

struct ReproduceRow {
    double energy_printed = 0.0;
    double energy_computed = 0.0;
    double energy_delta = 0.0;
    double roots_delta = 0.0;
    bool pass = false;
};

struct ReproduceReport {
    ResultBundle bundle;
    std::vector<ReproduceRow> rows;
    bool pass = false;
};

// Reproduce one of the bundled reference tables end to end: Bethe roots and
// energies, matched row by row (ascending energy; roots modulo the u -> -u-eta
// and u -> u + i pi symmetries).
inline ReproduceReport run_reproduce(const std::string& table, const RunConfig& base_cfg) {
    const ReferenceTable& ref = reference_table(table);
    RunConfig cfg = base_cfg;
    cfg.params = ref.params;
    cfg.bc = ref.bc;
    cfg.command = "bethe";
    cfg.table = table;
    ReproduceReport rep;
    rep.bundle = run_bethe(cfg);
    const Complex eta = ref.params.eta();
    const double e_tol = cfg.tol("table_energy", 5e-4);
    const double r_tol = cfg.tol("table_roots", 1e-4);

    // order levels by their Bethe-route energy
    std::vector<std::size_t> order(rep.bundle.levels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto bethe_energy = [&](std::size_t i) {
        for (const auto& e : rep.bundle.levels[i].energies)
            if (e.source == EnergySource::bethe_roots) return e.energy;
        return 0.0;
    };
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return bethe_energy(a) < bethe_energy(b); });

    bool all = rep.bundle.levels.size() == ref.levels.size();
    for (std::size_t i = 0; i < ref.levels.size() && i < order.size(); ++i) {
        const auto& lvl = rep.bundle.levels[order[i]];
        ReproduceRow row;
        row.energy_printed = ref.levels[i].energy;
        row.energy_computed = bethe_energy(order[i]);
        row.energy_delta = std::abs(row.energy_computed - row.energy_printed);
        row.roots_delta = match_root_multisets(ref.levels[i].roots1, lvl.roots1, eta);
        row.pass = row.energy_delta <= e_tol && row.roots_delta <= r_tol;
        all = all && row.pass;
        rep.rows.push_back(row);
    }
    rep.pass = all;
    rep.bundle.checks.push_back(CheckResult{
        "table_reproduction", all ? 0.0 : 1.0, 0.5, all,
        table + ": " + std::to_string(rep.rows.size()) + " rows, energies to 5e-4, roots to 1e-4"});
    return rep;
}

}  // namespace openxxz
