// Acceptance battery: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <openxxz/runner.hpp>

using namespace openxxz;

namespace {

int failures = 0;

class Timer {
  public:
    Timer() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

  private:
    std::chrono::steady_clock::time_point t0_;
};

void report(int idx, const std::string& what, bool pass, const std::string& detail,
            double seconds, double limit) {
    const bool ok = pass && seconds <= limit;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << idx << ": " << what << "  [" << detail
              << "; " << std::fixed << std::setprecision(2) << seconds << " s of " << limit
              << " s]" << std::defaultfloat << "\n";
}

Complex generic_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.1, 1.2), im(-0.45, 0.45);
    return Complex(re(rng), im(rng));
}

void table_criterion(int idx, const std::string& table, double limit) {
    Timer timer;
    double max_de = 0.0, max_dr = 0.0;
    bool pass = false;
    std::string note;
    try {
        RunConfig cfg;
        const ReproduceReport rep = run_reproduce(table, cfg);
        pass = rep.pass && rep.rows.size() == 9;
        for (const auto& r : rep.rows) {
            max_de = std::max(max_de, r.energy_delta);
            max_dr = std::max(max_dr, r.roots_delta);
        }
        std::ostringstream os;
        os << rep.rows.size() << " levels, max|dE|=" << max_de << ", max root dev=" << max_dr;
        note = os.str();
    } catch (const std::exception& ex) {
        note = ex.what();
    }
    report(idx, table + " reproduction (energies to 5e-4, roots to 1e-4)", pass, note,
           timer.seconds(), limit);
}

void oracle_criterion() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    std::string note;
    try {
        for (const ReferenceTable* ref : {&reference_table1(), &reference_table2()}) {
            const ModelParams mp = ref->params;
            const auto ev = spectrum(build_hamiltonian(mp.sites, mp).matrix);
            BranchFamily fam(mp.two_s, mp.sites, mp);
            const auto sols = solve_bethe(ref->bc, mp);
            std::vector<double> ea, eb, ec;
            for (Complex z : ev) ea.push_back(z.real());
            for (const auto& s : sols) {
                eb.push_back(energy_from_derivative(fam, s.level_index, mp).energy);
                ec.push_back(energy_from_bethe(s, mp.sites, mp).energy);
            }
            std::sort(eb.begin(), eb.end());
            std::sort(ec.begin(), ec.end());
            for (std::size_t i = 0; i < ea.size(); ++i) {
                const double sc = std::max(1.0, std::abs(ea[i]));
                worst = std::max({worst, std::abs(ea[i] - eb[i]) / sc,
                                  std::abs(ea[i] - ec[i]) / sc, std::abs(eb[i] - ec[i]) / sc});
            }
        }
        pass = worst <= 1e-6;
        std::ostringstream os;
        os << "worst pairwise relative deviation " << worst;
        note = os.str();
    } catch (const std::exception& ex) {
        pass = false;
        note = ex.what();
    }
    report(3, "oracle equivalence of the three energy routes (1e-6)", pass, note, timer.seconds(),
           600.0);
}

void identity_criterion() {
    Timer timer;
    bool pass = true;
    std::string worst_name = "-";
    double worst_margin = 0.0;
    try {
        for (int two_s : {1, 2}) {
            for (int p : {3, 5}) {
                ModelParams mp;
                mp.two_s = two_s;
                mp.sites = 2;
                mp.p = p;
                mp.alpha_minus = 0.3;
                mp.alpha_plus = 0.21;
                mp.beta_minus = 0.767;
                mp.beta_plus = 0.598;
                mp.theta_minus = 0.573;
                mp.theta_plus = 0.41;
                VerifyOptions opt;
                opt.samples = 20;
                for (const auto& c : run_identity_suites(mp, opt)) {
                    if (!c.pass) pass = false;
                    const double margin = c.residual / std::max(c.tolerance, 1e-300);
                    if (margin > worst_margin) {
                        worst_margin = margin;
                        worst_name = c.name;
                    }
                }
            }
        }
    } catch (const std::exception& ex) {
        pass = false;
        worst_name = ex.what();
    }
    report(4, "identity suites at (s,N) in {(1/2,2),(1,2)}, p in {3,5}", pass,
           "worst margin " + std::to_string(worst_margin) + " at " + worst_name, timer.seconds(),
           120.0);
}

void completeness_criterion() {
    Timer timer;
    bool pass = true;
    std::ostringstream note;
    try {
        for (auto [two_s, p] : {std::pair{1, 3}, {2, 3}, {2, 5}, {3, 3}}) {
            ModelParams mp;
            mp.two_s = two_s;
            mp.sites = 2;
            mp.p = p;
            mp.beta_minus = 0.767;
            mp.beta_plus = 0.598;
            mp.theta_minus = mp.theta_plus = 0.573;
            const auto sols = solve_bethe(BoundaryCase::I, mp);
            int admissible = 0;
            for (const auto& s : sols)
                if (!s.flagged) ++admissible;
            note << "2s=" << two_s << ",p=" << p << ": " << admissible << "/" << mp.state_dim()
                 << "  ";
            if (admissible != mp.state_dim()) pass = false;
            if (two_s == 1 && admissible != 4) pass = false;
        }
    } catch (const std::exception& ex) {
        pass = false;
        note << ex.what();
    }
    report(5, "completeness counts (2s+1)^N across (s,p) combinations", pass, note.str(),
           timer.seconds(), 600.0);
}

void tq_consistency_criterion() {
    Timer timer;
    bool pass = true;
    double worst_tq = 0.0, worst_det = 0.0;
    std::string note;
    try {
        std::mt19937_64 rng(99);
        for (auto [two_s, p] : {std::pair{1, 3}, {2, 3}, {2, 5}, {3, 3}}) {
            ModelParams mp;
            mp.two_s = two_s;
            mp.sites = 2;
            mp.p = p;
            mp.beta_minus = 0.767;
            mp.beta_plus = 0.598;
            mp.theta_minus = mp.theta_plus = 0.573;
            const Couplings c = Couplings::of(mp);
            const auto sols = solve_bethe(BoundaryCase::I, mp);
            BranchFamily fam(mp.two_s, mp.sites, mp);
            for (const auto& sol : sols) {
                for (int t = 0; t < 10; ++t) {
                    const Complex u = generic_point(rng);
                    const Complex l1 = lambda_from_tq(u, sol, TQForm::TQ1, mp);
                    const Complex l2 = lambda_from_tq(u, sol, TQForm::TQ2, mp);
                    const Complex ld = fam.lambda(sol.level_index, u);
                    const double sc = std::max(std::abs(ld), 1e-300);
                    worst_tq = std::max({worst_tq, std::abs(l1 - l2) / sc, std::abs(l1 - ld) / sc});
                }
                auto lam = [&](Complex x) { return fam.lambda(sol.level_index, x); };
                const CMatrix m =
                    m_matrix(Complex(0.42, 0.0), lam, sol.bc, mp.two_s, mp.sites, mp.p, c);
                double row_norms = 1.0;
                for (int r = 0; r < m.rows(); ++r) row_norms *= m.row(r).norm();
                worst_det = std::max(worst_det, std::abs(m.determinant()) / row_norms);
            }
        }
        pass = worst_tq <= 1e-7 && worst_det <= 1e-8;
        std::ostringstream os;
        os << "worst TQ deviation " << worst_tq << ", worst |det|/rownorms " << worst_det;
        note = os.str();
    } catch (const std::exception& ex) {
        pass = false;
        note = ex.what();
    }
    report(6, "T-Q consistency on every branch (1e-7) and on-branch det M (1e-8)", pass, note,
           timer.seconds(), 600.0);
}

void scaling_criterion() {
    Timer timer;
    bool pass = true;
    std::string note;
    try {
        ModelParams mp;
        mp.two_s = 2;
        mp.sites = 4;
        mp.p = 3;
        mp.beta_minus = 0.774;
        mp.beta_plus = 0.695;
        mp.theta_minus = mp.theta_plus = 0.573;
        const auto sols = solve_bethe(BoundaryCase::I, mp);
        double worst_bae = 0.0;
        int solved = 0;
        for (const auto& s : sols) {
            worst_bae = std::max(worst_bae, s.bae_residual);
            if (!s.flagged && s.bae_residual <= 1e-8) ++solved;
        }
        const auto ev = spectrum(build_hamiltonian(mp.sites, mp).matrix);
        BranchFamily fam(mp.two_s, mp.sites, mp);
        std::vector<double> eb, ec;
        for (const auto& s : sols) {
            eb.push_back(energy_from_derivative(fam, s.level_index, mp).energy);
            ec.push_back(energy_from_bethe(s, mp.sites, mp).energy);
        }
        std::sort(eb.begin(), eb.end());
        std::sort(ec.begin(), ec.end());
        double worst_e = 0.0;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const double sc = std::max(1.0, std::abs(ev[i].real()));
            worst_e = std::max({worst_e, std::abs(ev[i].real() - eb[i]) / sc,
                                std::abs(ev[i].real() - ec[i]) / sc});
        }
        pass = solved == 81 && worst_e <= 1e-5;
        std::ostringstream os;
        os << solved << "/81 branches at bae<=1e-8 (worst " << worst_bae
           << "), worst three-way energy deviation " << worst_e;
        note = os.str();
    } catch (const std::exception& ex) {
        pass = false;
        note = ex.what();
    }
    report(7, "N=4 end-to-end scaling check (property-based)", pass, note, timer.seconds(),
           1800.0);
}

}  // namespace

int main() {
    std::cout << "acceptance battery, openxxz " << version_string << "\n";
    table_criterion(1, "table1", 60.0);
    table_criterion(2, "table2", 120.0);
    oracle_criterion();
    identity_criterion();
    completeness_criterion();
    tq_consistency_criterion();
    scaling_criterion();
    std::cout << (failures == 0 ? "all acceptance criteria pass"
                                : std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
