#include <catch_amalgamated.hpp>

#include <openxxz/reference.hpp>

using namespace openxxz;

TEST_CASE("Hamiltonian dimensions and coefficient identities") {
    const ModelParams mp = reference_table1().params;
    const auto h = build_hamiltonian(2, mp);
    REQUIRE(h.matrix.rows() == 9);
    const auto h3 = build_hamiltonian(3, mp);
    REQUIRE(h3.matrix.rows() == 27);
    // with real theta_-, a3/a4 = e^{4 theta_-}
    const auto cfs = spin1_boundary_coeffs(mp.alpha_minus, mp.beta_minus, mp.theta_minus, mp.eta());
    REQUIRE(std::abs(cfs.a[3] / cfs.a[4] - std::exp(4.0 * mp.theta_minus)) <= 1e-12);
}

TEST_CASE("boundary coefficient pole raises") {
    ModelParams mp = reference_table1().params;
    mp.alpha_minus = 0.5 * mp.eta();
    REQUIRE_THROWS_AS(build_hamiltonian(2, mp), std::domain_error);
}

TEST_CASE("table 1 spectrum from direct diagonalization") {
    const auto& ref = reference_table1();
    const auto ev = spectrum(build_hamiltonian(2, ref.params).matrix);
    REQUIRE(ev.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        REQUIRE(std::abs(ev[i].imag()) <= 1e-9);
        REQUIRE(std::abs(ev[i].real() - ref.levels[i].energy) <= 5e-4);
    }
}

TEST_CASE("table 2 spectrum from direct diagonalization") {
    const auto& ref = reference_table2();
    const auto ev = spectrum(build_hamiltonian(2, ref.params).matrix);
    for (std::size_t i = 0; i < 9; ++i) {
        REQUIRE(std::abs(ev[i].imag()) <= 1e-9);
        REQUIRE(std::abs(ev[i].real() - ref.levels[i].energy) <= 5e-4);
    }
}

TEST_CASE("fused spin-1 transfer matrix") {
    const ModelParams mp = reference_table1().params;
    const Complex u(0.41, 0.13);
    const CMatrix t11 = spin1_transfer(u, 2, mp);
    const CMatrix thalf = transfer(1, 2, Complex(0.77, -0.2), 2, mp);
    REQUIRE(max_abs(t11 * thalf - thalf * t11) / max_abs(t11 * thalf) <= 1e-10);
    // finite limit near u = 0 (small-u sampling)
    const CMatrix near1 = spin1_transfer(Complex(1e-4, 0.0), 2, mp);
    const CMatrix near2 = spin1_transfer(Complex(2e-4, 0.0), 2, mp);
    REQUIRE(max_abs(near1) > 1e-6);
    REQUIRE(max_abs(near1 - near2) / max_abs(near1) <= 1e-2);
    // branchwise hierarchy: eigenvalues of the rescaled spin-1 matrix equal
    // the analytic combination of fundamental branch values
    BranchFamily fam(mp.two_s, mp.sites, mp);
    const Couplings c = Couplings::of(mp);
    const auto ev = spectrum(spin1_transfer(u, 2, mp));
    std::vector<Complex> pred;
    for (int b = 0; b < fam.count(); ++b) pred.push_back(lambda_spin1_rescaled(u, fam, b, c));
    std::sort(pred.begin(), pred.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    for (std::size_t i = 0; i < pred.size(); ++i)
        REQUIRE(std::abs(pred[i] - ev[i]) / std::max(1.0, std::abs(ev[i])) <= 1e-8);
}

TEST_CASE("C(u) is entire after the pole cancellation") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    const Complex a = spin1_c_function(Complex(1e-6, 0.0), 2, c);
    const Complex b = spin1_c_function(Complex(-1e-6, 0.0), 2, c);
    REQUIRE(is_finite(a));
    REQUIRE(std::abs(a - b) <= 1e-4 * std::max(1.0, std::abs(a)));
}

TEST_CASE("energy routes agree with each other and the tables") {
    for (const ReferenceTable* ref : {&reference_table1(), &reference_table2()}) {
        const ModelParams mp = ref->params;
        const auto ev = spectrum(build_hamiltonian(2, mp).matrix);
        BranchFamily fam(mp.two_s, mp.sites, mp);
        const auto sols = solve_bethe(ref->bc, mp);
        std::vector<double> e_deriv, e_bethe;
        for (const auto& s : sols) {
            const auto ed = energy_from_derivative(fam, s.level_index, mp);
            const auto eb = energy_from_bethe(s, mp.sites, mp);
            REQUIRE(ed.residual_imag <= 1e-8);
            REQUIRE(eb.residual_imag <= 1e-8);
            e_deriv.push_back(ed.energy);
            e_bethe.push_back(eb.energy);
        }
        REQUIRE(e_bethe.size() == 9);
        std::sort(e_deriv.begin(), e_deriv.end());
        std::sort(e_bethe.begin(), e_bethe.end());
        for (std::size_t i = 0; i < 9; ++i) {
            const double ed = ev[i].real();
            const double sc = std::max(1.0, std::abs(ed));
            REQUIRE(std::abs(ed - e_deriv[i]) / sc <= 1e-8);
            REQUIRE(std::abs(ed - e_bethe[i]) / sc <= 1e-6);
            REQUIRE(std::abs(e_bethe[i] - ref->levels[i].energy) <= 5e-4);
        }
    }
}

TEST_CASE("bethe energy summand is crossing invariant") {
    const ModelParams mp = reference_table1().params;
    const Complex e = mp.eta();
    const Complex u(0.37, 0.21);
    const Complex s1 = 1.0 / (sh(u + 1.5 * e) * sh(u - 0.5 * e));
    const Complex um = -u - e;
    const Complex s2 = 1.0 / (sh(um + 1.5 * e) * sh(um - 0.5 * e));
    REQUIRE(std::abs(s1 - s2) / std::abs(s1) <= 1e-13);
}

TEST_CASE("derivative scheme flags non-convergence and spin mismatch") {
    const ModelParams mp = reference_table1().params;
    ModelParams half = mp;
    half.two_s = 1;
    BetheSolution dummy;
    REQUIRE_THROWS_AS(energy_from_bethe(dummy, 2, half), std::invalid_argument);
    REQUIRE_THROWS_AS(build_hamiltonian(2, half), std::invalid_argument);
    // a root sitting on the summand pole is reported
    BetheSolution bad;
    bad.bc = BoundaryCase::I;
    bad.roots1 = {0.5 * mp.eta()};
    REQUIRE_THROWS_AS(energy_from_bethe(bad, 2, mp), std::domain_error);
}
