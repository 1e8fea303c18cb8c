#include <catch_amalgamated.hpp>
#include <random>

#include <openxxz/bethe.hpp>
#include <openxxz/reference.hpp>

using namespace openxxz;

namespace {

Complex generic_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(0.1, 1.2), im(-0.45, 0.45);
    return Complex(re(rng), im(rng));
}

}  // namespace

TEST_CASE("h1 closed forms, case I and case II") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    const Complex e = c.eta;
    std::mt19937_64 rng(31);
    for (int t = 0; t < 5; ++t) {
        const Complex u = generic_point(rng);
        // s = 1 closed form, the product written out explicitly
        const Complex direct = 4.0 *
                               std::pow(sh(u + 2.5 * e) * sh(u + 1.5 * e), 2 * mp.sites) *
                               sh(u + e) * sh(u + e) * sh(2.0 * u + 4.0 * e) /
                               sh(2.0 * u + 3.0 * e);
        REQUIRE(std::abs(h1(u, BoundaryCase::I, mp) - direct) / std::abs(direct) <= 1e-12);
        // case II differs only by sh^2(u+eta) -> ch^2(u+eta)
        const Complex ratio = h1(u, BoundaryCase::II, mp) / h1(u, BoundaryCase::I, mp);
        const Complex expect = ch(u + e) * ch(u + e) / (sh(u + e) * sh(u + e));
        REQUIRE(std::abs(ratio - expect) / std::abs(expect) <= 1e-12);
    }
    REQUIRE_THROWS_AS(h1(-1.5 * e, BoundaryCase::I, mp), std::domain_error);
}

TEST_CASE("closure condition tying f to the h functions") {
    std::mt19937_64 rng(32);
    {
        const ModelParams mp = reference_table1().params;
        for (int t = 0; t < 20; ++t)
            REQUIRE(w_condition_residual(generic_point(rng), BoundaryCase::I, mp.two_s, mp.sites,
                                         mp.p, Couplings::of(mp)) <= 1e-8);
    }
    {
        const ModelParams mp = reference_table2().params;
        for (int t = 0; t < 20; ++t)
            REQUIRE(w_condition_residual(generic_point(rng), BoundaryCase::II, mp.two_s, mp.sites,
                                         mp.p, Couplings::of(mp)) <= 1e-8);
    }
}

TEST_CASE("cyclic shift symmetry of the functional-relation matrix") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    BranchFamily fam(mp.two_s, mp.sites, mp);
    auto lam = [&](Complex u) { return fam.lambda(0, u); };
    const Complex u(0.4, 0.1);
    const int n = mp.p + 1;
    CMatrix S = CMatrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) S(i, i + 1) = 1.0;
    S(n - 1, 0) = 1.0;
    const CMatrix T = S * S;
    const CMatrix a = T * m_matrix(u, lam, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c) *
                      T.inverse();
    const CMatrix b = m_matrix(u + 2.0 * c.eta, lam, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c);
    REQUIRE(max_abs(a - b) / max_abs(b) <= 1e-12);
}

TEST_CASE("determinant vanishes on every eigenvalue branch") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    BranchFamily fam(mp.two_s, mp.sites, mp);
    const Complex u(0.4, 0.0);
    for (int b = 0; b < fam.count(); ++b) {
        auto lam = [&](Complex x) { return fam.lambda(b, x); };
        const CMatrix m = m_matrix(u, lam, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c);
        double row_norms = 1.0;
        for (int r = 0; r < m.rows(); ++r) row_norms *= m.row(r).norm();
        REQUIRE(std::abs(m.determinant()) <= 1e-8 * row_norms);
    }
    // negative control: a wrong eigenvalue function does not annihilate det
    auto lam_wrong = [&](Complex x) { return fam.lambda(0, x) + 0.1; };
    const CMatrix m = m_matrix(u, lam_wrong, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c);
    double row_norms = 1.0;
    for (int r = 0; r < m.rows(); ++r) row_norms *= m.row(r).norm();
    REQUIRE(std::abs(m.determinant()) > 1e-6 * row_norms);
}

TEST_CASE("null vector layout and shift covariance") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    BranchFamily fam(mp.two_s, mp.sites, mp);
    auto lam = [&](Complex x) { return fam.lambda(2, x); };
    const Complex u(0.57, 0.0);
    const CMatrix m = m_matrix(u, lam, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c);
    const CVector v = null_vector(m);
    REQUIRE(v.size() == mp.p + 1);  // alternating Q1/Q2 samples
    REQUIRE(std::abs(v.norm() - 1.0) <= 1e-12);
    REQUIRE((m * v).norm() <= 1e-9 * m.norm());
    // v(u+2eta) is the cyclic double-shift of v(u) up to one scalar
    const CMatrix m2 = m_matrix(u + 2.0 * c.eta, lam, BoundaryCase::I, mp.two_s, mp.sites, mp.p, c);
    const CVector w = null_vector(m2);
    const int n = mp.p + 1;
    CVector shifted(n);
    for (int i = 0; i < n; ++i) shifted(i) = v((i + 2) % n);
    const Complex scale = shifted.dot(w) / shifted.squaredNorm();
    REQUIRE((w - scale * shifted).norm() <= 1e-8);
    // ambiguous null space raises
    REQUIRE_THROWS_AS(null_vector(CMatrix::Zero(4, 4)), std::runtime_error);
}

TEST_CASE("T-Q reconstructions agree with the diagonalized branches") {
    const ModelParams mp = reference_table1().params;
    const Couplings c = Couplings::of(mp);
    const auto sols = solve_bethe(BoundaryCase::I, mp);
    BranchFamily fam(mp.two_s, mp.sites, mp);
    std::mt19937_64 rng(33);
    for (const auto& sol : sols) {
        REQUIRE_FALSE(sol.flagged);
        for (int t = 0; t < 10; ++t) {
            const Complex u = generic_point(rng);
            const Complex l1 = lambda_from_tq(u, sol, TQForm::TQ1, mp);
            const Complex l2 = lambda_from_tq(u, sol, TQForm::TQ2, mp);
            const Complex ld = fam.lambda(sol.level_index, u);
            REQUIRE(std::abs(l1 - l2) <= 1e-8 * std::abs(ld));
            REQUIRE(std::abs(l1 - ld) <= 1e-7 * std::abs(ld));
            // crossing: the two terms swap, the value is invariant
            const Complex lc = lambda_from_tq(-u - c.eta, sol, TQForm::TQ1, mp);
            REQUIRE(std::abs(lc - l1) / std::abs(l1) <= 1e-9);
        }
    }
}

TEST_CASE("BAE residual: printed roots, refined roots, sensitivity") {
    const auto& ref = reference_table1();
    const ModelParams mp = ref.params;
    const auto sols = solve_bethe(BoundaryCase::I, mp);
    // printed six-digit roots for the ground state satisfy the equations to
    // table precision
    BetheSolution printed;
    printed.bc = BoundaryCase::I;
    printed.roots1 = ref.levels[0].roots1;
    // pair each refined solution with the printed one by root distance
    const Complex eta = mp.eta();
    const BetheSolution* best = nullptr;
    double bestd = 1e300;
    for (const auto& s : sols) {
        const double d = match_root_multisets(printed.roots1, s.roots1, eta);
        if (d < bestd) {
            bestd = d;
            best = &s;
        }
    }
    REQUIRE(best != nullptr);
    REQUIRE(bestd <= 1e-4);
    printed.roots2 = best->roots2;
    REQUIRE(bae_residual(printed, mp) <= 5e-4);
    REQUIRE(bae_residual(*best, mp) <= 1e-10);
    // perturbing one root is detected
    BetheSolution bumped = *best;
    bumped.roots1[0] += 0.01;
    REQUIRE(detail::robust_bae_residual(bumped.roots1, bumped.roots2, bumped.bc, mp.two_s,
                                        mp.sites, Couplings::of(mp)) > 1e-3);
}

TEST_CASE("BAE residual is invariant under the root symmetries") {
    const ModelParams mp = reference_table1().params;
    const auto sols = solve_bethe(BoundaryCase::I, mp);
    const Complex eta = mp.eta();
    const auto& s = sols[1];
    const double base = bae_residual(s, mp);
    BetheSolution mapped = s;
    mapped.roots1[0] = -mapped.roots1[0] - eta;
    mapped.roots1[1] += Complex(0.0, pi);
    mapped.roots2[0] = -mapped.roots2[0] - eta;
    const double moved = bae_residual(mapped, mp);
    REQUIRE(std::abs(moved - base) <= 1e-8 + 1e-3 * base);
}

TEST_CASE("case constraints are validated") {
    ModelParams mp = reference_table1().params;
    mp.alpha_minus = 0.2;
    REQUIRE_THROWS_AS(validate_case(BoundaryCase::I, mp), std::invalid_argument);
    ModelParams mp2 = reference_table2().params;
    mp2.theta_plus = mp2.theta_minus + 0.1;
    REQUIRE_THROWS_AS(validate_case(BoundaryCase::II, mp2), std::invalid_argument);
}
