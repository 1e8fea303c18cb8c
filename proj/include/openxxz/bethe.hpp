#pragma once

#include <limits>

#include "tq.hpp"

namespace openxxz {

struct SolveSettings {
    double tol = 1e-10;          // BAE admissibility per solution
    double tq_tol = 1e-7;        // T-Q vs diagonalization admissibility
    double grid_lo = 0.11;       // real sampling interval, clear of the pole lattice
    double grid_hi = 1.37;
    int grid_per_coeff = 4;      // grid points = grid_per_coeff * (M1 + 1)
    int newton_max_iter = 80;
    double newton_tol = 5e-13;
    Complex tq_probe{0.693, 0.111};
};

// canonical representative of a Bethe root modulo u -> -u-eta and u -> u+i pi:
// Im folded into [0, pi), Re >= 0 preferred, then smaller |Im|
inline Complex canonical_root(Complex u, Complex eta) {
    auto fold = [](Complex w) {
        double im = std::fmod(w.imag(), pi);
        if (im < 0) im += pi;
        return Complex(w.real(), im);
    };
    const Complex a = fold(u);
    const Complex b = fold(-u - eta);
    auto key = [](Complex z) { return std::make_pair(z.real() < -1e-12, std::abs(z.imag())); };
    return key(a) <= key(b) ? a : b;
}

// distance between roots modulo the declared symmetries: both symmetry
// representatives of each root are folded into the fundamental strip and
// compared with +- i pi guards against the strip boundary
inline double root_distance(Complex a, Complex b, Complex eta) {
    auto fold = [](Complex w) {
        double im = std::fmod(w.imag(), pi);
        if (im < 0) im += pi;
        return Complex(w.real(), im);
    };
    double best = std::numeric_limits<double>::infinity();
    for (Complex wa : {fold(a), fold(-a - eta)})
        for (Complex wb : {fold(b), fold(-b - eta)})
            for (int k = -1; k <= 1; ++k)
                best = std::min(best, std::abs(wa - (wb + Complex(0.0, k * pi))));
    return best;
}

namespace detail {

inline std::vector<Complex> companion_roots(const std::vector<Complex>& coeffs) {
    // coeffs[0] + coeffs[1] x + ... ; highest-degree last and nonzero
    const int deg = static_cast<int>(coeffs.size()) - 1;
    CMatrix comp = CMatrix::Zero(deg, deg);
    for (int i = 0; i + 1 < deg; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < deg; ++i)
        comp(i, deg - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs[static_cast<std::size_t>(deg)];
    Eigen::ComplexEigenSolver<CMatrix> es(comp, /*computeEigenvectors=*/false);
    std::vector<Complex> out(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

struct QFit {
    std::vector<Complex> p1, p2;  // polynomial coefficients in x = ch(2u+eta)
    double rel_residual = 0.0;    // smallest/largest singular value
    double separation = 0.0;      // smallest/second-smallest singular value
};

// Homogeneous linear fit of the Q polynomials: every row of M(u) q(u) = 0 with
// q the alternating vector of Q evaluations is linear in the coefficients of
// P1 and P2. Least squares over the grid = SVD null direction.
inline QFit fit_q_polynomials(const std::function<Complex(Complex)>& lambda_branch,
                              BoundaryCase bc, int two_s, int sites, int p, const Couplings& c,
                              const SolveSettings& st) {
    const int m1 = m1_count(two_s, sites, p), m2 = m2_count(two_s, sites, p);
    const int ncoef = (m1 + 1) + (m2 + 1);
    const int ng = st.grid_per_coeff * (m1 + 1);
    const int n = p + 1;
    const double s1 = std::pow(2.0, -m1), s2 = std::pow(2.0, -m2);
    CMatrix A = CMatrix::Zero(static_cast<Eigen::Index>(ng) * n, ncoef);
    for (int gi = 0; gi < ng; ++gi) {
        const Complex ug(st.grid_lo + (st.grid_hi - st.grid_lo) * gi / std::max(1, ng - 1), 0.0);
        const CMatrix M = m_matrix(ug, lambda_branch, bc, two_s, sites, p, c);
        for (int r = 0; r < n; ++r) {
            const Eigen::Index row = static_cast<Eigen::Index>(gi) * n + r;
            for (int m = 0; m < n; ++m) {
                const Complex mv = M(r, m);
                if (mv == Complex(0.0, 0.0)) continue;
                const Complex x = ch(2.0 * ug + (2.0 * m + 1.0) * c.eta);
                Complex xp(1.0, 0.0);
                if (m % 2 == 0) {
                    for (int d = 0; d <= m1; ++d, xp *= x) A(row, d) += mv * xp * s1;
                } else {
                    for (int d = 0; d <= m2; ++d, xp *= x) A(row, m1 + 1 + d) += mv * xp * s2;
                }
            }
        }
    }
    Eigen::VectorXd colscale(ncoef);
    for (int j = 0; j < ncoef; ++j) {
        const double nrm = A.col(j).norm();
        colscale(j) = (nrm > 0) ? nrm : 1.0;
        A.col(j) /= colscale(j);
    }
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    QFit fit;
    fit.rel_residual = sv(last) / std::max(sv(0), 1e-300);
    fit.separation = sv(last) / std::max(sv(last - 1), 1e-300);
    CVector coef = svd.matrixV().col(last);
    for (int j = 0; j < ncoef; ++j) coef(j) /= colscale(j);
    fit.p1.assign(coef.data(), coef.data() + m1 + 1);
    fit.p2.assign(coef.data() + m1 + 1, coef.data() + ncoef);
    return fit;
}

inline std::vector<Complex> roots_from_coefficients(const std::vector<Complex>& coeffs,
                                                    Complex eta) {
    double cmax = 0.0;
    for (Complex v : coeffs) cmax = std::max(cmax, std::abs(v));
    if (std::abs(coeffs.back()) < 1e-10 * cmax)
        throw std::runtime_error("bethe fit: Q polynomial degenerated below its nominal degree");
    std::vector<Complex> out;
    for (Complex x : companion_roots(coeffs)) {
        const Complex z = std::acosh(x);  // 2u + eta up to sign and 2 pi i
        out.push_back(canonical_root(0.5 * (z - eta), eta));
    }
    return out;
}

// Damped Newton on the cleared BAE system with rows normalized by their
// generic scale. Degenerate rows (string configurations, both terms zero) are
// pinned so they neither drive nor block the update.
inline std::pair<std::vector<Complex>, double> newton_refine(
    std::vector<Complex> roots, int m1, BoundaryCase bc, int two_s, int sites,
    const Couplings& c, const SolveSettings& st) {
    const int n = static_cast<int>(roots.size());
    auto eval = [&](const std::vector<Complex>& x, CVector& F, std::vector<bool>& live) {
        const std::vector<Complex> r1(x.begin(), x.begin() + m1);
        const std::vector<Complex> r2(x.begin() + m1, x.end());
        const auto rows = bae_rows(r1, r2, bc, two_s, sites, c);
        F.resize(n);
        live.assign(static_cast<std::size_t>(n), true);
        for (int i = 0; i < n; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            const double sc = std::max({std::abs(row.t1), std::abs(row.t2), row.gen_scale});
            if (sc < 1e-250) {
                live[static_cast<std::size_t>(i)] = false;
                F(i) = 0.0;
            } else {
                F(i) = (row.t1 + row.t2) / sc;
            }
        }
    };
    CVector F;
    std::vector<bool> live;
    eval(roots, F, live);
    double fn = F.cwiseAbs().maxCoeff();
    for (int it = 0; it < st.newton_max_iter && fn >= st.newton_tol; ++it) {
        CMatrix J(n, n);
        const double h = 1e-7;
        CVector Fp;
        std::vector<bool> livep;
        for (int k = 0; k < n; ++k) {
            std::vector<Complex> xp = roots;
            xp[static_cast<std::size_t>(k)] += h;
            eval(xp, Fp, livep);
            J.col(k) = (Fp - F) / h;
        }
        for (int i = 0; i < n; ++i)
            if (!live[static_cast<std::size_t>(i)]) {
                J.row(i).setZero();
                J(i, i) = 1.0;
                F(i) = 0.0;
            }
        const CVector dx = J.fullPivLu().solve(F);
        double lam = 1.0;
        std::vector<Complex> best = roots;
        double bestfn = fn;
        for (int ls = 0; ls < 8; ++ls) {
            std::vector<Complex> xn = roots;
            for (int k = 0; k < n; ++k) xn[static_cast<std::size_t>(k)] -= lam * dx(k);
            eval(xn, Fp, livep);
            const double fnn = Fp.cwiseAbs().maxCoeff();
            if (fnn < bestfn) {
                best = xn;
                bestfn = fnn;
                break;
            }
            lam *= 0.5;
        }
        if (bestfn >= fn) break;  // stalled
        roots = best;
        eval(roots, F, live);
        fn = F.cwiseAbs().maxCoeff();
    }
    return {roots, fn};
}

}  // namespace detail

// Full solve: one BetheSolution per transfer-matrix eigenvalue branch.
// Pipeline: common-eigenbasis branch tracking, homogeneous fit of the Q
// polynomials over a real u-grid, root extraction in x = ch(2u+eta), Newton
// refinement on the cleared BAE system (kept only when it improves), then
// residual and T-Q diagnostics. Branches above tolerance are flagged, never
// dropped.
inline std::vector<BetheSolution> solve_bethe(BoundaryCase bc, const ModelParams& mp,
                                              const SolveSettings& st = SolveSettings{}) {
    if (mp.p % 2 == 0) throw std::invalid_argument("solve_bethe: p must be odd");
    if (mp.sites % 2 != 0) throw std::invalid_argument("solve_bethe: N must be even");
    validate_case(bc, mp);
    const Couplings c = Couplings::of(mp);
    const int m1 = m1_count(mp.two_s, mp.sites, mp.p);
    BranchFamily family(mp.two_s, mp.sites, mp);
    std::vector<BetheSolution> out;
    for (int b = 0; b < family.count(); ++b) {
        auto lam = [&family, b](Complex u) { return family.lambda(b, u); };
        BetheSolution sol;
        sol.bc = bc;
        sol.level_index = b;
        try {
            const auto fit =
                detail::fit_q_polynomials(lam, bc, mp.two_s, mp.sites, mp.p, c, st);
            sol.fit_residual = fit.rel_residual;
            std::vector<Complex> seed = detail::roots_from_coefficients(fit.p1, c.eta);
            const std::vector<Complex> seed2 = detail::roots_from_coefficients(fit.p2, c.eta);
            seed.insert(seed.end(), seed2.begin(), seed2.end());
            std::vector<Complex> r1(seed.begin(), seed.begin() + m1);
            std::vector<Complex> r2(seed.begin() + m1, seed.end());
            double res = detail::robust_bae_residual(r1, r2, bc, mp.two_s, mp.sites, c);
            if (res > st.newton_tol) {
                auto [refined, fn] = detail::newton_refine(seed, m1, bc, mp.two_s, mp.sites, c, st);
                std::vector<Complex> r1n(refined.begin(), refined.begin() + m1);
                std::vector<Complex> r2n(refined.begin() + m1, refined.end());
                const double resn =
                    detail::robust_bae_residual(r1n, r2n, bc, mp.two_s, mp.sites, c);
                if (resn < res) {
                    r1 = std::move(r1n);
                    r2 = std::move(r2n);
                    res = resn;
                }
            }
            for (Complex& r : r1) r = canonical_root(r, c.eta);
            for (Complex& r : r2) r = canonical_root(r, c.eta);
            sol.roots1 = std::move(r1);
            sol.roots2 = std::move(r2);
            sol.bae_residual = res;
            const Complex lt =
                lambda_from_tq(st.tq_probe, sol, TQForm::TQ1, mp.two_s, mp.sites, c);
            const Complex ld = lam(st.tq_probe);
            sol.tq_residual = std::abs(lt - ld) / std::max(std::abs(ld), 1e-300);
            if (sol.bae_residual > st.tol || sol.tq_residual > st.tq_tol) {
                sol.flagged = true;
                sol.diagnostic = "tolerance not met (bae=" + std::to_string(sol.bae_residual) +
                                 ", tq=" + std::to_string(sol.tq_residual) + ")";
            }
        } catch (const std::exception& ex) {
            sol.flagged = true;
            sol.diagnostic = ex.what();
            sol.bae_residual = std::numeric_limits<double>::infinity();
            sol.tq_residual = std::numeric_limits<double>::infinity();
        }
        out.push_back(std::move(sol));
    }
    return out;
}

}  // namespace openxxz
