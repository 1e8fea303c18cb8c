#pragma once

#include <limits>

#include "bethe.hpp"

namespace openxxz {

// su(2) spin-1 generators, S^z = diag(1,0,-1), raising/lowering elements sqrt(2)
inline const CMatrix& spin1_sz() {
    static const CMatrix m = [] {
        CMatrix s = CMatrix::Zero(3, 3);
        s(0, 0) = 1.0;
        s(2, 2) = -1.0;
        return s;
    }();
    return m;
}

inline const CMatrix& spin1_sp() {
    static const CMatrix m = [] {
        CMatrix s = CMatrix::Zero(3, 3);
        s(0, 1) = s(1, 2) = std::sqrt(2.0);
        return s;
    }();
    return m;
}

inline const CMatrix& spin1_sm() {
    static const CMatrix m = spin1_sp().transpose();
    return m;
}

// two-site bulk term of the open spin-1 chain
inline CMatrix spin1_bulk_term(Complex eta) {
    const CMatrix sz = spin1_sz();
    const CMatrix sx = 0.5 * (spin1_sp() + spin1_sm());
    const CMatrix sy = Complex(0.0, -0.5) * (spin1_sp() - spin1_sm());
    const CMatrix id3 = CMatrix::Identity(3, 3);
    const CMatrix sig = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
    const CMatrix sigp = kron(sx, sx) + kron(sy, sy);
    const CMatrix sigz = kron(sz, sz);
    return sig - sig * sig +
           2.0 * sh(eta) * sh(eta) *
               (sigz + kron(sz * sz, id3) + kron(id3, sz * sz) - sigz * sigz) -
           4.0 * sh(0.5 * eta) * sh(0.5 * eta) * (sigp * sigz + sigz * sigp);
}

struct BoundaryCoeffs {
    Complex a0;
    std::array<Complex, 9> a;  // a[1..8] used
};

// the eight boundary coefficients at one end, as functions of (alpha, beta, theta)
inline BoundaryCoeffs spin1_boundary_coeffs(Complex alpha, Complex beta, Complex theta,
                                            Complex eta) {
    const Complex den =
        sh(alpha - 0.5 * eta) * sh(alpha + 0.5 * eta) * ch(beta - 0.5 * eta) * ch(beta + 0.5 * eta);
    if (std::abs(den) < 1e-14)
        throw std::domain_error(
            "spin1 boundary: a0 pole, sh(alpha -/+ eta/2) ch(beta -/+ eta/2) vanishes");
    BoundaryCoeffs bc;
    bc.a0 = 1.0 / den;
    const Complex a0 = bc.a0;
    bc.a[1] = 0.25 * a0 * (ch(2.0 * alpha) - ch(2.0 * beta) + ch(eta)) * sh(2.0 * eta) * sh(eta);
    bc.a[2] = 0.25 * a0 * sh(2.0 * alpha) * sh(2.0 * beta) * sh(2.0 * eta);
    bc.a[3] = -0.125 * a0 * std::exp(2.0 * theta) * sh(2.0 * eta) * sh(eta);
    bc.a[4] = -0.125 * a0 * std::exp(-2.0 * theta) * sh(2.0 * eta) * sh(eta);
    const Complex chh = std::pow(ch(eta), 1.5);
    const Complex plus = ch(beta) * sh(alpha) * ch(0.5 * eta) + ch(alpha) * sh(beta) * sh(0.5 * eta);
    const Complex minus = ch(beta) * sh(alpha) * ch(0.5 * eta) - ch(alpha) * sh(beta) * sh(0.5 * eta);
    bc.a[5] = a0 * std::exp(theta) * plus * sh(eta) * chh;
    bc.a[6] = a0 * std::exp(-theta) * plus * sh(eta) * chh;
    bc.a[7] = -a0 * std::exp(theta) * minus * sh(eta) * chh;
    bc.a[8] = -a0 * std::exp(-theta) * minus * sh(eta) * chh;
    return bc;
}

inline CMatrix spin1_boundary_op(const BoundaryCoeffs& c) {
    const CMatrix sz = spin1_sz(), sp = spin1_sp(), sm = spin1_sm();
    return c.a[1] * sz * sz + c.a[2] * sz + c.a[3] * sp * sp + c.a[4] * sm * sm +
           c.a[5] * sp * sz + c.a[6] * sz * sm + c.a[7] * sz * sp + c.a[8] * sm * sz;
}

struct Spin1Hamiltonian {
    int sites;
    ModelParams params;
    CMatrix matrix;
};

// H = sum_n H_{n,n+1} + H_b with the printed boundary coefficients; the site-N
// coefficients follow from the site-1 ones under (alpha,beta,theta)_- ->
// (alpha_+, -beta_+, theta_+).
inline Spin1Hamiltonian build_hamiltonian(int sites, const ModelParams& mp) {
    if (mp.two_s != 2)
        throw std::invalid_argument("build_hamiltonian: the explicit chain is spin-1 only");
    const Complex eta = mp.eta();
    std::vector<int> dims(static_cast<std::size_t>(sites), 3);
    long D = 1;
    for (int i = 0; i < sites; ++i) D *= 3;
    CMatrix H = CMatrix::Zero(D, D);
    const CMatrix bulk = spin1_bulk_term(eta);
    for (int n = 0; n + 1 < sites; ++n) H += embed(bulk, dims, {n, n + 1});
    const auto ca = spin1_boundary_coeffs(mp.alpha_minus, mp.beta_minus, mp.theta_minus, eta);
    const auto cb = spin1_boundary_coeffs(mp.alpha_plus, -mp.beta_plus, mp.theta_plus, eta);
    H += embed(spin1_boundary_op(ca), dims, {0});
    H += embed(spin1_boundary_op(cb), dims, {sites - 1});
    require_finite(H, "build_hamiltonian");
    return Spin1Hamiltonian{sites, mp, std::move(H)};
}

inline std::vector<Complex> spectrum(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
    std::vector<Complex> ev(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) ev[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    return ev;
}

// derivative-formula prefactor
inline Complex spin1_c1(int sites, const Couplings& c) {
    const Complex e = c.eta;
    const Complex den = 16.0 * std::pow(sh(2.0 * e) * sh(e), 2 * sites) * sh(3.0 * e) *
                        sh(c.alpha_minus - 0.5 * e) * sh(c.alpha_minus + 0.5 * e) *
                        ch(c.beta_minus - 0.5 * e) * ch(c.beta_minus + 0.5 * e) *
                        sh(c.alpha_plus - 0.5 * e) * sh(c.alpha_plus + 0.5 * e) *
                        ch(c.beta_plus - 0.5 * e) * ch(c.beta_plus + 0.5 * e);
    return ch(e) / den;
}

// derivative-formula additive constant
inline Complex spin1_c2(int sites, const Couplings& c) {
    const Complex e = c.eta;
    const Complex a0 = 1.0 / (sh(c.alpha_minus - 0.5 * e) * sh(c.alpha_minus + 0.5 * e) *
                              ch(c.beta_minus - 0.5 * e) * ch(c.beta_minus + 0.5 * e));
    const Complex b = 2.0 * (-ch(2.0 * c.beta_minus) - ch(e) * ch(e) * ch(e) +
                             ch(2.0 * c.alpha_minus) * (1.0 + ch(2.0 * c.beta_minus) * ch(e)));
    const Complex d = -4.0 * sh(3.0 * e) * sh(c.alpha_plus + 0.5 * e) * sh(c.alpha_plus - 0.5 * e) *
                      ch(c.beta_plus + 0.5 * e) * ch(c.beta_plus - 0.5 * e);
    const Complex c2a = -0.25 * a0 * b * ch(e) -
                        (sites - 1.0) * (4.0 + ch(2.0 * e)) + 2.0 * sites * ch(e) * ch(e);
    const Complex c2b =
        -sh(e) / (2.0 * d) *
        (-2.0 * ch(2.0 * c.alpha_plus) *
             (ch(e) * (3.0 + 7.0 * ch(2.0 * e) + ch(4.0 * e)) +
              ch(2.0 * c.beta_plus) * (4.0 + 5.0 * ch(2.0 * e) + 2.0 * ch(4.0 * e))) +
         2.0 * ch(e) *
             (ch(2.0 * c.beta_plus) * (3.0 + 7.0 * ch(2.0 * e) + ch(4.0 * e)) +
              ch(e) * (5.0 + 3.0 * ch(2.0 * e) + 3.0 * ch(4.0 * e))));
    const Complex c2c =
        -sh(2.0 * e) / (2.0 * d) *
        (ch(2.0 * c.beta_plus) * (2.0 + 4.0 * ch(e) * ch(3.0 * e)) +
         ch(e) * (5.0 * ch(2.0 * e) + ch(4.0 * e)) -
         2.0 * ch(2.0 * c.alpha_plus) *
             (1.0 + ch(2.0 * e) + ch(2.0 * c.beta_plus) * (ch(e) + 2.0 * ch(3.0 * e)) +
              ch(4.0 * e)));
    return c2a + c2b + c2c;
}

// C(u) with the [sh u sh(u+eta)]^{2N} pole cancelled against delta_0^{(1)};
// what remains is entire: -[sh(u+2eta) sh(u-eta)]^{2N} sh(2u-eta) sh(2u+3eta)
// * delta_1(u - eta/2).
inline Complex spin1_c_function(Complex u, int sites, const Couplings& c) {
    const Complex e = c.eta;
    return -std::pow(sh(u + 2.0 * e) * sh(u - e), 2 * sites) * sh(2.0 * u - e) *
           sh(2.0 * u + 3.0 * e) * delta1(u - 0.5 * e, c);
}

// Richardson-extrapolated central difference at 0 with steps {h, h/2, h/4}.
// Returns the derivative and the agreement of the last two extrapolants.
inline std::pair<Complex, double> derivative_at_zero(const std::function<Complex(Complex)>& f,
                                                     double step = 1e-3) {
    Complex d[3];
    for (int i = 0; i < 3; ++i) {
        const double h = step / (1 << i);
        d[i] = (f(Complex(h, 0.0)) - f(Complex(-h, 0.0))) / (2.0 * h);
    }
    const Complex r0 = (4.0 * d[1] - d[0]) / 3.0;
    const Complex r1 = (4.0 * d[2] - d[1]) / 3.0;
    const Complex r2 = (16.0 * r1 - r0) / 15.0;
    const double err = std::abs(r1 - r0) / std::max(1.0, std::abs(r2));
    return {r2, err};
}

// rescaled spin-1 eigenvalue function on one branch, as an entire function:
// sh(2u) sh(2u+2eta) * LambdaTilde(u-eta/2) * LambdaTilde(u+eta/2) + C(u)
inline Complex lambda_spin1_rescaled(Complex u, const BranchFamily& family, int branch,
                                     const Couplings& c) {
    const Complex e = c.eta;
    return sh(2.0 * u) * sh(2.0 * u + 2.0 * e) * family.lambda_rescaled(branch, u - 0.5 * e) *
               family.lambda_rescaled(branch, u + 0.5 * e) +
           spin1_c_function(u, family.sites(), c);
}

// fused spin-1 transfer matrix, rescaled; evaluated via the hierarchy formula
inline CMatrix spin1_transfer(Complex u, int sites, const ModelParams& mp) {
    const Couplings c = Couplings::of(mp);
    const Complex e = c.eta;
    const CMatrix ta = transfer(1, 2, u - 0.5 * e, sites, c);
    const CMatrix tb = transfer(1, 2, u + 0.5 * e, sites, c);
    const Eigen::Index D = ta.rows();
    const CMatrix t11 = ta * tb - delta(2, u - 0.5 * e, sites, c) * CMatrix::Identity(D, D);
    const Complex pref = sh(2.0 * u) * sh(2.0 * u + 2.0 * e) /
                         std::pow(sh(u) * sh(u + e), 2 * sites);
    if (!is_finite(pref))
        throw std::domain_error("spin1_transfer: rescaling prefactor pole; evaluate off u = 0");
    return pref * t11;
}

enum class EnergySource { diagonalization, derivative_formula, bethe_roots };

inline const char* to_string(EnergySource s) {
    switch (s) {
        case EnergySource::diagonalization: return "diagonalization";
        case EnergySource::derivative_formula: return "derivative";
        default: return "bethe";
    }
}

struct EnergyRecord {
    int level_index = -1;
    double energy = 0.0;
    EnergySource source = EnergySource::diagonalization;
    double residual_imag = 0.0;
};

// E = c1 * d/du LambdaTilde^{(1,1)}(u)|_0 + c2 on one branch
inline EnergyRecord energy_from_derivative(const BranchFamily& family, int branch,
                                           const ModelParams& mp) {
    const Couplings c = Couplings::of(mp);
    auto f = [&](Complex u) { return lambda_spin1_rescaled(u, family, branch, c); };
    auto [deriv, err] = derivative_at_zero(f);
    if (err > 1e-8)
        throw std::runtime_error("energy_from_derivative: extrapolation disagreement " +
                                 std::to_string(err));
    const Complex E = spin1_c1(family.sites(), c) * deriv + spin1_c2(family.sites(), c);
    return EnergyRecord{branch, E.real(), EnergySource::derivative_formula, std::abs(E.imag())};
}

// Energy from the Q1 zeros: pairwise-invariant sum over roots plus the
// closed boundary term (coth eta/2 in case I, tanh eta/2 in case II) plus the
// numerically differentiated C'(0) piece.
inline EnergyRecord energy_from_bethe(const BetheSolution& sol, int sites, const ModelParams& mp) {
    if (mp.two_s != 2)
        throw std::invalid_argument("energy_from_bethe: spin-1 energies only");
    const Couplings c = Couplings::of(mp);
    const Complex e = c.eta;
    Complex sum(0.0, 0.0);
    for (Complex u : sol.roots1) {
        const Complex den = sh(u + 1.5 * e) * sh(u - 0.5 * e);
        if (std::abs(den) < 1e-12)
            throw std::domain_error("energy_from_bethe: root at a pole of the summand");
        sum += 1.0 / den;
    }
    const Complex half = (sol.bc == BoundaryCase::I) ? cth(0.5 * e) : th(0.5 * e);
    auto [cp, err] = derivative_at_zero([&](Complex u) { return spin1_c_function(u, sites, c); });
    (void)err;
    const Complex E = sh(2.0 * e) * sh(2.0 * e) * sum +
                      2.0 * sh(2.0 * e) * ((sites + 1.0) * cth(e) - half) +
                      spin1_c1(sites, c) * cp + spin1_c2(sites, c);
    return EnergyRecord{sol.level_index, E.real(), EnergySource::bethe_roots, std::abs(E.imag())};
}

}  // namespace openxxz
