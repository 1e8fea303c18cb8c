#pragma once

#include <functional>

#include "rk.hpp"

namespace openxxz {

// Monodromy pair (T, That) on aux x site_1 x ... x site_N. T composes the
// fused R factors over sites N..1, That over 1..N, as printed.
inline std::pair<CMatrix, CMatrix> monodromy(int two_j, int two_s, Complex u, int sites,
                                             const Couplings& c) {
    const int dj = two_j + 1, ds = two_s + 1;
    std::vector<int> dims(static_cast<std::size_t>(sites) + 1, ds);
    dims[0] = dj;
    long D = dj;
    for (int i = 0; i < sites; ++i) D *= ds;
    const CMatrix r = fused_r(two_j, two_s, u, c);
    CMatrix T = CMatrix::Identity(D, D);
    for (int site = sites; site >= 1; --site) T = T * embed(r, dims, {0, site});
    CMatrix That = CMatrix::Identity(D, D);
    for (int site = 1; site <= sites; ++site) That = That * embed(r, dims, {0, site});
    return {T, That};
}

inline std::pair<CMatrix, CMatrix> monodromy(int two_j, int two_s, Complex u, int sites,
                                             const ModelParams& mp) {
    return monodromy(two_j, two_s, u, sites, Couplings::of(mp));
}

// Double-row transfer matrix t^{(j,s)}(u) = tr_aux K^+ T K^- That, dimension
// (2s+1)^N. By convention t^{(0,s)} = Id.
inline CMatrix transfer(int two_j, int two_s, Complex u, int sites, const Couplings& c) {
    long D = 1;
    for (int i = 0; i < sites; ++i) D *= (two_s + 1);
    if (two_j == 0) return CMatrix::Identity(D, D);
    const int dj = two_j + 1;
    auto [T, That] = monodromy(two_j, two_s, u, sites, c);
    std::vector<int> dims(static_cast<std::size_t>(sites) + 1, two_s + 1);
    dims[0] = dj;
    const CMatrix kp = embed(fused_k(two_j, KSign::plus, u, c), dims, {0});
    const CMatrix km = embed(fused_k(two_j, KSign::minus, u, c), dims, {0});
    CMatrix t = partial_trace_first(kp * T * km * That, dj);
    require_finite(t, "transfer");
    return t;
}

inline CMatrix transfer(int two_j, int two_s, Complex u, int sites, const ModelParams& mp) {
    return transfer(two_j, two_s, u, sites, Couplings::of(mp));
}

// g^{(1/2,s)}(u) = prod_{k=1..2s-1} sh(u + (s-k+1/2) eta)
inline Complex g_fundamental(int two_s, Complex u, const Couplings& c) {
    Complex g(1.0, 0.0);
    for (int k = 1; k <= two_s - 1; ++k) g *= sh(u + (0.5 * two_s - k + 0.5) * c.eta);
    return g;
}

inline CMatrix rescaled_fundamental(int two_s, Complex u, int sites, const Couplings& c) {
    for (int k = 1; k <= two_s - 1; ++k)
        if (std::abs(sh(u + (0.5 * two_s - k + 0.5) * c.eta)) == 0.0)
            throw std::domain_error("rescaled_fundamental: sh(u + (s - " + std::to_string(k) +
                                    " + 1/2) eta) vanishes; rescaling pole");
    const Complex g = g_fundamental(two_s, u, c);
    return transfer(1, two_s, u, sites, c) / std::pow(g, 2 * sites);
}

inline CMatrix rescaled_fundamental(int two_s, Complex u, int sites, const ModelParams& mp) {
    return rescaled_fundamental(two_s, u, sites, Couplings::of(mp));
}

inline Complex delta0(int two_s, Complex u, int sites, const Couplings& c) {
    const Complex d1 = sh(2.0 * u + c.eta), d2 = sh(2.0 * u + 3.0 * c.eta);
    if (std::abs(d1) == 0.0 || std::abs(d2) == 0.0)
        throw std::domain_error("delta0: pole at sh(2u+eta) or sh(2u+3eta)");
    Complex prod(1.0, 0.0);
    for (int k = 0; k <= two_s - 1; ++k) prod *= xi(u + (0.5 * two_s - k + 0.5) * c.eta, c.eta);
    return std::pow(prod, 2 * sites) * sh(2.0 * u) * sh(2.0 * u + 4.0 * c.eta) / (d1 * d2);
}

inline Complex delta1(Complex u, const Couplings& c) {
    const Complex e = c.eta;
    return 16.0 * sh(u + c.alpha_minus + e) * sh(u - c.alpha_minus + e) *
           ch(u + c.beta_minus + e) * ch(u - c.beta_minus + e) * sh(u + c.alpha_plus + e) *
           sh(u - c.alpha_plus + e) * ch(u + c.beta_plus + e) * ch(u - c.beta_plus + e);
}

inline Complex delta(int two_s, Complex u, int sites, const Couplings& c) {
    return delta0(two_s, u, sites, c) * delta1(u, c);
}

inline Complex delta(int two_s, Complex u, int sites, const ModelParams& mp) {
    return delta(two_s, u, sites, Couplings::of(mp));
}

// Scalar function f(u) = f0(u) f1(u) of the order-(p+1) functional relation
// (odd p forms).
inline Complex f0_scalar(int two_s, Complex u, int sites, int p) {
    const Complex w = (p + 1.0) * u;
    const double signN = (sites % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N+1}
    const double pw = std::pow(2.0, -2.0 * two_s * p * sites);
    const Complex base = signN * pw * th(w) * th(w);
    if (two_s % 2 == 1) return base * std::pow(sh(w), 2 * two_s * sites);
    return base * std::pow(ch(w), 2 * two_s * sites);
}

inline Complex f1_scalar(int two_s, Complex u, int sites, int p, const Couplings& c) {
    if (p % 2 == 0)
        throw std::invalid_argument("f1_scalar: only the odd-p closed forms are implemented");
    const double q = p + 1.0;
    const Complex w = q * u;
    const Complex am = q * c.alpha_minus, bm = q * c.beta_minus;
    const Complex ap = q * c.alpha_plus, bp = q * c.beta_plus;
    const Complex tt = q * (c.theta_minus - c.theta_plus);
    const Complex core =
        ch(am) * ch(bm) * ch(ap) * ch(bp) * sh(w) * sh(w) -
        sh(am) * sh(bm) * sh(ap) * sh(bp) * ch(w) * ch(w);
    const Complex mixed = ch(tt) * sh(w) * sh(w) * ch(w) * ch(w);
    const double pw = std::pow(2.0, 3.0 - 2.0 * p);
    if (two_s % 2 == 1) {
        const double signN = (sites % 2 == 0) ? 1.0 : -1.0;  // (-1)^N
        return -pw * (core + signN * mixed);
    }
    const double signN1 = (sites % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N+1}
    return signN1 * pw * (core + mixed);
}

inline Complex f_scalar(int two_s, Complex u, int sites, int p, const Couplings& c) {
    return f0_scalar(two_s, u, sites, p) * f1_scalar(two_s, u, sites, p, c);
}

inline Complex f_scalar(int two_s, Complex u, const ModelParams& mp) {
    return f_scalar(two_s, u, mp.sites, mp.p, Couplings::of(mp));
}

// || t^{(j-1/2,s)}(u-j eta) t^{(1/2,s)}(u) - t^{(j,s)}(u-(j-1/2) eta)
//    - delta^{(s)}(u-eta) t^{(j-1,s)}(u-(j+1/2) eta) ||
inline double fusion_residual(int two_j, int two_s, Complex u, int sites, const Couplings& c) {
    if (two_j < 2) throw std::invalid_argument("fusion_residual: needs j >= 1");
    const Complex e = c.eta;
    const double j = 0.5 * two_j;
    const CMatrix lhs = transfer(two_j - 1, two_s, u - j * e, sites, c) *
                        transfer(1, two_s, u, sites, c);
    const CMatrix rhs = transfer(two_j, two_s, u - (j - 0.5) * e, sites, c) +
                        delta(two_s, u - e, sites, c) *
                            transfer(two_j - 2, two_s, u - (j + 0.5) * e, sites, c);
    const double scale = std::max(max_abs(lhs), max_abs(rhs));
    return max_abs(lhs - rhs) / std::max(scale, 1e-300);
}

inline double fusion_residual(int two_j, int two_s, Complex u, int sites, const ModelParams& mp) {
    return fusion_residual(two_j, two_s, u, sites, Couplings::of(mp));
}

namespace detail {

// matchings (sets of pairwise non-adjacent edges) of the cycle 0-1-...-(n-1)-0
inline void cycle_matchings_rec(int n, int edge, std::uint32_t used, std::vector<int>& cur,
                                const std::function<void(const std::vector<int>&)>& emit) {
    if (edge == n) {
        emit(cur);
        return;
    }
    cycle_matchings_rec(n, edge + 1, used, cur, emit);
    const int a = edge, b = (edge + 1) % n;
    if (!(used & (1u << a)) && !(used & (1u << b))) {
        cur.push_back(edge);
        cycle_matchings_rec(n, edge + 1, used | (1u << a) | (1u << b), cur, emit);
        cur.pop_back();
    }
}

}  // namespace detail

// Order-(p+1) truncation identity: the alternating matching sum over the cycle
// of shifted transfer matrices equals f(u) * Id. Returns the relative residual.
inline double functional_relation_residual(int two_s, Complex u, int sites, int p,
                                           const Couplings& c) {
    const int n = p + 1;
    const Complex e = c.eta;
    std::vector<CMatrix> ts;
    std::vector<Complex> ds;
    for (int k = 0; k < n; ++k) {
        ts.push_back(transfer(1, two_s, u + static_cast<double>(k) * e, sites, c));
        ds.push_back(delta(two_s, u + static_cast<double>(k) * e, sites, c));
    }
    const Eigen::Index D = ts[0].rows();
    CMatrix lhs = CMatrix::Zero(D, D);
    std::vector<int> cur;
    detail::cycle_matchings_rec(n, 0, 0u, cur, [&](const std::vector<int>& m) {
        std::uint32_t used = 0;
        Complex coef(1.0, 0.0);
        for (int ei : m) {
            used |= (1u << ei) | (1u << ((ei + 1) % n));
            coef *= -ds[static_cast<std::size_t>(ei)];
        }
        CMatrix term = coef * CMatrix::Identity(D, D);
        for (int k = 0; k < n; ++k)
            if (!(used & (1u << k))) term = term * ts[static_cast<std::size_t>(k)];
        lhs += term;
    });
    const Complex f = f_scalar(two_s, u, sites, p, c);
    const double scale = std::max(max_abs(lhs), std::abs(f));
    return max_abs(lhs - f * CMatrix::Identity(D, D)) / std::max(scale, 1e-300);
}

inline double functional_relation_residual(int two_s, Complex u, const ModelParams& mp) {
    return functional_relation_residual(two_s, u, mp.sites, mp.p, Couplings::of(mp));
}

// Deviation of the eta = 0 rescaled fundamental transfer matrix from its
// closed-form scalar multiple of the identity.
inline double semiclassical_check(int two_s, Complex u, int sites, const ModelParams& mp) {
    Couplings c = Couplings::of(mp, Complex(0.0, 0.0));
    const CMatrix t = rescaled_fundamental(two_s, u, sites, c);
    const Complex scalar =
        8.0 * std::pow(sh(u), 2 * sites) *
        (-sh(c.alpha_minus) * ch(c.beta_minus) * sh(c.alpha_plus) * ch(c.beta_plus) * ch(u) * ch(u) +
         ch(c.alpha_minus) * sh(c.beta_minus) * ch(c.alpha_plus) * sh(c.beta_plus) * sh(u) * sh(u) -
         ch(c.theta_minus - c.theta_plus) * sh(u) * sh(u) * ch(u) * ch(u));
    const double scale = std::max(max_abs(t), std::abs(scalar));
    return max_abs(t - scalar * CMatrix::Identity(t.rows(), t.cols())) / std::max(scale, 1e-300);
}

}  // namespace openxxz
