#pragma once

#include <Eigen/SVD>
#include <functional>

#include "branches.hpp"

namespace openxxz {

// h^{(1)}(u) for the two solvable boundary cases. Case II differs from case I
// only by sh^2(u+eta) -> ch^2(u+eta).
inline Complex h1(Complex u, BoundaryCase bc, int two_s, int sites, const Couplings& c) {
    const Complex den = sh(2.0 * u + 3.0 * c.eta);
    if (std::abs(den) == 0.0) throw std::domain_error("h1: pole at sh(2u+3eta) = 0");
    Complex prod(1.0, 0.0);
    for (int k = 0; k <= two_s - 1; ++k) prod *= sh(u + (0.5 * two_s - k + 1.5) * c.eta);
    const Complex trig = (bc == BoundaryCase::I) ? sh(u + c.eta) * sh(u + c.eta)
                                                 : ch(u + c.eta) * ch(u + c.eta);
    return 4.0 * std::pow(prod, 2 * sites) * trig * sh(2.0 * u + 4.0 * c.eta) / den;
}

inline Complex h2(Complex u, BoundaryCase bc, int two_s, int sites, const Couplings& c) {
    return h1(-u - 2.0 * c.eta, bc, two_s, sites, c);
}

inline Complex h1(Complex u, BoundaryCase bc, const ModelParams& mp) {
    return h1(u, bc, mp.two_s, mp.sites, Couplings::of(mp));
}

inline Complex h2(Complex u, BoundaryCase bc, const ModelParams& mp) {
    return h2(u, bc, mp.two_s, mp.sites, Couplings::of(mp));
}

inline int m1_count(int two_s, int sites, int p) { return two_s * sites / 2 + (p + 1) / 2; }
inline int m2_count(int two_s, int sites, int p) { return m1_count(two_s, sites, p) - 1; }

// Residual of the closure condition tying f(u) to the h-functions:
// f = w prod_{even j} delta(u+j eta) + w^{-1} prod_{odd j} delta(u+j eta).
inline double w_condition_residual(Complex u, BoundaryCase bc, int two_s, int sites, int p,
                                   const Couplings& c) {
    Complex num(1.0, 0.0), den(1.0, 0.0), pe(1.0, 0.0), po(1.0, 0.0);
    for (int j = 1; j <= p; j += 2) num *= h2(u + static_cast<double>(j) * c.eta, bc, two_s, sites, c);
    for (int j = 0; j <= p - 1; j += 2) den *= h1(u + static_cast<double>(j) * c.eta, bc, two_s, sites, c);
    for (int j = 0; j <= p - 1; j += 2) pe *= delta(two_s, u + static_cast<double>(j) * c.eta, sites, c);
    for (int j = 1; j <= p; j += 2) po *= delta(two_s, u + static_cast<double>(j) * c.eta, sites, c);
    const Complex w = num / den;
    const Complex lhs = f_scalar(two_s, u, sites, p, c);
    const Complex rhs = w * pe + po / w;
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

// The (p+1) x (p+1) cyclic matrix whose vanishing determinant encodes the
// functional relations on an eigenvalue branch. Even rows carry the
// -delta/h couplings, odd rows the bare -h couplings; indices wrap mod p+1.
inline CMatrix m_matrix(Complex u, const std::function<Complex(Complex)>& lambda_branch,
                        BoundaryCase bc, int two_s, int sites, int p, const Couplings& c) {
    const int n = p + 1;
    const Complex e = c.eta;
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const Complex uk = u + static_cast<double>(k) * e;
        m(k, k) = lambda_branch(uk);
        if (k % 2 == 0) {
            m(k, (k + 1) % n) = -delta(two_s, uk, sites, c) / h1(uk, bc, two_s, sites, c);
            m(k, (k + n - 1) % n) =
                -delta(two_s, uk - e, sites, c) / h2(uk - e, bc, two_s, sites, c);
        } else {
            m(k, (k + n - 1) % n) = -h1(uk - e, bc, two_s, sites, c);
            m(k, (k + 1) % n) = -h2(uk, bc, two_s, sites, c);
        }
    }
    return m;
}

// Unit-norm right null vector of m. Requires the smallest singular value to be
// well-separated from the next one (ratio <= 0.1), otherwise the null
// direction is ambiguous at this sample point.
inline CVector null_vector(const CMatrix& m, double separation_ratio = 0.1) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index last = sv.size() - 1;
    if (sv(last - 1) <= 0.0 || sv(last) / sv(last - 1) > separation_ratio)
        throw std::runtime_error(
            "null_vector: null space ambiguous at this spectral point; sample elsewhere");
    return svd.matrixV().col(last);
}

// Q(u) = prod_k sh(u - u_k) sh(u + u_k + eta); a degree-M polynomial in
// x = ch(2u + eta) with roots x_k = ch(2 u_k + eta).
struct QFunction {
    std::vector<Complex> roots;
    Complex eta;

    Complex operator()(Complex u) const {
        Complex q(1.0, 0.0);
        for (Complex r : roots) q *= sh(u - r) * sh(u + r + eta);
        return q;
    }
};

struct BetheSolution {
    BoundaryCase bc = BoundaryCase::I;
    std::vector<Complex> roots1;  // zeros of Q1 (M1 of them)
    std::vector<Complex> roots2;  // zeros of Q2 (M2 of them)
    double bae_residual = 0.0;
    double tq_residual = 0.0;
    double fit_residual = 0.0;  // SVD fit quality of the Q polynomials
    int level_index = -1;
    bool flagged = false;       // set when some tolerance was not met
    std::string diagnostic;

    QFunction q1(Complex eta) const { return QFunction{roots1, eta}; }
    QFunction q2(Complex eta) const { return QFunction{roots2, eta}; }
};

enum class TQForm { TQ1, TQ2 };

// Eigenvalue reconstruction from the two-term relations. TQ1 divides by Q1(u),
// TQ2 by Q2(u).
inline Complex lambda_from_tq(Complex u, const BetheSolution& sol, TQForm which, int two_s,
                              int sites, const Couplings& c) {
    const Complex e = c.eta;
    const QFunction q1 = sol.q1(e), q2 = sol.q2(e);
    if (which == TQForm::TQ1) {
        const Complex den = q1(u);
        if (std::abs(den) == 0.0)
            throw std::domain_error("lambda_from_tq: Q1 vanishes at u; shift the sample point");
        return delta(two_s, u, sites, c) / h1(u, sol.bc, two_s, sites, c) * q2(u + e) / den +
               delta(two_s, u - e, sites, c) / h2(u - e, sol.bc, two_s, sites, c) * q2(u - e) / den;
    }
    const Complex den = q2(u);
    if (std::abs(den) == 0.0)
        throw std::domain_error("lambda_from_tq: Q2 vanishes at u; shift the sample point");
    return h1(u - e, sol.bc, two_s, sites, c) * q1(u - e) / den +
           h2(u, sol.bc, two_s, sites, c) * q1(u + e) / den;
}

inline Complex lambda_from_tq(Complex u, const BetheSolution& sol, TQForm which,
                              const ModelParams& mp) {
    return lambda_from_tq(u, sol, which, mp.two_s, mp.sites, Couplings::of(mp));
}

namespace detail {

struct BaeRow {
    Complex t1, t2;     // the two cleared terms; equation is t1 + t2 = 0
    double gen_scale;   // generic magnitude of the row
};

inline double generic_q_magnitude(const QFunction& q) {
    return std::max(std::abs(q(Complex(0.777, 0.0))), std::abs(q(Complex(0.523, 0.211))));
}

inline std::vector<BaeRow> bae_rows(const std::vector<Complex>& r1,
                                    const std::vector<Complex>& r2, BoundaryCase bc, int two_s,
                                    int sites, const Couplings& c) {
    const Complex e = c.eta;
    const QFunction q1{r1, e}, q2{r2, e};
    const double qb1 = generic_q_magnitude(q1), qb2 = generic_q_magnitude(q2);
    std::vector<BaeRow> rows;
    rows.reserve(r1.size() + r2.size());
    for (Complex u : r1) {
        const Complex c1 = delta(two_s, u, sites, c) * h2(u - e, bc, two_s, sites, c);
        const Complex c2 = delta(two_s, u - e, sites, c) * h1(u, bc, two_s, sites, c);
        rows.push_back(BaeRow{c1 * q2(u + e), c2 * q2(u - e),
                              (std::abs(c1) + std::abs(c2)) * qb2});
    }
    for (Complex v : r2) {
        const Complex c1 = h1(v - e, bc, two_s, sites, c);
        const Complex c2 = h2(v, bc, two_s, sites, c);
        rows.push_back(BaeRow{c1 * q1(v - e), c2 * q1(v + e),
                              (std::abs(c1) + std::abs(c2)) * qb1});
    }
    return rows;
}

// Robust per-row residual: |t1+t2| / max(|t1|,|t2|,generic). Rows with both
// cleared terms identically zero are degenerate (0 = 0) and count as exact.
inline double robust_bae_residual(const std::vector<Complex>& r1, const std::vector<Complex>& r2,
                                  BoundaryCase bc, int two_s, int sites, const Couplings& c) {
    double worst = 0.0;
    for (const auto& row : bae_rows(r1, r2, bc, two_s, sites, c)) {
        const double sc = std::max({std::abs(row.t1), std::abs(row.t2), row.gen_scale});
        if (sc < 1e-250) continue;
        worst = std::max(worst, std::abs(row.t1 + row.t2) / sc);
    }
    return worst;
}

}  // namespace detail

// Printed ratio-form residual, max over both equation families of
// |LHS / RHS + 1| with the sign folded in. A genuine division by zero (a
// shifted root colliding with a Q zero while the paired term stays finite)
// raises with the colliding value; rows degenerate on both sides fall back to
// the cleared-form residual so string solutions report a finite number.
inline double bae_residual(const BetheSolution& sol, int two_s, int sites, const Couplings& c) {
    double worst = 0.0;
    const auto rows = detail::bae_rows(sol.roots1, sol.roots2, sol.bc, two_s, sites, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        const double a1 = std::abs(row.t1), a2 = std::abs(row.t2);
        const double tiny = 1e-12 * row.gen_scale;
        if (a2 > tiny) {
            worst = std::max(worst, std::abs(row.t1 / row.t2 + 1.0));
        } else if (a1 > tiny) {
            const Complex root = (i < sol.roots1.size())
                                     ? sol.roots1[i]
                                     : sol.roots2[i - sol.roots1.size()];
            throw std::domain_error(
                "bae_residual: shifted root collides with a Q zero near u = (" +
                std::to_string(root.real()) + ", " + std::to_string(root.imag()) + ")");
        } else {
            const double sc = std::max({a1, a2, row.gen_scale});
            if (sc > 1e-250) worst = std::max(worst, std::abs(row.t1 + row.t2) / sc);
        }
        ++i;
    }
    return worst;
}

inline double bae_residual(const BetheSolution& sol, const ModelParams& mp) {
    return bae_residual(sol, mp.two_s, mp.sites, Couplings::of(mp));
}

}  // namespace openxxz
