#pragma once

#include "core.hpp"

namespace openxxz {

enum class BoundaryCase { I, II };

inline const char* to_string(BoundaryCase c) { return c == BoundaryCase::I ? "I" : "II"; }

// Chain and boundary data. Spins are stored doubled (two_s = 2s) so that all
// half-integer arithmetic stays exact. The anisotropy eta = i*pi/(p+1) is
// always derived from p, never stored.
struct ModelParams {
    int two_s = 2;  // 2s: 1, 2, 3, ...
    int sites = 2;  // N
    int p = 3;      // eta = i*pi/(p+1)
    Complex alpha_minus{0.0, 0.0};
    Complex alpha_plus{0.0, 0.0};
    Complex beta_minus{0.0, 0.0};
    Complex beta_plus{0.0, 0.0};
    Complex theta_minus{0.0, 0.0};
    Complex theta_plus{0.0, 0.0};

    Complex eta() const { return Complex(0.0, pi / (p + 1)); }
    int site_dim() const { return two_s + 1; }
    long state_dim() const {
        long d = 1;
        for (int i = 0; i < sites; ++i) d *= site_dim();
        return d;
    }
};

// Bulk+boundary scalar data actually consumed by the operator builders.
// Carried separately from ModelParams so the semiclassical limit can be
// evaluated at eta = 0 directly.
struct Couplings {
    Complex eta;
    Complex alpha_minus, alpha_plus, beta_minus, beta_plus, theta_minus, theta_plus;

    static Couplings of(const ModelParams& mp) {
        return Couplings{mp.eta(),        mp.alpha_minus, mp.alpha_plus, mp.beta_minus,
                         mp.beta_plus,    mp.theta_minus, mp.theta_plus};
    }
    static Couplings of(const ModelParams& mp, Complex eta_override) {
        Couplings c = of(mp);
        c.eta = eta_override;
        return c;
    }
    // parameter swap used in the K^+ definition: (a-,b-,th-) -> (-a+,-b+,th+)
    Couplings plus_swapped() const {
        Couplings c = *this;
        c.alpha_minus = -alpha_plus;
        c.beta_minus = -beta_plus;
        c.theta_minus = theta_plus;
        return c;
    }
};

inline void validate_case(BoundaryCase c, const ModelParams& mp, double tol = 1e-12) {
    auto near_zero = [&](Complex z) { return std::abs(z) <= tol; };
    if (c == BoundaryCase::I) {
        if (!near_zero(mp.alpha_minus) || !near_zero(mp.alpha_plus))
            throw std::invalid_argument("case I requires alpha_minus = alpha_plus = 0");
    } else {
        if (!near_zero(mp.beta_minus) || !near_zero(mp.beta_plus))
            throw std::invalid_argument("case II requires beta_minus = beta_plus = 0");
    }
    if (std::abs(mp.theta_minus - mp.theta_plus) > tol)
        throw std::invalid_argument("cases I/II require theta_minus = theta_plus");
}

}  // namespace openxxz
