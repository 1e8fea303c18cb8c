#pragma once

#include <random>

#include "reference.hpp"

namespace openxxz {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string details;
};

struct VerifyOptions {
    int samples = 20;
    std::uint64_t seed = 12345;
    std::map<std::string, double> tol_override;
};

namespace detail {

class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}
    // generic spectral point, clear of the pole lattice (which sits on the
    // imaginary axis for eta = i pi/(p+1))
    Complex generic() {
        std::uniform_real_distribution<double> re(0.1, 1.2), im(-0.45, 0.45);
        return Complex(re(rng_), im(rng_));
    }

  private:
    std::mt19937_64 rng_;
};

inline double ybe_residual(int two_j, int two_k, int two_s, Complex u, Complex v,
                           const Couplings& c) {
    const std::vector<int> dims{two_j + 1, two_k + 1, two_s + 1};
    const CMatrix r12 = embed(fused_r(two_j, two_k, u - v, c), dims, {0, 1});
    const CMatrix r13 = embed(fused_r(two_j, two_s, u, c), dims, {0, 2});
    const CMatrix r23 = embed(fused_r(two_k, two_s, v, c), dims, {1, 2});
    const CMatrix lhs = r12 * r13 * r23;
    const CMatrix rhs = r23 * r13 * r12;
    return max_abs(lhs - rhs) / std::max(max_abs(lhs), 1e-300);
}

inline double bybe_residual(int two_j, int two_s, Complex u, Complex v, const Couplings& c) {
    const std::vector<int> dims{two_j + 1, two_s + 1};
    const CMatrix rm = embed(fused_r(two_j, two_s, u - v, c), dims, {0, 1});
    const CMatrix rp = embed(fused_r(two_j, two_s, u + v, c), dims, {0, 1});
    const CMatrix k1 = embed(fused_k(two_j, KSign::minus, u, c), dims, {0});
    const CMatrix k2 = embed(fused_k(two_s, KSign::minus, v, c), dims, {1});
    const CMatrix lhs = rm * k1 * rp * k2;
    const CMatrix rhs = k2 * rp * k1 * rm;
    return max_abs(lhs - rhs) / std::max(max_abs(lhs), 1e-300);
}

}  // namespace detail

// The named identity suites of the model construction. Each entry reports the
// worst relative residual over the sampled spectral points.
inline std::vector<CheckResult> run_identity_suites(const ModelParams& mp,
                                                    const VerifyOptions& opt = VerifyOptions{}) {
    const Couplings c = Couplings::of(mp);
    const int two_s = mp.two_s;
    const int sites = mp.sites;
    detail::PointSampler sample(opt.seed);
    std::vector<CheckResult> out;
    auto tol_of = [&](const std::string& name, double def) {
        auto it = opt.tol_override.find(name);
        return it == opt.tol_override.end() ? def : it->second;
    };
    auto record = [&](const std::string& name, double res, double def_tol,
                      const std::string& details = "") {
        const double tol = tol_of(name, def_tol);
        out.push_back(CheckResult{name, res, tol, res <= tol, details});
    };

    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples / 2; ++t) {
            const Complex u = sample.generic(), v = sample.generic();
            for (int a : {1, 2})
                for (int b : {1, 2})
                    for (int s : {1, 2})
                        worst = std::max(worst, detail::ybe_residual(a, b, s, u, v, c));
        }
        record("yang_baxter", worst, 1e-10, "all spins <= 1");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples / 2; ++t) {
            const Complex u = sample.generic(), v = sample.generic();
            for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {2, 2}})
                worst = std::max(worst, detail::bybe_residual(a, b, u, v, c));
        }
        record("boundary_yang_baxter", worst, 1e-10, "(j,s) in {(1/2,1/2),(1/2,1),(1,1)}");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 3; ++t) {
            const Complex u = sample.generic(), v = sample.generic();
            const CMatrix a = transfer(1, two_s, u, sites, c);
            for (int two_jp : {1, 2}) {
                const CMatrix b = transfer(two_jp, two_s, v, sites, c);
                worst = std::max(worst,
                                 max_abs(a * b - b * a) / std::max(max_abs(a * b), 1e-300));
            }
        }
        record("commutativity", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 4; ++t) {
            const Complex u = sample.generic();
            const CMatrix a = rescaled_fundamental(two_s, u, sites, c);
            const CMatrix b = rescaled_fundamental(two_s, u + Complex(0.0, pi), sites, c);
            worst = std::max(worst, max_abs(a - b) / std::max(max_abs(a), 1e-300));
        }
        record("periodicity", worst, 1e-11);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 4; ++t) {
            const Complex u = sample.generic();
            const CMatrix a = rescaled_fundamental(two_s, u, sites, c);
            const CMatrix b = rescaled_fundamental(two_s, -u - c.eta, sites, c);
            worst = std::max(worst, max_abs(a - b) / std::max(max_abs(a), 1e-300));
        }
        record("crossing", worst, 1e-11);
    }
    {
        const CMatrix t0 = rescaled_fundamental(two_s, Complex(0.0, 0.0), sites, c);
        const Complex value = -8.0 * std::pow(sh((0.5 * two_s + 0.5) * c.eta), 2 * sites) *
                              ch(c.eta) * sh(c.alpha_minus) * ch(c.beta_minus) *
                              sh(c.alpha_plus) * ch(c.beta_plus);
        const double scale = std::max({max_abs(t0), std::abs(value), 1.0});
        const double res =
            max_abs(t0 - value * CMatrix::Identity(t0.rows(), t0.cols())) / scale;
        record("initial_condition", res, 1e-10);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 4; ++t)
            worst = std::max(worst,
                             semiclassical_check(two_s, sample.generic().real(), sites, mp));
        record("semiclassical", worst, 1e-10);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 3; ++t) {
            const Complex u = sample.generic();
            worst = std::max(worst, fusion_residual(2, two_s, u, sites, c));
            worst = std::max(worst, fusion_residual(3, two_s, u, sites, c));
        }
        record("fusion_hierarchy", worst, 1e-8, "j = 1 and j = 3/2");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < 3; ++t)
            worst = std::max(worst,
                             functional_relation_residual(two_s, sample.generic(), sites, mp.p, c));
        record("functional_relation", worst, 1e-8, "order p+1");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples; ++t) {
            const Complex u = sample.generic();
            const Complex f = f_scalar(two_s, u, sites, mp.p, c);
            const double sc = std::max(std::abs(f), 1e-300);
            worst = std::max(worst, std::abs(f_scalar(two_s, u + c.eta, sites, mp.p, c) - f) / sc);
            worst = std::max(worst, std::abs(f_scalar(two_s, -u, sites, mp.p, c) - f) / sc);
        }
        record("f_symmetry", worst, 1e-10, "f(u+eta) = f(u) = f(-u)");
    }
    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples; ++t) {
            const Complex u = sample.generic();
            Complex prod(1.0, 0.0);
            for (int j = 0; j <= mp.p; ++j)
                prod *= delta0(two_s, u + static_cast<double>(j) * c.eta, sites, c);
            const Complex f0sq = f0_scalar(two_s, u, sites, mp.p) * f0_scalar(two_s, u, sites, mp.p);
            worst = std::max(worst, std::abs(f0sq / prod - 1.0));
        }
        record("f0_squared_identity", worst, 1e-9);
    }
    {
        double worst = 0.0;
        for (int t = 0; t < opt.samples; ++t) {
            const Complex u = sample.generic();
            const Complex a = delta(two_s, u, sites, c);
            const Complex b = delta(two_s, -u - 2.0 * c.eta, sites, c);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
        }
        record("delta_crossing", worst, 1e-11);
    }
    return out;
}

}  // namespace openxxz
