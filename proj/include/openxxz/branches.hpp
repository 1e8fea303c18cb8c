#pragma once

#include <map>

#include "transfer.hpp"

namespace openxxz {

// Eigenvalue branches of the commuting family t^{(1/2,s)}(u), tracked through
// the common eigenbasis taken at a reference point. Eigenvector-overlap
// pairing (one similarity transform per sample) rather than eigenvalue
// sorting, so branches stay consistent across u.
class BranchFamily {
  public:
    BranchFamily(int two_s, int sites, const ModelParams& mp,
                 Complex anchor = Complex(0.3123, 0.0777))
        : two_s_(two_s), sites_(sites), couplings_(Couplings::of(mp)) {
        anchor_ = anchor;
        decompose(anchor_);
        // re-anchor if the reference point yields a badly conditioned basis
        for (int attempt = 0; attempt < 4 && leakage(anchor_ + Complex(0.41, -0.13)) > 1e-8;
             ++attempt) {
            anchor_ += Complex(0.217, 0.0531);
            decompose(anchor_);
        }
    }

    int count() const { return static_cast<int>(basis_.cols()); }

    // all branch values Lambda_i(u) of the (unrescaled) fundamental transfer matrix
    const std::vector<Complex>& lambdas(Complex u) const {
        auto it = cache_.find(Key{u.real(), u.imag()});
        if (it != cache_.end()) return it->second;
        const CMatrix t = transfer(1, two_s_, u, sites_, couplings_);
        const CMatrix d = inverse_ * t * basis_;
        std::vector<Complex> vals(static_cast<std::size_t>(d.rows()));
        for (Eigen::Index i = 0; i < d.rows(); ++i) vals[static_cast<std::size_t>(i)] = d(i, i);
        return cache_.emplace(Key{u.real(), u.imag()}, std::move(vals)).first->second;
    }

    Complex lambda(int branch, Complex u) const {
        return lambdas(u)[static_cast<std::size_t>(branch)];
    }

    // rescaled branch value of the fundamental transfer matrix
    Complex lambda_rescaled(int branch, Complex u) const {
        return lambda(branch, u) / std::pow(g_fundamental(two_s_, u, couplings_), 2 * sites_);
    }

    // off-diagonal leakage of t(u) in the reference eigenbasis
    double leakage(Complex u) const {
        const CMatrix t = transfer(1, two_s_, u, sites_, couplings_);
        const CMatrix d = inverse_ * t * basis_;
        CMatrix off = d;
        off.diagonal().setZero();
        return max_abs(off) / std::max(max_abs(d), 1e-300);
    }

    Complex anchor() const { return anchor_; }
    const Couplings& couplings() const { return couplings_; }
    int two_s() const { return two_s_; }
    int sites() const { return sites_; }

  private:
    void decompose(Complex u0) {
        const CMatrix t0 = transfer(1, two_s_, u0, sites_, couplings_);
        Eigen::ComplexEigenSolver<CMatrix> es(t0);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("BranchFamily: eigendecomposition failed");
        basis_ = es.eigenvectors();
        inverse_ = basis_.inverse();
        cache_.clear();
    }

    struct Key {
        double re, im;
        bool operator<(const Key& o) const {
            if (re != o.re) return re < o.re;
            return im < o.im;
        }
    };

    int two_s_;
    int sites_;
    Couplings couplings_;
    Complex anchor_;
    CMatrix basis_, inverse_;
    mutable std::map<Key, std::vector<Complex>> cache_;
};

}  // namespace openxxz
