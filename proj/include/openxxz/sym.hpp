#pragma once

#include "core.hpp"

namespace openxxz {

// Symmetric projector on (C^2)^{x n}: (1/n!) * prod_{k=1..n} sum_{l=1..k} P_{l,k},
// with P_{k,k} = 1. Projects onto the spin-(n/2) subspace of dimension n+1.
inline CMatrix symmetric_projector(int n) {
    if (n < 1) throw std::invalid_argument("symmetric_projector: n must be >= 1");
    const std::size_t d = std::size_t(1) << n;
    CMatrix P = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    double fact = 1.0;
    for (int k = 1; k <= n; ++k) {
        CMatrix s = CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (int l = 1; l < k; ++l) s += perm_op(n, l - 1, k - 1);
        P = P * s;
        fact *= k;
    }
    return P / fact;
}

// Isometry V: C^{n+1} -> (C^2)^{x n} with V^dag V = I and V V^dag = P^+.
// Columns are the normalized fixed-weight sums, ordered by weight (so the
// leading column is the highest-weight state, matching S^z = diag(s..-s)).
inline CMatrix symmetric_isometry(int n) {
    if (n < 1) throw std::invalid_argument("symmetric_isometry: n must be >= 1");
    const std::size_t d = std::size_t(1) << n;
    CMatrix V = CMatrix::Zero(static_cast<Eigen::Index>(d), n + 1);
    std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t b = 0; b < d; ++b) {
        int w = 0;
        for (int i = 0; i < n; ++i) w += static_cast<int>((b >> i) & 1u);
        V(static_cast<Eigen::Index>(b), w) = 1.0;
        ++count[static_cast<std::size_t>(w)];
    }
    for (int w = 0; w <= n; ++w)
        V.col(w) /= std::sqrt(static_cast<double>(count[static_cast<std::size_t>(w)]));
    return V;
}

}  // namespace openxxz
