#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace openxxz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;

// Hyperbolic shorthands. Thin wrappers over complex exponentials, no range
// reduction; all model formulas are i*pi-periodic so |Im u| <= pi is assumed.
inline Complex sh(Complex z) { return std::sinh(z); }
inline Complex ch(Complex z) { return std::cosh(z); }
inline Complex th(Complex z) { return std::tanh(z); }
inline Complex cth(Complex z) { return 1.0 / std::tanh(z); }

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const CMatrix& m, const char* what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_finite(m(i, j)))
                throw std::domain_error(std::string(what) + ": non-finite entry");
}

inline double max_abs(const CMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline std::size_t dim_product(const std::vector<int>& dims) {
    std::size_t d = 1;
    for (int x : dims) d *= static_cast<std::size_t>(x);
    return d;
}

// op acting on the tensor factors listed in `positions` (in op's own factor
// order), identity on the rest. Positions need not be adjacent.
inline CMatrix embed(const CMatrix& op, const std::vector<int>& dims,
                     const std::vector<int>& positions) {
    const int n = static_cast<int>(dims.size());
    std::size_t dop = 1;
    for (int p : positions) {
        if (p < 0 || p >= n) throw std::invalid_argument("embed: position out of range");
        dop *= static_cast<std::size_t>(dims[p]);
    }
    if (static_cast<std::size_t>(op.rows()) != dop || static_cast<std::size_t>(op.cols()) != dop)
        throw std::invalid_argument("embed: operator dimension does not match named factors");

    std::vector<int> perm = positions;
    for (int i = 0; i < n; ++i) {
        bool used = false;
        for (int p : positions) used = used || (p == i);
        if (!used) perm.push_back(i);
    }
    const std::size_t D = dim_product(dims);
    const std::size_t drest = D / dop;

    // strides of each factor in the standard (row-major multi-index) layout
    std::vector<std::size_t> stride(n);
    std::size_t acc = 1;
    for (int i = n - 1; i >= 0; --i) {
        stride[static_cast<std::size_t>(i)] = acc;
        acc *= static_cast<std::size_t>(dims[static_cast<std::size_t>(i)]);
    }
    // map: permuted multi-index -> standard flat index
    std::vector<std::size_t> to_std(D);
    std::vector<int> idx(n, 0);
    for (std::size_t k = 0; k < D; ++k) {
        std::size_t flat = 0;
        std::size_t rem = k;
        for (int i = n - 1; i >= 0; --i) {
            const int axis = perm[static_cast<std::size_t>(i)];
            const std::size_t d = static_cast<std::size_t>(dims[static_cast<std::size_t>(axis)]);
            flat += (rem % d) * stride[static_cast<std::size_t>(axis)];
            rem /= d;
        }
        to_std[k] = flat;
    }
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(D), static_cast<Eigen::Index>(D));
    for (std::size_t i = 0; i < dop; ++i)
        for (std::size_t j = 0; j < dop; ++j) {
            const Complex v = op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (v == Complex(0.0, 0.0)) continue;
            for (std::size_t r = 0; r < drest; ++r)
                out(static_cast<Eigen::Index>(to_std[i * drest + r]),
                    static_cast<Eigen::Index>(to_std[j * drest + r])) += v;
        }
    return out;
}

// permutation operator swapping qubit factors i and j of (C^2)^{x n}
inline CMatrix perm_op(int n, int i, int j) {
    const std::size_t d = std::size_t(1) << n;
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
        const int bi = static_cast<int>((b >> (n - 1 - i)) & 1u);
        const int bj = static_cast<int>((b >> (n - 1 - j)) & 1u);
        std::size_t b2 = b;
        b2 &= ~((std::size_t(1) << (n - 1 - i)) | (std::size_t(1) << (n - 1 - j)));
        b2 |= static_cast<std::size_t>(bj) << (n - 1 - i);
        b2 |= static_cast<std::size_t>(bi) << (n - 1 - j);
        out(static_cast<Eigen::Index>(b2), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return out;
}

// trace over the leading factor of dimension daux
inline CMatrix partial_trace_first(const CMatrix& m, int daux) {
    const Eigen::Index D = m.rows() / daux;
    CMatrix out = CMatrix::Zero(D, D);
    for (int a = 0; a < daux; ++a)
        out += m.block(a * D, a * D, D, D);
    return out;
}

}  // namespace openxxz
