#pragma once

#include <array>

#include "spin1.hpp"

namespace openxxz {

// Bundled benchmark data for the two reference parameter sets (spin-1 chain,
// N = 2): energies and the Q1 root multisets, printed to six significant
// figures.
struct ReferenceLevel {
    double energy;
    std::vector<Complex> roots1;
};

struct ReferenceTable {
    std::string name;
    BoundaryCase bc;
    ModelParams params;
    std::vector<ReferenceLevel> levels;
};

inline const ReferenceTable& reference_table1() {
    static const ReferenceTable t = [] {
        ReferenceTable rt;
        rt.name = "table1";
        rt.bc = BoundaryCase::I;
        rt.params.two_s = 2;
        rt.params.sites = 2;
        rt.params.p = 3;
        rt.params.beta_minus = 0.767;
        rt.params.beta_plus = 0.598;
        rt.params.theta_minus = rt.params.theta_plus = 0.573;
        rt.levels = {
            {-5.6483, {{0.426847, 2.19193}, {0.719676, 1.1781}, {0.0, 0.109151}, {0.426847, 0.164266}}},
            {-4.67715, {{0.106242, 2.28424}, {0.379199, 1.1781}, {1.05101, 1.1781}, {0.106242, 0.071957}}},
            {-2.75841, {{0.387014, 2.748893}, {0.0, 1.277532}, {0.932369, 1.1781}, {0.0, 0.0609966}}},
            {-1.98286, {{0.185547, 2.748893}, {0.0, 1.701637}, {0.915819, 1.1781}, {0.0, 0.138044}}},
            {-1.54571, {{0.171807, 3.046499}, {0.171807, 2.451287}, {0.0, 1.566925}, {0.916569, 1.1781}}},
            {-0.489791, {{0.781754, 1.921787}, {0.0, 1.599981}, {0.0, 0.0312436}, {0.781754, 0.434407}}},
            {-0.392189, {{0.0, 3.109568}, {0.779636, 1.920991}, {0.0, 1.554992}, {0.779636, 0.435203}}},
            {0.572634, {{0.0, 0.810472}, {0.624212, 1.1781}, {0.0, 0.010646}, {1.227343, 1.1781}}},
            {0.808501, {{0.0, 3.130312}, {0.0, 0.791507}, {0.618753, 1.1781}, {1.221033, 1.1781}}},
        };
        return rt;
    }();
    return t;
}

inline const ReferenceTable& reference_table2() {
    static const ReferenceTable t = [] {
        ReferenceTable rt;
        rt.name = "table2";
        rt.bc = BoundaryCase::II;
        rt.params.two_s = 2;
        rt.params.sites = 2;
        rt.params.p = 5;
        rt.params.alpha_minus = Complex(0.0, 0.854);
        rt.params.alpha_plus = Complex(0.0, 0.487);
        rt.params.theta_minus = rt.params.theta_plus = 0.482;
        rt.levels = {
            {-6.07709, {{0.0471453, 3.1415}, {0.0471453, 2.61809}, {0.0, 1.74867}, {0.74532, 1.309}, {0.0, 0.48742}}},
            {-4.65604, {{0.0, 2.65564}, {0.107433, 2.35618}, {0.321204, 1.309}, {0.0, 0.557414}, {0.107433, 0.261819}}},
            {-4.3506, {{0.00657235, 3.07819}, {0.00657235, 2.6814}, {0.0, 2.07693}, {0.12098, 1.93837}, {0.12098, 0.679624}}},
            {-2.55991, {{0.272597, 3.13706}, {0.272597, 2.62253}, {0.0, 2.13098}, {0.672718, 1.309}, {0.0, 0.862768}}},
            {-1.63092, {{0.326829, 2.87979}, {0.308315, 2.35663}, {0.0, 2.13093}, {0.0, 0.890835}, {0.308315, 0.261367}}},
            {0.0925845, {{0.248529, 2.87979}, {0.0, 1.76311}, {0.373083, 1.309}, {1.20497, 1.309}, {0.0, 0.487}}},
            {0.0971716, {{0.548694, 2.59187}, {0.0, 2.13099}, {0.518481, 1.309}, {0.0, 0.856853}, {0.548694, 0.0261235}}},
            {1.6757, {{0.70468, 2.87979}, {0.338436, 1.309}, {0.0, 0.854426}, {1.08306, 1.309}, {0.0, 0.487}}},
            {2.99332, {{0.0, 1.7639}, {0.273003, 1.309}, {0.720682, 1.309}, {0.0, 0.487}, {1.54847, 1.309}}},
        };
        return rt;
    }();
    return t;
}

inline const ReferenceTable& reference_table(const std::string& name) {
    if (name == "table1") return reference_table1();
    if (name == "table2") return reference_table2();
    throw std::invalid_argument("unknown reference table: " + name);
}

// best symmetry-aware matching of two root multisets; returns the worst
// per-root distance under the optimal assignment (exhaustive, sets are small)
inline double match_root_multisets(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                   Complex eta) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(a.size());
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (int i = 0; i < n && worst < best; ++i)
            worst = std::max(worst, root_distance(a[static_cast<std::size_t>(i)],
                                                  b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])],
                                                  eta));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace openxxz
