#pragma once

#include <optional>

#include "latpol/enumerate.hpp"

namespace latpol {

struct NormalityVerdict {
    bool normal = true;
    int level = 0;                // smallest dilation with a gap, if any
    std::optional<IVec> witness;  // lex-least point of level*P not expressible
};

namespace detail {

inline std::vector<IVec> sumset(const std::vector<IVec>& a, const std::vector<IVec>& b) {
    std::vector<IVec> out;
    out.reserve(a.size() * b.size());
    for (const IVec& p : a)
        for (const IVec& q : b) out.push_back(add(p, q));
    sort_unique(out);
    return out;
}

} // namespace detail

// A lattice polytope is normal when every point of kP is a sum of k points of
// P. Degrees above d-1 come for free, so only k = 2..d-1 are tested, each
// against the one-step decomposition x = p + y with p in L(P), y in (k-1)P.
inline NormalityVerdict is_normal(const LatticePolytope& P) {
    const std::size_t d = P.dim();
    const auto& L1 = lattice_points(P);
    constexpr std::size_t kSumsetCap = 50'000'000;
    for (int k = 2; k + 1 <= static_cast<int>(d); ++k) {
        std::vector<IVec> target = lattice_points_dilated(P, k);
        std::vector<IVec> lower = k == 2 ? L1 : lattice_points_dilated(P, k - 1);
        if (L1.size() * lower.size() <= kSumsetCap) {
            std::vector<IVec> sums = detail::sumset(L1, lower);
            for (const IVec& x : target)
                if (!sorted_contains(sums, x)) return {false, k, x};
        } else {
            for (const IVec& x : target) {
                bool hit = false;
                for (const IVec& p : L1) {
                    if (P.contains_dilated(sub(x, p), k - 1)) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) return {false, k, x};
            }
        }
    }
    return {};
}

// Oracle variant: checks degrees 2..kmax directly against iterated sumsets
// L(P) + ... + L(P), with no degree shortcut.
inline NormalityVerdict is_normal_bruteforce(const LatticePolytope& P, int kmax) {
    const auto& L1 = lattice_points(P);
    std::vector<IVec> sums = L1;
    for (int k = 2; k <= kmax; ++k) {
        sums = detail::sumset(sums, L1);
        for (const IVec& x : lattice_points_dilated(P, k))
            if (!sorted_contains(sums, x)) return {false, k, x};
    }
    return {};
}

} // namespace latpol
