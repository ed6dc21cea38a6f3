#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "latpol/polytope.hpp"

namespace latpol {

// System of affine inequalities alpha.x + c >= 0 over Z^d.
struct IneqSystem {
    std::size_t d = 0;
    std::vector<IVec> alpha;
    std::vector<Int> c;

    void add(IVec a, Int cc) {
        alpha.push_back(std::move(a));
        c.push_back(std::move(cc));
    }
};

// Inclusive coordinate box; empty when lo > hi anywhere.
struct IBox {
    IVec lo, hi;
};

namespace detail {

template <typename T>
struct ScanData {
    std::size_t d = 0, m = 0;
    std::vector<T> A; // m x d row major
    std::vector<T> c; // m
    std::vector<T> lo, hi;
};

// Depth-first scan of the box in lexicographic order, pruning with interval
// propagation: at each level the feasibility interval of every remaining
// coordinate is tightened from the inequality tails; the innermost level is
// exact, so emitted points need no final check.
template <typename T, typename Emit>
class Scanner {
  public:
    Scanner(const ScanData<T>& s, Emit& emit)
        : S(s),
          ivlo_((s.d + 1) * s.d),
          ivhi_((s.d + 1) * s.d),
          rem_((s.d + 1) * (s.m ? s.m : 1)),
          cur_(s.d),
          emit_(emit) {}

    // false if the emitter aborted the scan
    bool run() {
        for (std::size_t j = 0; j < S.d; ++j) {
            ivlo_[j] = S.lo[j];
            ivhi_[j] = S.hi[j];
        }
        for (std::size_t i = 0; i < S.m; ++i) rem_[i] = S.c[i];
        return rec(0);
    }

  private:
    const ScanData<T>& S;
    std::vector<T> ivlo_, ivhi_, rem_, cur_;
    Emit& emit_;

    // Tighten intervals of coordinates [k, d); false when provably infeasible.
    bool refine(std::size_t k) {
        const std::size_t d = S.d, m = S.m;
        T* lo = ivlo_.data() + k * d;
        T* hi = ivhi_.data() + k * d;
        const T* rem = rem_.data() + k * (m ? m : 1);
        for (std::size_t j = k; j < d; ++j)
            if (lo[j] > hi[j]) return false;
        for (int round = 0; round < 2; ++round) {
            bool changed = false;
            for (std::size_t i = 0; i < m; ++i) {
                const T* a = S.A.data() + i * d;
                T total(0);
                bool any = false;
                for (std::size_t l = k; l < d; ++l) {
                    if (a[l] == 0) continue;
                    any = true;
                    total += a[l] > 0 ? T(a[l] * hi[l]) : T(a[l] * lo[l]);
                }
                if (!any) {
                    if (rem[i] < 0) return false;
                    continue;
                }
                if (rem[i] + total < 0) return false;
                for (std::size_t l = k; l < d; ++l) {
                    if (a[l] == 0) continue;
                    T own = a[l] > 0 ? T(a[l] * hi[l]) : T(a[l] * lo[l]);
                    T rhs = -rem[i] - (total - own);
                    if (a[l] > 0) {
                        T nl = ceil_div(rhs, a[l]);
                        if (nl > lo[l]) {
                            lo[l] = nl;
                            changed = true;
                            if (lo[l] > hi[l]) return false;
                        }
                    } else {
                        T nh = floor_div(rhs, a[l]);
                        if (nh < hi[l]) {
                            hi[l] = nh;
                            changed = true;
                            if (lo[l] > hi[l]) return false;
                        }
                    }
                }
            }
            if (!changed) break;
        }
        return true;
    }

    bool rec(std::size_t k) {
        if (!refine(k)) return true;
        const std::size_t d = S.d, m = S.m;
        const T* lo = ivlo_.data() + k * d;
        const T* hi = ivhi_.data() + k * d;
        if (k + 1 == d) {
            for (T x = lo[k]; x <= hi[k]; ++x) {
                cur_[k] = x;
                if (!emit_(cur_)) return false;
            }
            return true;
        }
        const T* prem = rem_.data() + k * (m ? m : 1);
        T* crem = rem_.data() + (k + 1) * (m ? m : 1);
        T* clo = ivlo_.data() + (k + 1) * d;
        T* chi = ivhi_.data() + (k + 1) * d;
        for (T x = lo[k]; x <= hi[k]; ++x) {
            cur_[k] = x;
            for (std::size_t i = 0; i < m; ++i) crem[i] = prem[i] + S.A[i * d + k] * x;
            for (std::size_t j = k + 1; j < d; ++j) {
                clo[j] = lo[j];
                chi[j] = hi[j];
            }
            if (!rec(k + 1)) return false;
        }
        return true;
    }
};

inline bool scan_fits_int64(const IneqSystem& sys, const IBox& box) {
    Int worst = 0;
    for (std::size_t j = 0; j < sys.d; ++j) {
        Int b = std::max(abs_int(box.lo[j]), abs_int(box.hi[j]));
        if (b > worst) worst = b;
        if (b >= (Int(1) << 60)) return false;
    }
    Int cap = Int(1) << 61;
    for (std::size_t i = 0; i < sys.alpha.size(); ++i) {
        Int acc = abs_int(sys.c[i]);
        for (std::size_t j = 0; j < sys.d; ++j) acc += abs_int(sys.alpha[i][j]) * worst;
        if (4 * acc >= cap) return false;
    }
    return true;
}

template <typename T>
ScanData<T> make_scan_data(const IneqSystem& sys, const IBox& box) {
    ScanData<T> s;
    s.d = sys.d;
    s.m = sys.alpha.size();
    s.A.resize(s.m * s.d);
    s.c.resize(s.m);
    s.lo.resize(s.d);
    s.hi.resize(s.d);
    for (std::size_t i = 0; i < s.m; ++i) {
        s.c[i] = to_scalar<T>(sys.c[i]);
        for (std::size_t j = 0; j < s.d; ++j) s.A[i * s.d + j] = to_scalar<T>(sys.alpha[i][j]);
    }
    for (std::size_t j = 0; j < s.d; ++j) {
        s.lo[j] = to_scalar<T>(box.lo[j]);
        s.hi[j] = to_scalar<T>(box.hi[j]);
    }
    return s;
}

} // namespace detail

// Visit every lattice point of the box satisfying the system, in ascending
// lexicographic order. The emitter returns false to abort; so does the scan.
template <typename Emit>
bool scan_system(const IneqSystem& sys, const IBox& box, Emit&& emit) {
    if (box.lo.size() != sys.d || box.hi.size() != sys.d)
        throw std::invalid_argument("scan_system: box/system dimension mismatch");
    for (std::size_t j = 0; j < sys.d; ++j)
        if (box.lo[j] > box.hi[j]) return true;
    if (detail::scan_fits_int64(sys, box)) {
        auto data = detail::make_scan_data<std::int64_t>(sys, box);
        IVec pt(sys.d);
        auto wrap = [&](const std::vector<std::int64_t>& x) {
            for (std::size_t j = 0; j < sys.d; ++j) pt[j] = x[j];
            return emit(pt);
        };
        detail::Scanner<std::int64_t, decltype(wrap)> sc(data, wrap);
        return sc.run();
    }
    auto data = detail::make_scan_data<Int>(sys, box);
    auto wrap = [&](const std::vector<Int>& x) { return emit(x); };
    detail::Scanner<Int, decltype(wrap)> sc(data, wrap);
    return sc.run();
}

inline IneqSystem system_of(const LatticePolytope& P, const Int& dilation = 1) {
    IneqSystem sys;
    sys.d = P.dim();
    for (const auto& f : P.facets()) sys.add(f.alpha, f.beta * dilation);
    return sys;
}

inline IneqSystem system_relaxed(const LatticePolytope& P, const std::vector<Int>& relax) {
    if (relax.size() != P.facets().size())
        throw std::invalid_argument("system_relaxed: relax size mismatch");
    IneqSystem sys;
    sys.d = P.dim();
    for (std::size_t i = 0; i < P.facets().size(); ++i)
        sys.add(P.facets()[i].alpha, P.facets()[i].beta + relax[i]);
    return sys;
}

inline IBox box_of_points(const std::vector<IVec>& pts, const Int& dilation = 1) {
    IBox b;
    b.lo = scale(dilation, pts.at(0));
    b.hi = b.lo;
    for (const IVec& p : pts) {
        for (std::size_t j = 0; j < p.size(); ++j) {
            Int v = dilation * p[j];
            if (v < b.lo[j]) b.lo[j] = v;
            if (v > b.hi[j]) b.hi[j] = v;
        }
    }
    return b;
}

inline IBox box_of(const LatticePolytope& P, const Int& dilation = 1) {
    return box_of_points(P.vertices(), dilation);
}

namespace detail {

// Exact bounding box of {x : alpha_F.x + beta_F + relax_F >= 0} by rational
// vertex enumeration over facet d-subsets. The region is bounded because it
// shares the (complete) normal fan of P.
inline std::optional<IBox> basic_solution_box(const LatticePolytope& P,
                                              const std::vector<Int>& relax) {
    const std::size_t d = P.dim(), m = P.facets().size();
    if (d == 0 || m < d) return std::nullopt;
    // combination count guard
    double combos = 1;
    for (std::size_t i = 0; i < d; ++i) combos *= double(m - i) / double(i + 1);
    if (combos > 20000) return std::nullopt;

    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    std::vector<Rat> mins(d), maxs(d);
    bool found = false;
    while (true) {
        IMat A(d, d);
        IVec rhs(d);
        for (std::size_t r = 0; r < d; ++r) {
            const auto& f = P.facets()[idx[r]];
            for (std::size_t j = 0; j < d; ++j) A.at(r, j) = f.alpha[j];
            rhs[r] = -f.beta - relax[idx[r]];
        }
        if (determinant(A) != 0) {
            QVec x = solve_rational(A, rhs);
            bool feasible = true;
            for (std::size_t i = 0; i < m && feasible; ++i) {
                Rat v(P.facets()[i].beta + relax[i]);
                for (std::size_t j = 0; j < d; ++j) v += Rat(P.facets()[i].alpha[j]) * x[j];
                if (v < 0) feasible = false;
            }
            if (feasible) {
                for (std::size_t j = 0; j < d; ++j) {
                    if (!found || x[j] < mins[j]) mins[j] = x[j];
                    if (!found || x[j] > maxs[j]) maxs[j] = x[j];
                }
                found = true;
            }
        }
        // next combination
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (idx[i] != i + m - d) {
                ++idx[i];
                for (std::size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) {
                if (!found) throw std::logic_error("basic_solution_box: region has no vertex");
                IBox b;
                b.lo.resize(d);
                b.hi.resize(d);
                for (std::size_t j = 0; j < d; ++j) {
                    b.lo[j] = rat_ceil(mins[j]);
                    b.hi[j] = rat_floor(maxs[j]);
                }
                return b;
            }
        }
    }
}

// Sound fallback: the relaxed region lies inside the dilation of P about its
// vertex centroid c by 1 + relax_max / min_F ht_F(c).
inline IBox centroid_scaled_box(const LatticePolytope& P, const Int& relax_max) {
    const std::size_t d = P.dim();
    const std::size_t n = P.vertices().size();
    QVec c(d, Rat(0));
    for (const IVec& v : P.vertices())
        for (std::size_t j = 0; j < d; ++j) c[j] += Rat(v[j]);
    for (std::size_t j = 0; j < d; ++j) c[j] /= Rat(static_cast<long>(n));
    Rat r(-1);
    for (const auto& f : P.facets()) {
        Rat h(f.beta);
        for (std::size_t j = 0; j < d; ++j) h += Rat(f.alpha[j]) * c[j];
        if (r < 0 || h < r) r = h;
    }
    if (r <= 0) throw std::logic_error("centroid_scaled_box: degenerate interior point");
    Rat lambda = Rat(1) + Rat(relax_max) / r;
    IBox box = box_of(P);
    IBox out;
    out.lo.resize(d);
    out.hi.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        out.lo[j] = rat_ceil(c[j] + lambda * (Rat(box.lo[j]) - c[j]));
        out.hi[j] = rat_floor(c[j] + lambda * (Rat(box.hi[j]) - c[j]));
    }
    return out;
}

} // namespace detail

// Bounding box of the per-facet relaxed region of P.
inline IBox relaxed_box(const LatticePolytope& P, const std::vector<Int>& relax) {
    if (auto b = detail::basic_solution_box(P, relax)) return *b;
    Int mx = 0;
    for (const Int& r : relax) mx = std::max(mx, r);
    return detail::centroid_scaled_box(P, mx);
}

// All lattice points of P, ascending lexicographic; cached on P.
inline const std::vector<IVec>& lattice_points(const LatticePolytope& P) {
    auto& cache = P.cache();
    std::call_once(cache.pts_once, [&] {
        std::vector<IVec> pts;
        scan_system(system_of(P), box_of(P), [&](const IVec& x) {
            pts.push_back(x);
            return true;
        });
        cache.pts = std::move(pts);
    });
    return cache.pts;
}

// Lattice points of the dilation k*P, ascending lexicographic; not cached.
inline std::vector<IVec> lattice_points_dilated(const LatticePolytope& P, const Int& k) {
    if (k < 0) throw std::invalid_argument("lattice_points_dilated: negative dilation");
    if (k == 0) return {IVec(P.dim(), Int(0))};
    std::vector<IVec> pts;
    scan_system(system_of(P, k), box_of(P, k), [&](const IVec& x) {
        pts.push_back(x);
        return true;
    });
    return pts;
}

// Lattice points at height exactly j over P (the j-th stratum; j = 0 gives
// L(P) itself).
inline std::vector<IVec> stratum(const LatticePolytope& P, const Int& j) {
    if (j < 0) throw std::invalid_argument("stratum: negative height");
    if (j == 0) return lattice_points(P);
    std::vector<Int> relax(P.facets().size(), j);
    std::vector<IVec> pts;
    scan_system(system_relaxed(P, relax), relaxed_box(P, relax), [&](const IVec& x) {
        if (P.height_over(x) == j) pts.push_back(x);
        return true;
    });
    return pts;
}

inline std::size_t lattice_point_count(const LatticePolytope& P) {
    return lattice_points(P).size();
}

} // namespace latpol
