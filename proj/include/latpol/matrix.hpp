#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "latpol/vec.hpp"

namespace latpol {

// Dense integer matrix, row major.
struct IMat {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IMat() = default;
    IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static IMat identity(std::size_t n) {
        IMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IMat from_rows(const std::vector<IVec>& rws) {
        if (rws.empty()) return IMat();
        IMat m(rws.size(), rws[0].size());
        for (std::size_t i = 0; i < rws.size(); ++i) {
            if (rws[i].size() != m.cols) throw std::invalid_argument("from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rws[i][j];
        }
        return m;
    }

    static IMat from_cols(const std::vector<IVec>& cls) {
        if (cls.empty()) return IMat();
        IMat m(cls[0].size(), cls.size());
        for (std::size_t j = 0; j < cls.size(); ++j) {
            if (cls[j].size() != m.rows) throw std::invalid_argument("from_cols: ragged cols");
            for (std::size_t i = 0; i < m.rows; ++i) m.at(i, j) = cls[j][i];
        }
        return m;
    }

    IVec row(std::size_t i) const {
        IVec r(cols);
        for (std::size_t j = 0; j < cols; ++j) r[j] = at(i, j);
        return r;
    }

    IVec col(std::size_t j) const {
        IVec c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = at(i, j);
        return c;
    }

    bool operator==(const IMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline IMat mat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IMat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

inline IVec mat_vec(const IMat& m, const IVec& v) {
    if (m.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
    IVec r(m.rows, Int(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

// Fraction-free Bareiss elimination; exact for square integer matrices.
template <typename T>
T determinant_t(std::vector<T> m, std::size_t n) {
    if (n == 0) return T(1);
    T sign(1), prev(1);
    auto at = [&](std::size_t i, std::size_t j) -> T& { return m[i * n + j]; };
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return T(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

inline Int determinant(const IMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
    return determinant_t<Int>(m.a, m.rows);
}

// Row Hermite normal form: returns (H, U) with U unimodular, U*M = H, pivots
// positive, zeros below each pivot and reduced entries above it.
struct HnfResult {
    IMat h, u;
    std::size_t rank = 0;
};

inline HnfResult hermite_normal_form(IMat m) {
    const std::size_t r = m.rows, c = m.cols;
    IMat u = IMat::identity(r);
    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < c; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (std::size_t k = 0; k < r; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto row_addmul = [&](std::size_t i, std::size_t j, const Int& q) {
        // row_i += q * row_j
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) += q * m.at(j, k);
        for (std::size_t k = 0; k < r; ++k) u.at(i, k) += q * u.at(j, k);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = -m.at(i, k);
        for (std::size_t k = 0; k < r; ++k) u.at(i, k) = -u.at(i, k);
    };

    std::size_t pr = 0;
    for (std::size_t pc = 0; pc < c && pr < r; ++pc) {
        // Euclid on the column until one nonzero entry remains at/below pr.
        while (true) {
            std::size_t best = r;
            for (std::size_t i = pr; i < r; ++i)
                if (m.at(i, pc) != 0 && (best == r || abs_int(m.at(i, pc)) < abs_int(m.at(best, pc))))
                    best = i;
            if (best == r) break; // column is zero from pr down
            if (best != pr) row_swap(pr, best);
            bool clean = true;
            for (std::size_t i = pr + 1; i < r; ++i) {
                if (m.at(i, pc) == 0) continue;
                Int q = floor_div(m.at(i, pc), m.at(pr, pc));
                row_addmul(i, pr, -q);
                if (m.at(i, pc) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(pr, pc) == 0) continue;
        if (m.at(pr, pc) < 0) row_negate(pr);
        for (std::size_t i = 0; i < pr; ++i) {
            Int q = floor_div(m.at(i, pc), m.at(pr, pc));
            if (q != 0) row_addmul(i, pr, -q);
        }
        ++pr;
    }
    return {std::move(m), std::move(u), pr};
}

inline std::size_t rank_of(const IMat& m) { return hermite_normal_form(m).rank; }

inline std::size_t rank_of_rows(const std::vector<IVec>& rows) {
    if (rows.empty()) return 0;
    return rank_of(IMat::from_rows(rows));
}

// Smith normal form with the smallest-absolute-value pivot strategy:
// U*M*V = D, U and V unimodular, diagonal d_i >= 0 with d_i | d_{i+1}.
struct SnfResult {
    IMat d, u, v;
};

inline SnfResult smith_normal_form(IMat m) {
    const std::size_t r = m.rows, c = m.cols;
    IMat u = IMat::identity(r), v = IMat::identity(c);

    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < c; ++k) std::swap(m.at(i, k), m.at(j, k));
        for (std::size_t k = 0; k < r; ++k) std::swap(u.at(i, k), u.at(j, k));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < r; ++k) std::swap(m.at(k, i), m.at(k, j));
        for (std::size_t k = 0; k < c; ++k) std::swap(v.at(k, i), v.at(k, j));
    };
    auto row_addmul = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) += q * m.at(j, k);
        for (std::size_t k = 0; k < r; ++k) u.at(i, k) += q * u.at(j, k);
    };
    auto col_addmul = [&](std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t k = 0; k < r; ++k) m.at(k, i) += q * m.at(k, j);
        for (std::size_t k = 0; k < c; ++k) v.at(k, i) += q * v.at(k, j);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t k = 0; k < c; ++k) m.at(i, k) = -m.at(i, k);
        for (std::size_t k = 0; k < r; ++k) u.at(i, k) = -u.at(i, k);
    };

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block as pivot
            std::size_t bi = r, bj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (m.at(i, j) != 0 &&
                        (bi == r || abs_int(m.at(i, j)) < abs_int(m.at(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == r) { t = n; break; } // trailing block zero: done
            if (bi != t) row_swap(t, bi);
            if (bj != t) col_swap(t, bj);

            bool again = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (m.at(i, t) == 0) continue;
                Int q = floor_div(m.at(i, t), m.at(t, t));
                row_addmul(i, t, -q);
                if (m.at(i, t) != 0) again = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (m.at(t, j) == 0) continue;
                Int q = floor_div(m.at(t, j), m.at(t, t));
                col_addmul(j, t, -q);
                if (m.at(t, j) != 0) again = true;
            }
            if (again) continue;

            // enforce divisibility of the trailing block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < r && fixed; ++i)
                for (std::size_t j = t + 1; j < c && fixed; ++j)
                    if (m.at(i, j) % m.at(t, t) != 0) {
                        row_addmul(t, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (t >= n) break;
        if (m.at(t, t) < 0) row_negate(t);
    }
    return {std::move(m), std::move(u), std::move(v)};
}

// Exact solve M x = b over the rationals (square nonsingular M).
inline QVec solve_rational(const IMat& m, const IVec& b) {
    if (m.rows != m.cols || m.rows != b.size())
        throw std::invalid_argument("solve_rational: shape mismatch");
    const std::size_t n = m.rows;
    std::vector<Rat> w(n * (n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w[i * (n + 1) + j] = Rat(m.at(i, j));
        w[i * (n + 1) + n] = Rat(b[i]);
    }
    auto at = [&](std::size_t i, std::size_t j) -> Rat& { return w[i * (n + 1) + j]; };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && at(p, k) == 0) ++p;
        if (p == n) throw std::domain_error("solve_rational: singular matrix");
        if (p != k)
            for (std::size_t j = k; j <= n; ++j) std::swap(at(k, j), at(p, j));
        Rat piv = at(k, k);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || at(i, k) == 0) continue;
            Rat f = at(i, k) / piv;
            for (std::size_t j = k; j <= n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    QVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = at(i, n) / at(i, i);
    return x;
}

// Exact rational inverse (square nonsingular M).
inline std::vector<QVec> rational_inverse(const IMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("rational_inverse: not square");
    const std::size_t n = m.rows;
    std::vector<Rat> w(n * 2 * n);
    auto at = [&](std::size_t i, std::size_t j) -> Rat& { return w[i * 2 * n + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) at(i, j) = Rat(m.at(i, j));
        at(i, n + i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && at(p, k) == 0) ++p;
        if (p == n) throw std::domain_error("rational_inverse: singular matrix");
        if (p != k)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(k, j), at(p, j));
        Rat piv = at(k, k);
        for (std::size_t j = 0; j < 2 * n; ++j) at(k, j) /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || at(i, k) == 0) continue;
            Rat f = at(i, k);
            for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    std::vector<QVec> inv(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = at(i, n + j);
    return inv;
}

// Integer inverse of a unimodular matrix.
inline IMat unimodular_inverse(const IMat& m) {
    auto q = rational_inverse(m);
    IMat r(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (boost::multiprecision::denominator(q[i][j]) != 1)
                throw std::domain_error("unimodular_inverse: matrix is not unimodular");
            r.at(i, j) = Int(boost::multiprecision::numerator(q[i][j]));
        }
    return r;
}

// Basis of the integer kernel {x in Z^d : a.x = 0} of a primitive row a.
inline std::vector<IVec> integer_kernel_of_form(const IVec& alpha) {
    const std::size_t d = alpha.size();
    IMat m(1, d);
    for (std::size_t j = 0; j < d; ++j) m.at(0, j) = alpha[j];
    SnfResult s = smith_normal_form(m);
    if (s.d.at(0, 0) != 1)
        throw std::invalid_argument("integer_kernel_of_form: form is not primitive");
    // columns 1..d-1 of V span ker: a * V = (1, 0, ..., 0).
    std::vector<IVec> basis;
    basis.reserve(d - 1);
    for (std::size_t j = 1; j < d; ++j) basis.push_back(s.v.col(j));
    return basis;
}

} // namespace latpol
