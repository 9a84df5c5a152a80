#pragma once

#include <optional>
#include <vector>

#include "ncline/poly.hpp"

namespace ncline {

// Dense matrix over a tower field. Vectors are rows throughout the library:
// a linear map is applied as v -> v * M.
struct Mat {
    const FieldTower* tw = nullptr;
    int nr = 0, nc = 0;
    std::vector<FieldElement> a;

    Mat() = default;
    Mat(const FieldTower* t, int r, int c) : tw(t), nr(r), nc(c), a(r * c, t->zero()) {}

    static Mat identity(const FieldTower* t, int n) {
        Mat m(t, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = t->one();
        return m;
    }
    static Mat from_rows(const FieldTower* t, const std::vector<std::vector<FieldElement>>& rows) {
        Mat m(t, (int)rows.size(), rows.empty() ? 0 : (int)rows[0].size());
        for (int i = 0; i < m.nr; ++i)
            for (int j = 0; j < m.nc; ++j) m.at(i, j) = rows[i][j];
        return m;
    }

    FieldElement& at(int i, int j) { return a[i * nc + j]; }
    const FieldElement& at(int i, int j) const { return a[i * nc + j]; }

    std::vector<FieldElement> row(int i) const {
        return std::vector<FieldElement>(a.begin() + i * nc, a.begin() + (i + 1) * nc);
    }
    void set_row(int i, const std::vector<FieldElement>& r) {
        for (int j = 0; j < nc; ++j) at(i, j) = r[j];
    }

    bool operator==(const Mat& o) const {
        return tw == o.tw && nr == o.nr && nc == o.nc && a == o.a;
    }

    bool is_zero() const {
        for (auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r(tw, nr, o.nc);
        for (int i = 0; i < nr; ++i)
            for (int k = 0; k < nc; ++k) {
                const FieldElement& x = at(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.nc; ++j) r.at(i, j) = r.at(i, j) + x * o.at(k, j);
            }
        return r;
    }
    Mat scaled(const FieldElement& s) const {
        Mat r = *this;
        for (auto& x : r.a) x = x * s;
        return r;
    }
    Mat transpose() const {
        Mat r(tw, nc, nr);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) r.at(j, i) = at(i, j);
        return r;
    }
    Mat pow(int e) const {
        Mat acc = identity(tw, nr), b = *this;
        while (e > 0) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        return acc;
    }
};

inline std::vector<FieldElement> row_times_mat(const std::vector<FieldElement>& v, const Mat& m) {
    std::vector<FieldElement> out(m.nc, m.tw->zero());
    for (int i = 0; i < m.nr; ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j < m.nc; ++j) out[j] = out[j] + v[i] * m.at(i, j);
    }
    return out;
}

// Reduced row echelon form in place; returns pivot columns in order.
inline std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.nc && r < m.nr; ++c) {
        int sel = -1;
        for (int i = r; i < m.nr; ++i)
            if (!m.at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.nc; ++j) std::swap(m.at(sel, j), m.at(r, j));
        FieldElement inv = m.at(r, c).inverse();
        for (int j = c; j < m.nc; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.nr; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            FieldElement f = m.at(i, c);
            for (int j = c; j < m.nc; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(Mat m) { return (int)rref(m).size(); }

// Basis of { x (column) : M x = 0 }, returned as rows of length nc.
inline std::vector<std::vector<FieldElement>> right_kernel(Mat m) {
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(m.nc, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (int fc = 0; fc < m.nc; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<FieldElement> x(m.nc, m.tw->zero());
        x[fc] = m.tw->one();
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -m.at((int)r, fc);
        basis.push_back(std::move(x));
    }
    return basis;
}

// Basis of { v (row) : v M = 0 }.
inline std::vector<std::vector<FieldElement>> left_kernel(const Mat& m) {
    return right_kernel(m.transpose());
}

inline std::optional<Mat> try_inverse(const Mat& m) {
    if (m.nr != m.nc) return std::nullopt;
    Mat aug(m.tw, m.nr, 2 * m.nc);
    for (int i = 0; i < m.nr; ++i) {
        for (int j = 0; j < m.nc; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.nc + i) = m.tw->one();
    }
    auto piv = rref(aug);
    if ((int)piv.size() != m.nr) return std::nullopt;
    for (int i = 0; i < m.nr; ++i)
        if (piv[i] != i) return std::nullopt;
    Mat inv(m.tw, m.nr, m.nc);
    for (int i = 0; i < m.nr; ++i)
        for (int j = 0; j < m.nc; ++j) inv.at(i, j) = aug.at(i, m.nc + j);
    return inv;
}

inline Mat inverse(const Mat& m) {
    auto inv = try_inverse(m);
    if (!inv) throw InvalidInput("matrix is not invertible");
    return *inv;
}

// Solve x * M = b for a row vector x; empty optional if inconsistent.
inline std::optional<std::vector<FieldElement>> solve_left(const Mat& m,
                                                           const std::vector<FieldElement>& b) {
    // transpose system: M^T x^T = b^T
    Mat aug(m.tw, m.nc, m.nr + 1);
    for (int i = 0; i < m.nc; ++i) {
        for (int j = 0; j < m.nr; ++j) aug.at(i, j) = m.at(j, i);
        aug.at(i, m.nr) = b[i];
    }
    auto piv = rref(aug);
    std::vector<FieldElement> x(m.nr, m.tw->zero());
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == m.nr) return std::nullopt;  // inconsistent
        x[piv[r]] = aug.at((int)r, m.nr);
    }
    return x;
}

// Evaluate a polynomial over the same tower at a square matrix.
inline Mat eval_poly_at(const Poly& f, const Mat& m) {
    Mat acc(m.tw, m.nr, m.nc);
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * m;
        for (int k = 0; k < m.nr; ++k) acc.at(k, k) = acc.at(k, k) + f.coeff(i);
    }
    return acc;
}

// Characteristic polynomial via Hessenberg reduction; works over any field.
inline Poly charpoly(Mat h) {
    int n = h.nr;
    const FieldTower* t = h.tw;
    // reduce to upper Hessenberg form by similarity transforms
    for (int m = 1; m < n - 1; ++m) {
        int piv = -1;
        for (int i = m; i < n; ++i)
            if (!h.at(i, m - 1).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != m) {
            for (int j = 0; j < n; ++j) std::swap(h.at(piv, j), h.at(m, j));
            for (int i = 0; i < n; ++i) std::swap(h.at(i, piv), h.at(i, m));
        }
        FieldElement tinv = h.at(m, m - 1).inverse();
        for (int i = m + 1; i < n; ++i) {
            if (h.at(i, m - 1).is_zero()) continue;
            FieldElement u = h.at(i, m - 1) * tinv;
            for (int j = 0; j < n; ++j) h.at(i, j) = h.at(i, j) - u * h.at(m, j);
            for (int k = 0; k < n; ++k) h.at(k, m) = h.at(k, m) + u * h.at(k, i);
        }
    }
    // recurrence on leading principal minors of the Hessenberg form
    std::vector<Poly> p(n + 1, Poly(t));
    p[0] = Poly::constant(t, t->one());
    for (int m = 1; m <= n; ++m) {
        Poly xm = Poly::x(t) - Poly::constant(t, h.at(m - 1, m - 1));
        p[m] = xm * p[m - 1];
        FieldElement prod = t->one();
        for (int i = m - 1; i >= 1; --i) {
            prod = prod * h.at(i, i - 1);
            p[m] = p[m] - (p[i - 1] * Poly::constant(t, h.at(i - 1, m - 1) * prod));
        }
    }
    return p[n];
}

}  // namespace ncline
