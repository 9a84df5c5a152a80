#pragma once

#include <map>
#include <tuple>

#include "ncline/bimodule.hpp"

namespace ncline {

// Degree window of the noncommutative symmetric algebra of a rank-2 bimodule:
// tensor components T_ij, relation subspaces R_ij, quotients A_ij = T_ij/R_ij
// with deterministic coset bases, and multiplication structure constants.

using Vec = std::vector<FieldElement>;

struct TensorSlot {
    TwoSidedVectorSpace space;
    std::vector<Mat> phi_pow;  // powers of phi(generator), t < deg K

    Mat phi_of(const FieldElement& c) const {
        const FieldTower* K = space.K();
        auto coords = K->to_rats(c);
        Mat acc(K, space.rank(), space.rank());
        for (int t = 0; t < K->degree(); ++t)
            if (coords[t] != 0) acc = acc + phi_pow[t].scaled(K->from_rational(coords[t]));
        return acc;
    }
};

struct RelationSpace {
    Mat rows;                 // RREF rows spanning R_ij inside T_ij
    std::vector<int> pivots;  // pivot columns

    int dim() const { return rows.nr; }
};

struct SliceComponent {
    int i = 0, j = 0;
    int dim = 0;
    Mat phi;                    // right action on the coset basis
    std::vector<int> rep_cols;  // non-pivot columns of T_ij: coset representatives
    std::vector<Mat> phi_pow;

    Mat phi_of(const FieldElement& c) const {
        const FieldTower* K = phi.tw;
        auto coords = K->to_rats(c);
        Mat acc(K, dim, dim);
        for (int t = 0; t < K->degree(); ++t)
            if (coords[t] != 0) acc = acc + phi_pow[t].scaled(K->from_rational(coords[t]));
        return acc;
    }
};

class AlgebraSlice {
  public:
    TwoSidedVectorSpace V;
    int lo = 0, hi = 0;
    DualChain duals;
    std::map<std::pair<int, int>, TensorSlot> T;
    std::map<std::pair<int, int>, RelationSpace> R;
    std::map<std::pair<int, int>, SliceComponent> A;
    // structure constants: sc[{i,j,k}][s][t] = coordinates of u_s * v_t in A_ik
    std::map<std::tuple<int, int, int>, std::vector<std::vector<Vec>>> sc;

    const FieldTower* K() const { return V.K(); }

    int dim_A(int i, int j) const {
        if (i == j) return 1;
        return A.at({i, j}).dim;
    }
    int dim_T(int i, int j) const {
        if (i == j) return 1;
        return T.at({i, j}).space.rank();
    }
    int dim_R(int i, int j) const {
        if (j <= i + 1) return 0;
        return R.at({i, j}).dim();
    }

    // reduce a T_ij vector modulo R_ij
    Vec reduce(int i, int j, Vec v) const {
        const RelationSpace& rel = R.at({i, j});
        for (int r = 0; r < rel.rows.nr; ++r) {
            FieldElement c = v[rel.pivots[r]];  // copy: the loop below rewrites v
            if (c.is_zero()) continue;
            for (int col = 0; col < rel.rows.nc; ++col)
                v[col] = v[col] - c * rel.rows.at(r, col);
        }
        return v;
    }
    Vec quotient_coords(int i, int j, const Vec& reduced) const {
        const SliceComponent& comp = A.at({i, j});
        Vec out;
        out.reserve(comp.dim);
        for (int c : comp.rep_cols) out.push_back(reduced[c]);
        return out;
    }
    Vec lift(int i, int j, const Vec& coords) const {
        const SliceComponent& comp = A.at({i, j});
        Vec out(dim_T(i, j), K()->zero());
        for (int s = 0; s < comp.dim; ++s) out[comp.rep_cols[s]] = coords[s];
        return out;
    }

    // coordinates of (x in T_ij) tensor (y in T_jk) inside T_ik
    Vec compose_tensors(int i, int j, int k, const Vec& x, const Vec& y) const {
        const TensorSlot& left = T.at({i, j});
        int m = (int)x.size(), n = (int)y.size();
        Vec out(m * n, K()->zero());
        for (int b = 0; b < n; ++b) {
            if (y[b].is_zero()) continue;
            auto xa = row_times_mat(x, left.phi_of(y[b]));
            for (int a = 0; a < m; ++a) out[a * n + b] = xa[a];
        }
        return out;
    }

    const Vec& unit_element(int i) const { return units_.at(i - lo); }
    const Mat& biduality_step(int i) const { return phi_step_.at(i - lo); }

    Vec multiply(int i, int j, int k, const Vec& x, const Vec& y) const;

    std::vector<int> hilbert_row(int i) const {
        std::vector<int> dims;
        for (int j = i; j <= hi; ++j) dims.push_back(dim_A(i, j));
        return dims;
    }

  private:
    friend AlgebraSlice build_slice(const TwoSidedVectorSpace&, int, int, int);
    std::vector<Vec> units_;     // q_i in T_{i,i+2} coords, index i-lo, i <= hi-1
    std::vector<Mat> phi_step_;  // phi_i : V^{i*} -> V^{(i+2)*}, index i-lo, i <= hi-2
};

inline Vec AlgebraSlice::multiply(int i, int j, int k, const Vec& x, const Vec& y) const {
    if (i > j || j > k || i < lo || k > hi)
        throw InvalidInput("component indices (" + std::to_string(i) + "," + std::to_string(j) +
                           "," + std::to_string(k) + ") are not composable in the window");
    if ((int)x.size() != dim_A(i, j) || (int)y.size() != dim_A(j, k))
        throw InvalidInput("element size does not match its component");
    if (i == j) {  // scalar action from the left
        Vec out = y;
        for (auto& c : out) c = x[0] * c;
        return out;
    }
    if (j == k) {  // scalar action from the right
        return row_times_mat(x, A.at({i, j}).phi_of(y[0]));
    }
    const auto& table = sc.at({i, j, k});
    const SliceComponent& left = A.at({i, j});
    int d3 = dim_A(i, k);
    Vec out(d3, K()->zero());
    for (int t = 0; t < (int)y.size(); ++t) {
        if (y[t].is_zero()) continue;
        Mat p = left.phi_of(y[t]);
        for (int s = 0; s < (int)x.size(); ++s) {
            if (x[s].is_zero()) continue;
            for (int sp = 0; sp < left.dim; ++sp) {
                FieldElement w = x[s] * p.at(s, sp);
                if (w.is_zero()) continue;
                const Vec& cell = table[sp][t];
                for (int c = 0; c < d3; ++c) out[c] = out[c] + w * cell[c];
            }
        }
    }
    return out;
}

/// Construct the window [lo, hi] of the symmetric algebra of a rank-2 V.
/// A_{i,i+1} = V^{i*}; R_{i,i+2} is the line spanned by the unit element of
/// the dual pair (V^{i*}, V^{(i+1)*}); higher relations are sums of embedded
/// unit lines; A_ij = T_ij / R_ij on a pivot-free coset basis.
inline AlgebraSlice build_slice(const TwoSidedVectorSpace& v, int lo, int hi,
                                int window_cap = 6) {
    if (v.rank() != 2) throw InvalidInput("symmetric algebra construction needs rank 2");
    if (hi - lo > window_cap)
        throw ResourceLimit("window width " + std::to_string(hi - lo) + " exceeds cap " +
                            std::to_string(window_cap) +
                            " (tensor dimensions grow as 2^width)");
    if (hi < lo) throw InvalidInput("empty window");
    validate(v);
    const FieldTower* K = v.K();

    AlgebraSlice s;
    s.V = v;
    s.lo = lo;
    s.hi = hi;
    s.duals = build_dual_chain(v, hi > 0 ? hi : 0, lo < 0 ? -lo : 0);

    auto make_slot = [&](TwoSidedVectorSpace sp) {
        TensorSlot slot;
        slot.phi_pow.assign(1, Mat::identity(K, sp.rank()));
        for (int t = 1; t < K->degree(); ++t) slot.phi_pow.push_back(slot.phi_pow.back() * sp.phi);
        slot.space = std::move(sp);
        return slot;
    };

    // tensor slots
    for (int i = lo; i < hi; ++i) {
        s.T[{i, i + 1}] = make_slot(s.duals.space(i));
        for (int j = i + 2; j <= hi; ++j)
            s.T[{i, j}] = make_slot(tensor(s.T.at({i, j - 1}).space, s.duals.space(j - 1)));
    }

    // unit elements q_i of the pairs (V^{i*}, V^{(i+1)*}); the last one sits
    // one past the window and only feeds the biduality chain
    for (int i = lo; i <= hi - 1; ++i) s.units_.push_back(s.duals.pair_data(i).unit);

    // relation subspaces
    for (int i = lo; i < hi; ++i) {
        for (int j = i + 1; j <= hi; ++j) {
            RelationSpace rel;
            std::vector<std::vector<FieldElement>> rows;
            for (int l = i; l + 2 <= j; ++l) {
                const Vec& q = s.units_[l - lo];
                // embed T_il (x) q_l (x) T_{l+2,j}
                int dl = (l == i) ? 1 : s.dim_T(i, l);
                int dr = (l + 2 == j) ? 1 : s.dim_T(l + 2, j);
                for (int a = 0; a < dl; ++a) {
                    Vec left;
                    if (l == i)
                        left = q;
                    else {
                        Vec ea(dl, K->zero());
                        ea[a] = K->one();
                        left = s.compose_tensors(i, l, l + 2, ea, q);
                    }
                    for (int b = 0; b < dr; ++b) {
                        Vec full;
                        if (l + 2 == j)
                            full = left;
                        else {
                            Vec eb(dr, K->zero());
                            eb[b] = K->one();
                            full = s.compose_tensors(i, l + 2, j, left, eb);
                        }
                        rows.push_back(std::move(full));
                    }
                }
            }
            Mat m = rows.empty() ? Mat(K, 0, s.dim_T(i, j)) : Mat::from_rows(K, rows);
            auto piv = rref(m);
            rel.rows = Mat(K, (int)piv.size(), s.dim_T(i, j));
            for (int r = 0; r < (int)piv.size(); ++r)
                for (int c = 0; c < s.dim_T(i, j); ++c) rel.rows.at(r, c) = m.at(r, c);
            rel.pivots = piv;
            s.R[{i, j}] = std::move(rel);
        }
    }

    // quotient components
    for (int i = lo; i < hi; ++i) {
        for (int j = i + 1; j <= hi; ++j) {
            const RelationSpace& rel = s.R.at({i, j});
            SliceComponent comp;
            comp.i = i;
            comp.j = j;
            std::vector<bool> is_piv(s.dim_T(i, j), false);
            for (int c : rel.pivots) is_piv[c] = true;
            for (int c = 0; c < s.dim_T(i, j); ++c)
                if (!is_piv[c]) comp.rep_cols.push_back(c);
            comp.dim = (int)comp.rep_cols.size();
            comp.phi = Mat(K, comp.dim, comp.dim);
            const TensorSlot& slot = s.T.at({i, j});
            for (int r = 0; r < comp.dim; ++r) {
                Vec e(s.dim_T(i, j), K->zero());
                e[comp.rep_cols[r]] = K->one();
                Vec img = s.reduce(i, j, row_times_mat(e, slot.space.phi));
                Vec qc;
                for (int c : comp.rep_cols) qc.push_back(img[c]);
                comp.phi.set_row(r, qc);
            }
            comp.phi_pow.assign(1, Mat::identity(K, comp.dim));
            for (int t = 1; t < K->degree(); ++t)
                comp.phi_pow.push_back(comp.phi_pow.back() * comp.phi);
            s.A[{i, j}] = std::move(comp);
        }
    }

    // structure constants for i < j < k
    for (int i = lo; i < hi; ++i)
        for (int j = i + 1; j < hi; ++j)
            for (int k = j + 1; k <= hi; ++k) {
                const SliceComponent& cij = s.A.at({i, j});
                const SliceComponent& cjk = s.A.at({j, k});
                std::vector<std::vector<Vec>> table(cij.dim, std::vector<Vec>(cjk.dim));
                for (int a = 0; a < cij.dim; ++a) {
                    Vec ea = s.lift(i, j, [&] {
                        Vec u(cij.dim, K->zero());
                        u[a] = K->one();
                        return u;
                    }());
                    for (int b = 0; b < cjk.dim; ++b) {
                        Vec eb = s.lift(j, k, [&] {
                            Vec u(cjk.dim, K->zero());
                            u[b] = K->one();
                            return u;
                        }());
                        Vec prod = s.compose_tensors(i, j, k, ea, eb);
                        table[a][b] = s.quotient_coords(i, k, s.reduce(i, k, prod));
                    }
                }
                s.sc[{i, j, k}] = std::move(table);
            }

    // biduality chain phi_i : V^{i*} -> V^{(i+2)*} via conjugate squares:
    // (phi_i (x) phi_{i+1}) maps q_i to q_{i+2}; given phi_i this determines
    // phi_{i+1} uniquely, solved as a k-linear system
    if (hi - lo >= 2) {
        auto w = isomorphism_witness(s.duals.space(lo), s.duals.space(lo + 2));
        if (!w) throw InternalError("V is not isomorphic to its double dual");
        s.phi_step_.push_back(*w);
        const FieldTower* bt = K->base_tower();
        int n = v.rank(), d = K->degree();
        for (int m = lo; m + 1 <= hi - 2; ++m) {
            const Mat& prev = s.phi_step_[m - lo];
            const Vec& qm = s.units_[m - lo];
            const Vec& qm2 = s.units_[m + 2 - lo];
            const TwoSidedVectorSpace& D1 = s.duals.space(m + 1);
            const TwoSidedVectorSpace& D2 = s.duals.space(m + 2);
            const TwoSidedVectorSpace& D3 = s.duals.space(m + 3);
            // unknown M: rows of the system are images of the k-basis matrices
            int unknowns = n * n * d;
            FieldElement gen = K->generator();
            auto apply_constraints = [&](const Mat& M) {
                // (prev (x) M)(q_m) in T-coordinates of D2 (x) D3, then the
                // intertwining defect, flattened over k
                Vec img(n * n, K->zero());
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) {
                        const FieldElement& c = qm[a * n + b];
                        if (c.is_zero()) continue;
                        // c . (prev(e_a) (x) M(e_b))
                        Vec u = prev.row(a), wv = M.row(b);
                        // pure tensor coords in D2 (x) D3
                        for (int bb = 0; bb < n; ++bb) {
                            if (wv[bb].is_zero()) continue;
                            auto ua = row_times_mat(u, phi_of(D2, wv[bb]));
                            for (int aa = 0; aa < n; ++aa)
                                img[aa * n + bb] = img[aa * n + bb] + c * ua[aa];
                        }
                    }
                Mat defect = D1.phi * M - M * D3.phi;
                Vec flat;
                auto part1 = detail::flatten_vec(K, img);
                flat.insert(flat.end(), part1.begin(), part1.end());
                auto part2 = detail::flatten_vec(K, defect.a);
                flat.insert(flat.end(), part2.begin(), part2.end());
                return flat;
            };
            int out_dim = (n * n + n * n) * d;
            Mat sys(bt, unknowns, out_dim);
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < n; ++j2)
                    for (int t = 0; t < d; ++t) {
                        Mat M(K, n, n);
                        M.at(i2, j2) = gen.pow(t);
                        sys.set_row((i2 * n + j2) * d + t, apply_constraints(M));
                    }
            Vec target = detail::flatten_vec(K, qm2);
            target.resize(out_dim, bt->zero());
            auto sol = solve_left(sys, target);
            if (!sol) throw InternalError("no conjugate biduality map exists at this index");
            Mat M(K, n, n);
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < n; ++j2) {
                    std::vector<FieldElement> co;
                    for (int t = 0; t < d; ++t) co.push_back((*sol)[(i2 * n + j2) * d + t]);
                    M.at(i2, j2) = K->from_base_coords(co);
                }
            if (!try_inverse(M)) throw InternalError("conjugate biduality map is singular");
            s.phi_step_.push_back(std::move(M));
        }
    }
    return s;
}

/// T-level matrix of phi_i (x) ... (x) phi_{j-1} : T_ij -> T_{i+2,j+2}.
inline Mat periodicity_tensor_map(const AlgebraSlice& s, int i, int j) {
    const FieldTower* K = s.K();
    if (j == i) throw InvalidInput("periodicity needs i < j");
    Mat out(K, s.dim_T(i, j), s.dim_T(i + 2, j + 2));
    int dims = s.dim_T(i, j);
    for (int idx = 0; idx < dims; ++idx) {
        // decode the chain index into factor indices (row-major)
        std::vector<int> digits(j - i);
        int rem = idx;
        for (int l = j - 1; l >= i; --l) {
            digits[l - i] = rem % 2;
            rem /= 2;
        }
        Vec img = s.biduality_step(i).row(digits[0]);
        for (int l = i + 1; l < j; ++l) {
            Vec nxt = s.biduality_step(l).row(digits[l - i]);
            img = s.compose_tensors(i + 2, l + 2, l + 3, img, nxt);
        }
        out.set_row(idx, img);
    }
    return out;
}

struct PeriodicityIso {
    int i = 0, j = 0;
    Mat map;  // A_ij -> A_{i+2,j+2} on coset bases
};

/// The biduality chain induces A_ij -> A_{i+2,j+2}: it carries R_ij into
/// R_{i+2,j+2} and is invertible on the quotients.
inline PeriodicityIso periodicity_iso(const AlgebraSlice& s, int i, int j) {
    const FieldTower* K = s.K();
    if (j + 2 > s.hi || i < s.lo)
        throw InvalidInput("periodicity target lies outside the computed window");
    PeriodicityIso out;
    out.i = i;
    out.j = j;
    if (i == j) {  // identity on A_ii = K
        out.map = Mat::identity(K, 1);
        return out;
    }
    Mat tp = periodicity_tensor_map(s, i, j);
    // relation compatibility
    for (int r = 0; r < s.R.at({i, j}).rows.nr; ++r) {
        Vec img = row_times_mat(s.R.at({i, j}).rows.row(r), tp);
        Vec red = s.reduce(i + 2, j + 2, img);
        for (auto& c : red)
            if (!c.is_zero())
                throw InternalError("biduality chain does not respect the relations");
    }
    const SliceComponent& src = s.A.at({i, j});
    out.map = Mat(K, src.dim, src.dim);
    for (int r = 0; r < src.dim; ++r) {
        Vec e(s.dim_T(i, j), K->zero());
        e[src.rep_cols[r]] = K->one();
        Vec img = s.reduce(i + 2, j + 2, row_times_mat(e, tp));
        out.map.set_row(r, s.quotient_coords(i + 2, j + 2, img));
    }
    if (!try_inverse(out.map)) throw InternalError("periodicity map is singular");
    return out;
}

// ---- Veronese ring C_i = A_{0,2i} ----

struct VeroneseRing {
    const FieldTower* field = nullptr;
    int imax = 0;
    std::vector<int> dims;            // dim C_i
    std::vector<SliceComponent> comp;  // C_i presentation (copied from A_{0,2i})
    // vsc[{i,j}][s][t] = coordinates of u_s * shift(v_t) in C_{i+j}
    std::map<std::pair<int, int>, std::vector<std::vector<Vec>>> vsc;

    Vec multiply(int i, int j, const Vec& x, const Vec& y) const {
        if (i + j > imax) throw InvalidInput("product degree exceeds the computed window");
        if (i == 0) {
            Vec out = y;
            for (auto& c : out) c = x[0] * c;
            return out;
        }
        if (j == 0) return row_times_mat(x, comp[i].phi_of(y[0]));
        const auto& table = vsc.at({i, j});
        int d3 = dims[i + j];
        Vec out(d3, field->zero());
        for (int t = 0; t < (int)y.size(); ++t) {
            if (y[t].is_zero()) continue;
            Mat p = comp[i].phi_of(y[t]);
            for (int sidx = 0; sidx < (int)x.size(); ++sidx) {
                if (x[sidx].is_zero()) continue;
                for (int sp = 0; sp < comp[i].dim; ++sp) {
                    FieldElement w = x[sidx] * p.at(sidx, sp);
                    if (w.is_zero()) continue;
                    const Vec& cell = table[sp][t];
                    for (int c = 0; c < d3; ++c) out[c] = out[c] + w * cell[c];
                }
            }
        }
        return out;
    }
};

/// Even part of the slice regraded as a ring: C_i := A_{0,2i}, multiplication
/// through the 2-periodicity shift A_{0,2j} -> A_{2i,2i+2j}.
inline VeroneseRing veronese(const AlgebraSlice& s) {
    if (s.lo > 0) throw InvalidInput("veronese needs a window starting at 0 or below");
    VeroneseRing c;
    c.field = s.K();
    c.imax = (s.hi - 0) / 2;
    if (c.imax < 1) throw InvalidInput("window too small for any veronese component");
    for (int i = 0; i <= c.imax; ++i) {
        if (i == 0) {
            SliceComponent unit;
            unit.dim = 1;
            unit.phi = Mat(c.field, 1, 1);
            unit.phi.at(0, 0) = c.field->generator();
            unit.phi_pow.assign(1, Mat::identity(c.field, 1));
            for (int t = 1; t < c.field->degree(); ++t)
                unit.phi_pow.push_back(unit.phi_pow.back() * unit.phi);
            c.comp.push_back(std::move(unit));
            c.dims.push_back(1);
        } else {
            c.comp.push_back(s.A.at({0, 2 * i}));
            c.dims.push_back(s.dim_A(0, 2 * i));
        }
    }
    // shift isomorphisms A_{0,2j} -> A_{2i,2i+2j} by iterating the periodicity step
    auto shift_map = [&](int i, int j) {  // returns the composed map, j >= 1
        Mat m = Mat::identity(c.field, s.dim_A(0, 2 * j));
        for (int stepped = 0; stepped < i; ++stepped) {
            PeriodicityIso p = periodicity_iso(s, 2 * stepped, 2 * stepped + 2 * j);
            m = m * p.map;
        }
        return m;
    };
    for (int i = 1; i <= c.imax; ++i)
        for (int j = 1; i + j <= c.imax; ++j) {
            Mat sh = shift_map(i, j);
            const SliceComponent& ci = s.A.at({0, 2 * i});
            int d2 = s.dim_A(0, 2 * j);
            std::vector<std::vector<Vec>> table(ci.dim, std::vector<Vec>(d2));
            for (int a = 0; a < ci.dim; ++a) {
                Vec ea(ci.dim, c.field->zero());
                ea[a] = c.field->one();
                for (int b = 0; b < d2; ++b) {
                    Vec eb(d2, c.field->zero());
                    eb[b] = c.field->one();
                    Vec shifted = row_times_mat(eb, sh);
                    table[a][b] = s.multiply(0, 2 * i, 2 * i + 2 * j, ea, shifted);
                }
            }
            c.vsc[{i, j}] = std::move(table);
        }
    return c;
}

// ---- zero-divisor sweeps ----

struct DomainFamily {
    int i, j, k;          // components A_ij x A_jk (or Veronese degrees)
    long long enumerated; // number of right factors (or pairs) enumerated
    std::string method;   // "pairwise" or "kernel"
    long long violations;
};

struct DomainReport {
    std::vector<DomainFamily> families;
    long long total_violations = 0;
    bool hit_cap = false;
};

namespace detail {

// Exhaustive zero-product sweep of one bilinear family. `left_phi` gives the
// right-action matrix of the left component, `table` its structure constants.
// Enumerating only y is exact: for fixed y, x -> x*y is x -> x * M_y, so a
// nonzero annihilating x exists iff M_y has a nontrivial left kernel.
template <class MulInto>
inline DomainFamily sweep_family(const FieldTower* K, int d1, int d2, int d3, MulInto&& row_of,
                                 long long pairwise_cap, long long enum_cap, int fi, int fj,
                                 int fk) {
    DomainFamily fam{fi, fj, fk, 0, "", 0};
    long long q = K->order_ll();
    auto count_pow = [&](int e) {
        long long n = 1;
        for (int t = 0; t < e; ++t) {
            if (n > enum_cap / q + 1) return enum_cap + 1;
            n *= q;
        }
        return n;
    };
    long long ny = count_pow(d2), nx = count_pow(d1);
    if (ny > enum_cap)
        throw ResourceLimit("zero-divisor sweep: |K|^" + std::to_string(d2) + " exceeds the cap");
    std::vector<FieldElement> elems;
    for (long long t = 0; t < q; ++t) elems.push_back(K->element_from_index(t));

    bool pairwise = nx <= enum_cap && nx * ny <= pairwise_cap;
    fam.method = pairwise ? "pairwise" : "kernel";

    std::vector<int> ydig(d2, 0);
    Vec y(d2, K->zero());
    for (auto& c : y) c = elems[0];
    Mat my(K, d1, d3);
    for (long long yi = 1; yi < ny; ++yi) {
        // odometer step
        int pos = 0;
        while (true) {
            ydig[pos] = (ydig[pos] + 1) % (int)q;
            y[pos] = elems[ydig[pos]];
            if (ydig[pos] != 0) break;
            ++pos;
        }
        ++fam.enumerated;
        // rows of M_y: u_s * y
        for (int sidx = 0; sidx < d1; ++sidx) {
            Vec r = row_of(sidx, y);
            for (int c = 0; c < d3; ++c) my.at(sidx, c) = r[c];
        }
        if (pairwise) {
            std::vector<int> xdig(d1, 0);
            Vec x(d1, K->zero());
            for (auto& c : x) c = elems[0];
            for (long long xi = 1; xi < nx; ++xi) {
                int p2 = 0;
                while (true) {
                    xdig[p2] = (xdig[p2] + 1) % (int)q;
                    x[p2] = elems[xdig[p2]];
                    if (xdig[p2] != 0) break;
                    ++p2;
                }
                bool zero = true;
                for (int c = 0; c < d3 && zero; ++c) {
                    FieldElement acc = K->zero();
                    for (int sidx = 0; sidx < d1; ++sidx) {
                        if (x[sidx].is_zero()) continue;
                        acc = acc + x[sidx] * my.at(sidx, c);
                    }
                    if (!acc.is_zero()) zero = false;
                }
                if (zero) ++fam.violations;
            }
        } else {
            if (rank(my) < d1) ++fam.violations;
        }
    }
    return fam;
}

}  // namespace detail

/// Exhaustive zero-divisor check over the slice window, for pairs of
/// components with total degree k - i <= max_total_degree.
inline DomainReport domain_check(const AlgebraSlice& s, int max_total_degree,
                                 long long pairwise_cap = 20'000'000,
                                 long long enum_cap = 100'000'000) {
    if (!s.K()->finite())
        throw InvalidInput("exhaustive zero-divisor sweeps need a finite field");
    DomainReport rep;
    for (int i = s.lo; i <= s.hi; ++i)
        for (int j = i; j <= s.hi; ++j)
            for (int k = j; k <= s.hi; ++k) {
                if (k - i > max_total_degree || k - i == 0) continue;
                auto row_of = [&](int sidx, const Vec& y) {
                    Vec e(s.dim_A(i, j), s.K()->zero());
                    e[sidx] = s.K()->one();
                    return s.multiply(i, j, k, e, y);
                };
                rep.families.push_back(detail::sweep_family(
                    s.K(), s.dim_A(i, j), s.dim_A(j, k), s.dim_A(i, k), row_of, pairwise_cap,
                    enum_cap, i, j, k));
                rep.total_violations += rep.families.back().violations;
            }
    return rep;
}

/// Same sweep over the Veronese ring, for degree pairs with i + j <= max_degree.
inline DomainReport domain_check(const VeroneseRing& c, int max_degree,
                                 long long pairwise_cap = 20'000'000,
                                 long long enum_cap = 100'000'000) {
    if (!c.field->finite())
        throw InvalidInput("exhaustive zero-divisor sweeps need a finite field");
    DomainReport rep;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j) {
            if (i + j == 0 || i + j > c.imax) continue;
            auto row_of = [&](int sidx, const Vec& y) {
                Vec e(c.dims[i], c.field->zero());
                e[sidx] = c.field->one();
                return c.multiply(i, j, e, y);
            };
            rep.families.push_back(detail::sweep_family(c.field, c.dims[i], c.dims[j],
                                                        c.dims[i + j], row_of, pairwise_cap,
                                                        enum_cap, i, j, i + j));
            rep.total_violations += rep.families.back().violations;
        }
    return rep;
}

// ---- structural comparison reports ----

struct ComponentComparison {
    int j, l;
    int dim_left, dim_right;
    bool isomorphic;
};

struct AlgebraCheckReport {
    std::vector<ComponentComparison> cells;
    bool all_match = true;
};

// component A_jl of a slice as a standalone bimodule
inline TwoSidedVectorSpace component_space(const AlgebraSlice& s, int j, int l) {
    if (j == l) {
        Mat m(s.K(), 1, 1);
        m.at(0, 0) = s.K()->generator();
        return make_bimodule(s.V.field, std::move(m));
    }
    return make_bimodule(s.V.field, s.A.at({j, l}).phi);
}

/// Components of the shifted algebra agree with those of the algebra of the
/// i-th iterated dual: S(V)_{i+j,i+l} ~ S(V^{i*})_{j,l}.
inline AlgebraCheckReport shifted_algebra_check(const TwoSidedVectorSpace& v, int i, int window,
                                                int window_cap = 6) {
    AlgebraSlice left = build_slice(v, std::min(i, 0), std::max(i + window, 0), window_cap + std::abs(i));
    AlgebraSlice right = build_slice(iterated_dual(v, i), 0, window, window_cap);
    AlgebraCheckReport rep;
    for (int j = 0; j <= window; ++j)
        for (int l = j; l <= window; ++l) {
            ComponentComparison cc{j, l, left.dim_A(i + j, i + l), right.dim_A(j, l), false};
            cc.isomorphic = cc.dim_left == cc.dim_right &&
                            is_isomorphic(component_space(left, i + j, i + l),
                                          component_space(right, j, l));
            rep.all_match = rep.all_match && cc.isomorphic;
            rep.cells.push_back(cc);
        }
    return rep;
}

/// Components of the twisted algebra: S(twist(V)) component (j,l) matches
/// K_{zeta_j^{-1}} (x) S(V)_{jl} (x) K_{zeta_l} where zeta alternates
/// delta (even) / eps (odd).
inline AlgebraCheckReport twisted_algebra_check(const TwoSidedVectorSpace& v,
                                                const FieldMap& delta, const FieldMap& eps,
                                                int window, int window_cap = 6) {
    AlgebraSlice base = build_slice(v, 0, window, window_cap);
    AlgebraSlice twisted = build_slice(twist(v, delta, eps), 0, window, window_cap);
    AlgebraCheckReport rep;
    auto zeta = [&](int idx) -> const FieldMap& { return idx % 2 == 0 ? delta : eps; };
    for (int j = 0; j <= window; ++j)
        for (int l = j; l <= window; ++l) {
            ComponentComparison cc{j, l, twisted.dim_A(j, l), base.dim_A(j, l), false};
            TwoSidedVectorSpace expected = twist(component_space(base, j, l), zeta(j), zeta(l));
            cc.isomorphic = cc.dim_left == cc.dim_right &&
                            is_isomorphic(component_space(twisted, j, l), expected);
            rep.all_match = rep.all_match && cc.isomorphic;
            rep.cells.push_back(cc);
        }
    return rep;
}

}  // namespace ncline
