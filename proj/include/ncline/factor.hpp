#pragma once

#include <random>
#include <vector>

#include "ncline/poly.hpp"

namespace ncline {

// Polynomial factorization over finite tower fields: squarefree split,
// distinct-degree split, then seeded Cantor-Zassenhaus equal-degree split.

namespace detail {

inline FieldElement pth_root_coeff(const FieldElement& a) {
    // inverse Frobenius: a^(q/p)
    const FieldTower* t = a.tower();
    Int e = 1;
    for (int i = 0; i < t->degree() - 1; ++i) e *= t->base.p;
    return a.pow(e);
}

inline Poly poly_pth_root(const Poly& f) {
    long long p = f.tw->base.p;
    Poly r(f.tw);
    for (int i = 0; i <= f.degree(); i += (int)p) r.c.push_back(pth_root_coeff(f.coeff(i)));
    r.trim();
    return r;
}

inline Poly random_poly(const FieldTower* t, int deg_bound, std::mt19937_64& rng) {
    Poly r(t);
    long long p = t->base.p;
    for (int i = 0; i < deg_bound; ++i) {
        std::vector<long long> cs(t->degree());
        for (auto& c : cs) c = (long long)(rng() % (unsigned long long)p);
        r.c.push_back(t->from_ints(cs));
    }
    r.trim();
    return r;
}

}  // namespace detail

struct PolyFactor {
    Poly factor;  // monic irreducible
    int multiplicity;
};

inline std::vector<std::pair<Poly, int>> squarefree_split(Poly f) {
    long long p = f.tw->base.p;
    std::vector<std::pair<Poly, int>> out;
    f = f.monic();
    Poly d = derivative(f);
    if (!d.is_zero()) {
        Poly c = gcd(f, d);
        Poly w = f / c;
        int i = 1;
        while (w.degree() > 0) {
            Poly y = gcd(w, c);
            Poly z = w / y;
            if (z.degree() > 0) out.push_back({z, i});
            ++i;
            w = y;
            c = c / y;
        }
        if (c.degree() > 0) {
            for (auto& [g, m] : squarefree_split(detail::poly_pth_root(c)))
                out.push_back({g, m * (int)p});
        }
    } else {
        for (auto& [g, m] : squarefree_split(detail::poly_pth_root(f)))
            out.push_back({g, m * (int)p});
    }
    return out;
}

inline std::vector<std::pair<Poly, int>> distinct_degree_split(Poly f) {
    // f monic squarefree; returns (product of irreducibles of degree e, e)
    std::vector<std::pair<Poly, int>> out;
    Int q = f.tw->order();
    Poly h = Poly::x(f.tw);
    int e = 1;
    while (f.degree() >= 2 * e) {
        h = pow_mod(h, q, f);
        Poly g = gcd(h - Poly::x(f.tw), f);
        if (g.degree() > 0) {
            out.push_back({g, e});
            f = f / g;
            h = h % f;
        }
        ++e;
    }
    if (f.degree() > 0) out.push_back({f, f.degree()});
    return out;
}

inline void equal_degree_split(const Poly& f, int e, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
    // f monic squarefree, all irreducible factors of degree e
    if (f.degree() == e) {
        out.push_back(f);
        return;
    }
    const FieldTower* t = f.tw;
    Int q = t->order();
    Poly g(t);
    while (true) {
        Poly r = detail::random_poly(t, f.degree(), rng);
        if (r.degree() < 1) continue;
        if (t->base.p == 2) {
            // trace map splitting in characteristic 2
            int m = e * t->degree();
            Poly tr = r % f, acc = r % f;
            for (int i = 1; i < m; ++i) {
                acc = (acc * acc) % f;
                tr = tr + acc;
            }
            g = gcd(tr, f);
        } else {
            Int exp = 1;
            for (int i = 0; i < e; ++i) exp *= q;
            exp = (exp - 1) / 2;
            Poly s = pow_mod(r, exp, f);
            g = gcd(s - Poly::constant(t, t->one()), f);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) break;
    }
    equal_degree_split(g, e, rng, out);
    equal_degree_split(f / g, e, rng, out);
}

/// Full factorization over a finite tower field. The leading unit is dropped:
/// the product of factor^multiplicity equals f up to that unit.
inline std::vector<PolyFactor> factor_poly(const Poly& f, uint64_t seed = 0xD1CE) {
    if (!f.tw->finite()) throw InvalidInput("factor_poly needs a finite base field");
    if (f.is_zero()) throw InvalidInput("cannot factor the zero polynomial");
    std::vector<PolyFactor> out;
    if (f.degree() == 0) return out;
    std::mt19937_64 rng(seed);
    for (auto& [sf, mult] : squarefree_split(f)) {
        for (auto& [dd, e] : distinct_degree_split(sf)) {
            std::vector<Poly> irr;
            equal_degree_split(dd, e, rng, irr);
            for (auto& g : irr) out.push_back({g, mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
        return poly_lex_less(a.factor, b.factor);
    });
    return out;
}

/// Deterministic irreducibility test over a finite tower field.
inline bool is_irreducible(const Poly& f) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    Int q = f.tw->order();
    int n = f.degree();
    // x^(q^n) == x mod f
    Poly h = Poly::x(f.tw);
    for (int i = 0; i < n; ++i) h = pow_mod(h, q, f);
    if (!(h - Poly::x(f.tw)).is_zero()) return false;
    // gcd(x^(q^(n/l)) - x, f) == 1 for every prime l | n
    for (int l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime(l)) continue;
        Poly g = Poly::x(f.tw);
        for (int i = 0; i < n / l; ++i) g = pow_mod(g, q, f);
        if (gcd(g - Poly::x(f.tw), f).degree() != 0) return false;
    }
    return true;
}

/// Roots of f inside its own (finite) coefficient field, without multiplicity.
inline std::vector<FieldElement> roots_in_field(const Poly& f, uint64_t seed = 0xD1CE) {
    std::vector<FieldElement> roots;
    for (auto& fac : factor_poly(f, seed)) {
        if (fac.factor.degree() == 1) roots.push_back(-fac.factor.c[0]);
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.lex_less(b); });
    return roots;
}

}  // namespace ncline
