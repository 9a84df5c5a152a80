#pragma once

#include <vector>

#include "ncline/field.hpp"

namespace ncline {

// Dense univariate polynomial over a tower field, coefficients low-to-high.
struct Poly {
    const FieldTower* tw = nullptr;
    std::vector<FieldElement> c;

    Poly() = default;
    explicit Poly(const FieldTower* t) : tw(t) {}
    Poly(const FieldTower* t, std::vector<FieldElement> coeffs) : tw(t), c(std::move(coeffs)) {
        trim();
    }

    static Poly zero(const FieldTower* t) { return Poly(t); }
    static Poly constant(const FieldTower* t, const FieldElement& a) {
        Poly f(t);
        if (!a.is_zero()) f.c.push_back(a);
        return f;
    }
    static Poly x(const FieldTower* t) {
        Poly f(t);
        f.c = {t->zero(), t->one()};
        return f;
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; }  // -1 for zero
    const FieldElement& lead() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    FieldElement coeff(int i) const {
        if (i < 0 || i >= (int)c.size()) return tw->zero();
        return c[i];
    }

    bool operator==(const Poly& o) const { return tw == o.tw && c == o.c; }

    Poly operator+(const Poly& o) const {
        Poly r(tw);
        r.c.resize(std::max(c.size(), o.c.size()), tw->zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        r.trim();
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r(tw);
        r.c.resize(std::max(c.size(), o.c.size()), tw->zero());
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
        r.trim();
        return r;
    }
    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly(tw);
        Poly r(tw);
        r.c.assign(c.size() + o.c.size() - 1, tw->zero());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        }
        r.trim();
        return r;
    }
    Poly scaled(const FieldElement& a) const {
        Poly r(tw);
        for (auto& x : c) r.c.push_back(x * a);
        r.trim();
        return r;
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(lead().inverse());
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement acc = x.tower()->zero();
        for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * x + lift(c[i], x.tower());
        return acc;
    }

    // evaluate at an element of a possibly different tower over the same base:
    // only legal when all coefficients are base scalars
    static FieldElement lift(const FieldElement& a, const FieldTower* target) {
        if (a.tower() == target) return a;
        auto coords = a.tower()->to_rats(a);
        for (size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) throw InvalidInput("cannot lift non-scalar between towers");
        return target->from_rational(coords.empty() ? Rat(0) : coords[0]);
    }
};

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    Poly r = a, q(a.tw);
    FieldElement li = b.lead().inverse();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        FieldElement f = r.lead() * li;
        if (q.degree() < shift) q.c.resize(shift + 1, a.tw->zero());
        q.c[shift] = q.c[shift] + f;
        for (int i = 0; i <= b.degree(); ++i) r.c[shift + i] = r.c[shift + i] - f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.monic();
    return a;
}

inline Poly derivative(const Poly& f) {
    Poly d(f.tw);
    long long p = f.tw->base.p;
    for (int i = 1; i <= f.degree(); ++i) {
        FieldElement k = p ? f.tw->from_integer(i % p) : f.tw->from_integer(i);
        d.c.push_back(f.c[i] * k);
    }
    d.trim();
    return d;
}

inline Poly pow_mod(const Poly& b, Int e, const Poly& m) {
    Poly acc = Poly::constant(m.tw, m.tw->one());
    Poly base = b % m;
    while (e > 0) {
        if ((e & 1) != 0) acc = (acc * base) % m;
        base = (base * base) % m;
        e >>= 1;
    }
    return acc;
}

// polynomial with base-field (rational) coefficients lifted into a tower
inline Poly poly_from_rats(const FieldTower* t, const std::vector<Rat>& coeffs) {
    Poly f(t);
    for (auto& r : coeffs) f.c.push_back(t->from_rational(r));
    f.trim();
    return f;
}

// the tower's own modulus as a polynomial over the tower
inline Poly modulus_poly(const FieldTower* t) {
    if (t->finite()) {
        std::vector<Rat> cs;
        for (auto v : t->mod_f) cs.emplace_back(v);
        return poly_from_rats(t, cs);
    }
    return poly_from_rats(t, t->mod_r);
}

inline bool poly_lex_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a.c[i] == b.c[i]) continue;
        return a.c[i].lex_less(b.c[i]);
    }
    return false;
}

}  // namespace ncline
