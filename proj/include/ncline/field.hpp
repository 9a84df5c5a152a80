#pragma once

#include <boost/container/small_vector.hpp>
#include <cassert>
#include <memory>
#include <string>
#include <vector>

#include "ncline/rational.hpp"

namespace ncline {

struct BaseField {
    long long p = 0;  // 0 = rationals, otherwise a prime
    bool finite() const { return p != 0; }
    bool operator==(const BaseField&) const = default;
};

namespace detail {

inline long long zp_norm(long long x, long long p) {
    x %= p;
    return x < 0 ? x + p : x;
}

inline long long zp_inv(long long a, long long p) {
    // extended Euclid
    long long t = 0, nt = 1, r = p, nr = zp_norm(a, p);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw InvalidInput("not invertible mod p");
    return zp_norm(t, p);
}

struct ZpOps {
    long long p;
    using Scalar = long long;
    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    bool is_zero(Scalar a) const { return a == 0; }
    Scalar add(Scalar a, Scalar b) const { return (a + b) % p; }
    Scalar sub(Scalar a, Scalar b) const { return zp_norm(a - b, p); }
    Scalar mul(Scalar a, Scalar b) const { return (a * b) % p; }
    Scalar neg(Scalar a) const { return zp_norm(-a, p); }
    Scalar inv(Scalar a) const { return zp_inv(a, p); }
};

struct RatOps {
    using Scalar = Rat;
    Scalar zero() const { return Rat(0); }
    Scalar one() const { return Rat(1); }
    bool is_zero(const Scalar& a) const { return a == 0; }
    Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
    Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
    Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
    Scalar neg(const Scalar& a) const { return -a; }
    Scalar inv(const Scalar& a) const {
        if (a == 0) throw InvalidInput("division by zero");
        return Rat(1) / a;
    }
};

// Dense polynomial helpers over a base scalar type; coefficients low-to-high.
template <class Ops>
struct BasePoly {
    using S = typename Ops::Scalar;
    using V = std::vector<S>;

    static void trim(V& f, const Ops& o) {
        while (!f.empty() && o.is_zero(f.back())) f.pop_back();
    }
    static V mul(const V& a, const V& b, const Ops& o) {
        if (a.empty() || b.empty()) return {};
        V c(a.size() + b.size() - 1, o.zero());
        for (size_t i = 0; i < a.size(); ++i) {
            if (o.is_zero(a[i])) continue;
            for (size_t j = 0; j < b.size(); ++j)
                c[i + j] = o.add(c[i + j], o.mul(a[i], b[j]));
        }
        return c;
    }
    // divide f by monic-normalizable g; returns remainder, quotient optional
    static V rem(V f, const V& g, const Ops& o) {
        trim(f, o);
        V gg = g;
        trim(gg, o);
        if (gg.empty()) throw InvalidInput("polynomial division by zero");
        S lead_inv = o.inv(gg.back());
        while (f.size() >= gg.size()) {
            S c = o.mul(f.back(), lead_inv);
            size_t shift = f.size() - gg.size();
            for (size_t i = 0; i < gg.size(); ++i)
                f[shift + i] = o.sub(f[shift + i], o.mul(c, gg[i]));
            trim(f, o);
            if (!f.empty() && f.size() >= gg.size() && o.is_zero(f.back())) trim(f, o);
        }
        return f;
    }
    static V gcd(V a, V b, const Ops& o) {
        trim(a, o);
        trim(b, o);
        while (!b.empty()) {
            V r = rem(a, b, o);
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty()) {  // make monic
            S li = o.inv(a.back());
            for (auto& c : a) c = o.mul(c, li);
        }
        return a;
    }
    static V derivative(const V& f, const Ops& o, long long char_p) {
        V d;
        for (size_t i = 1; i < f.size(); ++i) {
            S c = f[i];
            long long k = (long long)i;
            if (char_p) {
                c = o.mul(c, S(k % char_p));
            } else {
                c = o.mul(c, S(k));
            }
            d.push_back(c);
        }
        trim(d, o);
        return d;
    }
    // extended gcd: returns (g, u) with u*a = g mod m; used for inverses
    static bool inv_mod(const V& a, const V& m, const Ops& o, V& out) {
        V r0 = m, r1 = rem(a, m, o);
        trim(r0, o);
        trim(r1, o);
        V t0, t1{o.one()};
        while (!r1.empty()) {
            // q, r = divmod(r0, r1)
            V q;
            V f = r0;
            S li = o.inv(r1.back());
            while (f.size() >= r1.size()) {
                S c = o.mul(f.back(), li);
                size_t shift = f.size() - r1.size();
                if (q.size() < shift + 1) q.resize(shift + 1, o.zero());
                q[shift] = o.add(q[shift], c);
                for (size_t i = 0; i < r1.size(); ++i)
                    f[shift + i] = o.sub(f[shift + i], o.mul(c, r1[i]));
                trim(f, o);
            }
            V t2 = t0;  // t2 = t0 - q*t1
            V qt = mul(q, t1, o);
            if (t2.size() < qt.size()) t2.resize(qt.size(), o.zero());
            for (size_t i = 0; i < qt.size(); ++i) t2[i] = o.sub(t2[i], qt[i]);
            trim(t2, o);
            t0 = std::move(t1);
            t1 = std::move(t2);
            r0 = std::move(r1);
            r1 = std::move(f);
        }
        if (r0.size() != 1) return false;  // gcd not a unit: not invertible
        S gi = o.inv(r0[0]);
        out = t0;
        for (auto& c : out) c = o.mul(c, gi);
        V red = rem(out, m, o);
        out = std::move(red);
        return true;
    }
};

}  // namespace detail

class FieldTower;

// An element of a tower, stored as reduced coefficients over the base field,
// low-to-high. Exactly one of the two coefficient vectors is in use.
class FieldElement {
  public:
    using FinVec = boost::container::small_vector<long long, 6>;

    FieldElement() = default;

    const FieldTower* tower() const { return tw_; }
    bool valid() const { return tw_ != nullptr; }

    bool is_zero() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(Int e) const;

    // deterministic total order (used for canonical sorting)
    bool lex_less(const FieldElement& o) const;

    const FinVec& fin() const { return f_; }
    const std::vector<Rat>& rat() const { return r_; }

  private:
    friend class FieldTower;
    const FieldTower* tw_ = nullptr;
    FinVec f_;
    std::vector<Rat> r_;
};

struct ClosureBundle;  // defined in extension.hpp

// A simple extension of a prime field or of the rationals, presented by a
// monic irreducible separable modulus. Immutable once built; elements hold a
// non-owning pointer, so the tower must outlive its elements.
class FieldTower {
  public:
    BaseField base;
    std::string name;
    std::vector<long long> mod_f;  // modulus coefficients (finite base), monic, length deg+1
    std::vector<Rat> mod_r;        // modulus coefficients (rational base)
    int deg = 0;

    std::shared_ptr<const FieldTower> base_tower_holder;  // degree-1 tower, null if this is one
    std::shared_ptr<const ClosureBundle> closure;         // null when unavailable

    static std::shared_ptr<FieldTower> make_raw(BaseField b, std::vector<Rat> modulus,
                                                std::string nm);

    bool finite() const { return base.finite(); }
    int degree() const { return deg; }
    // field size as an Int (finite base only)
    Int order() const {
        Int q = 1;
        for (int i = 0; i < deg; ++i) q *= base.p;
        return q;
    }
    long long order_ll() const {
        Int q = order();
        if (q > Int(std::numeric_limits<long long>::max() / 4)) throw ResourceLimit("field too large to enumerate");
        return (long long)q;
    }
    const FieldTower* base_tower() const {
        return base_tower_holder ? base_tower_holder.get() : this;
    }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement generator() const;
    FieldElement from_integer(long long v) const;
    FieldElement from_rational(const Rat& v) const;
    FieldElement from_rats(const std::vector<Rat>& coeffs) const;   // length <= deg
    FieldElement from_ints(const std::vector<long long>& c) const;  // finite base
    std::vector<Rat> to_rats(const FieldElement& x) const;          // always length deg

    // index <-> element enumeration for finite towers (digits base p, low first)
    FieldElement element_from_index(long long idx) const;

    // coefficients of x as elements of the base tower (length deg)
    std::vector<FieldElement> base_coords(const FieldElement& x) const;
    FieldElement from_base_coords(const std::vector<FieldElement>& c) const;

    // evaluate this tower's modulus at an element of any tower over the same base
    FieldElement eval_modulus(const FieldElement& x) const;

    bool same_base(const FieldTower& o) const { return base == o.base; }

  private:
    friend class FieldElement;
    detail::ZpOps zp() const { return detail::ZpOps{base.p}; }
};

inline std::shared_ptr<FieldTower> FieldTower::make_raw(BaseField b, std::vector<Rat> modulus,
                                                        std::string nm) {
    auto t = std::make_shared<FieldTower>();
    t->base = b;
    t->name = std::move(nm);
    if (modulus.size() < 2) throw InvalidInput("modulus must have degree >= 1");
    if (modulus.back() != 1) throw InvalidInput("modulus must be monic");
    t->deg = (int)modulus.size() - 1;
    if (b.finite()) {
        if (!is_prime(b.p)) throw InvalidInput("base characteristic is not prime");
        for (auto& c : modulus) {
            if (boost::multiprecision::denominator(c) != 1)
                throw InvalidInput("finite-field modulus needs integer coefficients");
            Int n = boost::multiprecision::numerator(c) % b.p;
            if (n < 0) n += b.p;
            t->mod_f.push_back((long long)n);
        }
    } else {
        t->mod_r = std::move(modulus);
    }
    if (t->deg > 1) {
        std::vector<Rat> xpoly{Rat(0), Rat(1)};
        t->base_tower_holder = make_raw(b, xpoly, nm + "_base");
    }
    return t;
}

inline FieldElement FieldTower::zero() const {
    FieldElement e;
    e.tw_ = this;
    if (finite())
        e.f_.assign(deg, 0);
    else
        e.r_.assign(deg, Rat(0));
    return e;
}

inline FieldElement FieldTower::one() const { return from_integer(1); }

inline FieldElement FieldTower::from_integer(long long v) const {
    FieldElement e = zero();
    if (deg == 0) return e;
    if (finite())
        e.f_[0] = detail::zp_norm(v, base.p);
    else
        e.r_[0] = Rat(v);
    return e;
}

inline FieldElement FieldTower::from_rational(const Rat& v) const {
    FieldElement e = zero();
    if (finite()) {
        Int den = boost::multiprecision::denominator(v);
        Int num = boost::multiprecision::numerator(v);
        long long d = (long long)(den % base.p);
        long long n = (long long)(num % base.p);
        e.f_[0] = zp().mul(detail::zp_norm(n, base.p), detail::zp_inv(d, base.p));
    } else {
        e.r_[0] = v;
    }
    return e;
}

inline FieldElement FieldTower::generator() const {
    FieldElement e = zero();
    if (deg >= 2) {
        if (finite())
            e.f_[1] = 1;
        else
            e.r_[1] = Rat(1);
    }
    // degree-1 tower: generator is the root of the linear modulus, -c0
    else if (finite())
        e.f_[0] = detail::zp_norm(-mod_f[0], base.p);
    else
        e.r_[0] = -mod_r[0];
    return e;
}

inline FieldElement FieldTower::from_rats(const std::vector<Rat>& coeffs) const {
    if ((int)coeffs.size() > deg) throw InvalidInput("element has too many coefficients");
    FieldElement e = zero();
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (finite()) {
            Int den = boost::multiprecision::denominator(coeffs[i]);
            Int num = boost::multiprecision::numerator(coeffs[i]);
            long long d = (long long)(den % base.p);
            long long n = (long long)(num % base.p);
            e.f_[i] = zp().mul(detail::zp_norm(n, base.p), detail::zp_inv(d, base.p));
        } else {
            e.r_[i] = coeffs[i];
        }
    }
    return e;
}

inline FieldElement FieldTower::from_ints(const std::vector<long long>& c) const {
    if (!finite()) throw InvalidInput("integer coefficients need a finite base");
    if ((int)c.size() > deg) throw InvalidInput("element has too many coefficients");
    FieldElement e = zero();
    for (size_t i = 0; i < c.size(); ++i) e.f_[i] = detail::zp_norm(c[i], base.p);
    return e;
}

inline std::vector<Rat> FieldTower::to_rats(const FieldElement& x) const {
    assert(x.tower() == this);
    std::vector<Rat> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = finite() ? Rat(x.fin()[i]) : x.rat()[i];
    return out;
}

inline FieldElement FieldTower::element_from_index(long long idx) const {
    if (!finite()) throw InvalidInput("enumeration needs a finite field");
    FieldElement e = zero();
    for (int i = 0; i < deg; ++i) {
        e.f_[i] = idx % base.p;
        idx /= base.p;
    }
    return e;
}

inline std::vector<FieldElement> FieldTower::base_coords(const FieldElement& x) const {
    assert(x.tower() == this);
    const FieldTower* bt = base_tower();
    std::vector<FieldElement> out;
    out.reserve(deg);
    for (int i = 0; i < deg; ++i) {
        if (finite())
            out.push_back(bt->from_integer(x.fin()[i]));
        else
            out.push_back(bt->from_rational(x.rat()[i]));
    }
    return out;
}

inline FieldElement FieldTower::from_base_coords(const std::vector<FieldElement>& c) const {
    if ((int)c.size() != deg) throw InvalidInput("wrong coefficient count");
    FieldElement e = zero();
    for (int i = 0; i < deg; ++i) {
        // any degree-1 tower over the same base serves as the scalar field
        assert(c[i].tower()->degree() == 1 && same_base(*c[i].tower()));
        if (finite())
            e.f_[i] = c[i].fin()[0];
        else
            e.r_[i] = c[i].rat()[0];
    }
    return e;
}

inline FieldElement FieldTower::eval_modulus(const FieldElement& x) const {
    const FieldTower* tt = x.tower();
    assert(tt && same_base(*tt));
    FieldElement acc = tt->zero();
    for (int i = deg; i >= 0; --i) {
        acc = acc * x;
        FieldElement c = finite() ? tt->from_integer(mod_f[i]) : tt->from_rational(mod_r[i]);
        acc = acc + c;
    }
    return acc;
}

// ---- element arithmetic ----

inline bool FieldElement::is_zero() const {
    assert(tw_);
    if (tw_->finite()) {
        for (auto c : f_)
            if (c != 0) return false;
    } else {
        for (auto& c : r_)
            if (c != 0) return false;
    }
    return true;
}

inline bool FieldElement::operator==(const FieldElement& o) const {
    if (tw_ != o.tw_) return false;
    return tw_->finite() ? f_ == o.f_ : r_ == o.r_;
}

inline bool FieldElement::lex_less(const FieldElement& o) const {
    assert(tw_ == o.tw_);
    if (tw_->finite()) {
        for (size_t i = 0; i < f_.size(); ++i)
            if (f_[i] != o.f_[i]) return f_[i] < o.f_[i];
        return false;
    }
    for (size_t i = 0; i < r_.size(); ++i)
        if (r_[i] != o.r_[i]) return r_[i] < o.r_[i];
    return false;
}

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    assert(tw_ && tw_ == o.tw_);
    FieldElement e = *this;
    if (tw_->finite()) {
        long long p = tw_->base.p;
        for (size_t i = 0; i < f_.size(); ++i) e.f_[i] = (f_[i] + o.f_[i]) % p;
    } else {
        for (size_t i = 0; i < r_.size(); ++i) e.r_[i] += o.r_[i];
    }
    return e;
}

inline FieldElement FieldElement::operator-(const FieldElement& o) const {
    assert(tw_ && tw_ == o.tw_);
    FieldElement e = *this;
    if (tw_->finite()) {
        long long p = tw_->base.p;
        for (size_t i = 0; i < f_.size(); ++i) e.f_[i] = detail::zp_norm(f_[i] - o.f_[i], p);
    } else {
        for (size_t i = 0; i < r_.size(); ++i) e.r_[i] -= o.r_[i];
    }
    return e;
}

inline FieldElement FieldElement::operator-() const {
    assert(tw_);
    FieldElement e = *this;
    if (tw_->finite()) {
        long long p = tw_->base.p;
        for (auto& c : e.f_) c = detail::zp_norm(-c, p);
    } else {
        for (auto& c : e.r_) c = -c;
    }
    return e;
}

namespace detail {

template <class Ops, class Vec>
void tower_mul(const Vec& a, const Vec& b, const std::vector<typename Ops::Scalar>& mod, int d,
               Vec& out, const Ops& o) {
    using S = typename Ops::Scalar;
    // schoolbook product then reduce by the monic modulus
    boost::container::small_vector<S, 16> prod(2 * d - 1, o.zero());
    for (int i = 0; i < d; ++i) {
        if (o.is_zero(a[i])) continue;
        for (int j = 0; j < d; ++j) prod[i + j] = o.add(prod[i + j], o.mul(a[i], b[j]));
    }
    for (int t = 2 * d - 2; t >= d; --t) {
        if (o.is_zero(prod[t])) continue;
        S c = prod[t];
        prod[t] = o.zero();
        for (int i = 0; i < d; ++i) prod[t - d + i] = o.sub(prod[t - d + i], o.mul(c, mod[i]));
    }
    out.resize(d);
    for (int i = 0; i < d; ++i) out[i] = prod[i];
}

}  // namespace detail

inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    assert(tw_ && tw_ == o.tw_);
    FieldElement e = tw_->zero();
    int d = tw_->deg;
    if (d == 1) {
        if (tw_->finite())
            e.f_[0] = detail::ZpOps{tw_->base.p}.mul(f_[0], o.f_[0]);
        else
            e.r_[0] = r_[0] * o.r_[0];
        return e;
    }
    if (tw_->finite())
        detail::tower_mul(f_, o.f_, tw_->mod_f, d, e.f_, detail::ZpOps{tw_->base.p});
    else
        detail::tower_mul(r_, o.r_, tw_->mod_r, d, e.r_, detail::RatOps{});
    return e;
}

inline FieldElement FieldElement::inverse() const {
    assert(tw_);
    if (is_zero()) throw InvalidInput("division by zero in " + tw_->name);
    FieldElement e = tw_->zero();
    if (tw_->finite()) {
        detail::ZpOps o{tw_->base.p};
        std::vector<long long> a(f_.begin(), f_.end()), out;
        if (!detail::BasePoly<detail::ZpOps>::inv_mod(a, tw_->mod_f, o, out))
            throw InvalidInput("element not invertible: modulus of " + tw_->name +
                               " is not irreducible");
        for (size_t i = 0; i < out.size(); ++i) e.f_[i] = out[i];
    } else {
        detail::RatOps o;
        std::vector<Rat> a(r_.begin(), r_.end()), out;
        if (!detail::BasePoly<detail::RatOps>::inv_mod(a, tw_->mod_r, o, out))
            throw InvalidInput("element not invertible: modulus of " + tw_->name +
                               " is not irreducible");
        for (size_t i = 0; i < out.size(); ++i) e.r_[i] = out[i];
    }
    return e;
}

inline FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

inline FieldElement FieldElement::pow(Int e) const {
    assert(tw_);
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = tw_->one(), b = *this;
    while (e > 0) {
        if ((e & 1) != 0) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

}  // namespace ncline
