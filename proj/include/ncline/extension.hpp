#pragma once

#include <algorithm>
#include <map>
#include <optional>

#include "ncline/factor.hpp"
#include "ncline/matrix.hpp"

namespace ncline {

// A k-algebra map between tower fields over the same base, stored as the
// image of the source generator.
struct FieldMap {
    const FieldTower* source = nullptr;
    const FieldTower* target = nullptr;
    FieldElement image;

    FieldElement apply(const FieldElement& x) const {
        assert(x.tower() == source);
        FieldElement acc = target->zero();
        if (source->finite()) {
            for (int t = source->degree() - 1; t >= 0; --t)
                acc = acc * image + target->from_integer(x.fin()[t]);
        } else {
            for (int t = source->degree() - 1; t >= 0; --t)
                acc = acc * image + target->from_rational(x.rat()[t]);
        }
        return acc;
    }

    bool operator==(const FieldMap& o) const {
        return source == o.source && target == o.target && image == o.image;
    }
    bool is_identity() const { return source == target && image == source->generator(); }
};

inline FieldMap identity_map(const FieldTower* t) { return FieldMap{t, t, t->generator()}; }

inline FieldMap compose(const FieldMap& g, const FieldMap& f) {
    if (f.target != g.source) throw InvalidInput("map composition: domain/codomain mismatch");
    return FieldMap{f.source, g.target, g.apply(f.image)};
}

// A finite group of automorphisms of one tower, with a composition table.
struct GaloisGroup {
    const FieldTower* field = nullptr;
    std::vector<FieldMap> elements;  // identity first, rest sorted by image
    std::vector<std::vector<int>> table;  // table[i][j] = index of elements[i] o elements[j]
    std::vector<int> inverse;

    int size() const { return (int)elements.size(); }
    int index_of(const FieldMap& m) const {
        for (int i = 0; i < size(); ++i)
            if (elements[i].image == m.image) return i;
        throw InvalidInput("map is not in the group");
    }
};

inline GaloisGroup build_galois_group(const FieldTower* t, std::vector<FieldElement> images) {
    GaloisGroup g;
    g.field = t;
    FieldElement gen = t->generator();
    std::sort(images.begin(), images.end(), [&](const FieldElement& a, const FieldElement& b) {
        if (a == gen) return b != gen;
        if (b == gen) return false;
        return a.lex_less(b);
    });
    for (auto& im : images) g.elements.push_back(FieldMap{t, t, im});
    int n = g.size();
    g.table.assign(n, std::vector<int>(n, -1));
    g.inverse.assign(n, -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FieldMap c = compose(g.elements[i], g.elements[j]);
            g.table[i][j] = g.index_of(c);
            if (c.is_identity()) {
                g.inverse[i] = j;
                if (g.inverse[j] < 0) g.inverse[j] = i;
            }
        }
    for (int i = 0; i < n; ++i)
        if (g.inverse[i] < 0) throw InternalError("automorphism set not closed under inverse");
    return g;
}

// One finite orbit of embeddings K -> L under Gal(L/K), identified with a
// monic irreducible factor of K's modulus over K.
struct EmbeddingOrbit {
    FieldMap representative;        // K -> closure
    Poly factor;                    // over K
    int size = 0;
    std::vector<int> root_indices;  // positions in ClosureBundle::roots

    bool operator==(const EmbeddingOrbit& o) const { return factor == o.factor; }
};

// Everything derived from a (verified) normal-closure presentation of K/k.
struct ClosureBundle {
    const FieldTower* owner = nullptr;            // K
    std::shared_ptr<const FieldTower> closure_holder;  // null when the closure is K itself
    const FieldTower* L = nullptr;
    std::vector<FieldElement> roots;  // roots of K's modulus in L; roots[0] = iota(gen)
    Mat iota_pow_rows;                // k-rows of iota(gen)^t, t < deg K (over base tower)
    GaloisGroup aut_closure;          // Gal(L/k)
    std::vector<int> gal_over_k_image;  // aut elements fixing iota(K) pointwise
    GaloisGroup gal;                  // Gal(K/k)
    std::vector<EmbeddingOrbit> orbits;

    FieldMap iota() const { return FieldMap{owner, L, roots[0]}; }
    bool is_self() const { return L == owner; }
};

namespace detail {

inline std::vector<FieldElement> flatten(const FieldTower* t, const FieldElement& x) {
    return t->base_coords(x);
}

// k-row matrix whose rows are the flattened elements
inline Mat rows_of(const FieldTower* t, const std::vector<FieldElement>& els) {
    const FieldTower* bt = t->base_tower();
    Mat m(bt, (int)els.size(), t->degree());
    for (size_t i = 0; i < els.size(); ++i) m.set_row((int)i, t->base_coords(els[i]));
    return m;
}

// coordinates of x in the k-span of `basis`, if x lies in it
inline std::optional<std::vector<FieldElement>> span_coords(const FieldTower* t,
                                                            const std::vector<FieldElement>& basis,
                                                            const FieldElement& x) {
    Mat m = rows_of(t, basis);
    return solve_left(m, t->base_coords(x));
}

// k-dimension of the k-algebra generated by the given elements of t
inline std::vector<FieldElement> algebra_span(const FieldTower* t,
                                              const std::vector<FieldElement>& gens) {
    std::vector<FieldElement> basis{t->one()};
    bool grew = true;
    while (grew) {
        grew = false;
        size_t cur = basis.size();
        for (size_t i = 0; i < cur; ++i) {
            for (auto& g : gens) {
                FieldElement cand = basis[i] * g;
                if (!span_coords(t, basis, cand)) {
                    basis.push_back(cand);
                    grew = true;
                }
            }
        }
    }
    return basis;
}

// minimal polynomial of r over the subfield iota(K) inside L, pulled back to K
inline Poly minpoly_over_subfield(const FieldTower* K, const FieldTower* L,
                                  const FieldElement& iota_gen, const FieldElement& r) {
    int d = K->degree();
    std::vector<FieldElement> iota_pows;
    FieldElement ip = L->one();
    for (int t = 0; t < d; ++t) {
        iota_pows.push_back(ip);
        ip = ip * iota_gen;
    }
    std::vector<FieldElement> rpow{L->one()};
    for (int D = 1;; ++D) {
        rpow.push_back(rpow.back() * r);
        std::vector<FieldElement> basis;
        for (int j = 0; j < D; ++j)
            for (int t = 0; t < d; ++t) basis.push_back(rpow[j] * iota_pows[t]);
        auto sol = span_coords(L, basis, rpow[D]);
        if (!sol) continue;
        // r^D = sum_{j,t} c_{jt} iota(a)^t r^j ; minpoly = x^D - sum_j (sum_t c_{jt} a^t) x^j
        Poly f(K);
        const FieldTower* bt = L->base_tower();
        for (int j = 0; j < D; ++j) {
            std::vector<FieldElement> kc;
            for (int t = 0; t < d; ++t) kc.push_back((*sol)[j * d + t]);
            (void)bt;
            f.c.push_back(-K->from_base_coords(kc));
        }
        f.c.push_back(K->one());
        return f;
    }
}

inline void verify_roots(const FieldTower* K, const FieldTower* L,
                         const std::vector<FieldElement>& roots) {
    if ((int)roots.size() != K->degree())
        throw InvalidInput("closure certificate: expected " + std::to_string(K->degree()) +
                           " roots, got " + std::to_string(roots.size()));
    for (auto& r : roots)
        if (!K->eval_modulus(r).is_zero())
            throw InvalidInput("closure certificate: listed root does not satisfy the modulus");
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i] == roots[j]) throw InvalidInput("closure certificate: repeated root");
}

// Gal(L/k) for a splitting field L = k(roots): find a primitive element as a
// small integer combination of the roots, then an automorphism for each
// root-permutation image of it.
inline std::vector<FieldElement> closure_automorphism_images(
    const FieldTower* L, const std::vector<FieldElement>& roots) {
    int D = L->degree();
    int e = (int)roots.size();
    std::vector<long long> weights(e);

    auto combo = [&](const std::vector<int>& perm) {
        FieldElement z = L->zero();
        for (int i = 0; i < e; ++i)
            z = z + roots[perm[i]] * L->from_integer(weights[i]);
        return z;
    };

    std::vector<int> id_perm(e);
    for (int i = 0; i < e; ++i) id_perm[i] = i;

    // search small weights until the combination is primitive over k
    std::vector<FieldElement> zpow;
    std::mt19937_64 rng(0x5EED);
    for (int attempt = 0;; ++attempt) {
        for (int i = 0; i < e; ++i)
            weights[i] = attempt == 0 ? i + 1 : (long long)(rng() % 19) + 1;
        FieldElement z = combo(id_perm);
        zpow.assign(1, L->one());
        for (int j = 1; j < D; ++j) zpow.push_back(zpow.back() * z);
        if (rank(rows_of(L, zpow)) == D) break;
        if (attempt > 200)
            throw InvalidInput("closure certificate: could not find a primitive element; "
                               "is the closure generated by the listed roots?");
    }
    FieldElement z = combo(id_perm);

    // minimal polynomial of z over k has full degree D
    std::vector<FieldElement> zD = zpow;
    zD.push_back(zpow.back() * z);
    auto dep = span_coords(L, zpow, zD[D]);
    if (!dep) throw InternalError("primitive element has no degree-D relation");

    // the minimal polynomial of z is M'(y) = y^D - sum_j dep_j y^j
    auto eval_minpoly = [&](const FieldElement& y) {
        FieldElement ypow = L->one();
        FieldElement acc = L->zero();
        for (int j = 0; j < D; ++j) {
            auto co = L->base_tower()->to_rats((*dep)[j]);
            acc = acc + ypow * L->from_rational(co[0]);
            ypow = ypow * y;
        }
        return ypow - acc;  // y^D - sum
    };

    // express the L-generator as a k-polynomial in z
    auto gcoords = span_coords(L, zpow, L->generator());
    if (!gcoords) throw InternalError("primitive element does not generate the closure");

    std::vector<FieldElement> images;
    std::vector<int> perm(e);
    for (int i = 0; i < e; ++i) perm[i] = i;
    do {
        FieldElement zp = combo(perm);
        if (!eval_minpoly(zp).is_zero()) continue;
        // automorphism z -> zp; generator image = g(z) evaluated at zp
        FieldElement img = L->zero(), pw = L->one();
        for (int j = 0; j < D; ++j) {
            auto co = L->base_tower()->to_rats((*gcoords)[j]);
            img = img + pw * L->from_rational(co[0]);
            pw = pw * zp;
        }
        if (std::find(images.begin(), images.end(), img) == images.end()) images.push_back(img);
    } while (std::next_permutation(perm.begin(), perm.end()));

    if ((int)images.size() != D)
        throw InvalidInput("closure certificate: found " + std::to_string(images.size()) +
                           " automorphisms, expected " + std::to_string(D) +
                           "; the closure must be the splitting field of the modulus");
    return images;
}

inline std::shared_ptr<const ClosureBundle> build_bundle(
    const FieldTower* K, std::shared_ptr<const FieldTower> L_holder,
    std::vector<FieldElement> roots) {
    auto bundle = std::make_shared<ClosureBundle>();
    bundle->owner = K;
    bundle->closure_holder = L_holder;
    const FieldTower* L = L_holder ? L_holder.get() : K;
    bundle->L = L;
    verify_roots(K, L, roots);
    // normalize self-closures so that iota is the identity embedding
    if (!L_holder) {
        FieldElement gen = K->generator();
        auto it = std::find(roots.begin(), roots.end(), gen);
        if (it == roots.end()) throw InternalError("generator missing from its own root list");
        std::iter_swap(roots.begin(), it);
        std::sort(roots.begin() + 1, roots.end(),
                  [](const FieldElement& a, const FieldElement& b) { return a.lex_less(b); });
    }
    bundle->roots = roots;

    // the closure must be generated by the roots (it is a normal closure)
    if ((int)algebra_span(L, roots).size() != L->degree())
        throw InvalidInput("closure certificate: field is larger than the splitting field "
                           "of the modulus");

    std::vector<FieldElement> iota_pows;
    FieldElement ip = L->one();
    for (int t = 0; t < K->degree(); ++t) {
        iota_pows.push_back(ip);
        ip = ip * roots[0];
    }
    bundle->iota_pow_rows = rows_of(L, iota_pows);

    // Gal(L/k)
    std::vector<FieldElement> aut_images;
    if (!L_holder) {
        aut_images = roots;  // automorphisms of a normal simple extension <-> roots
    } else {
        aut_images = closure_automorphism_images(L, roots);
    }
    bundle->aut_closure = build_galois_group(L, aut_images);

    // subgroup fixing iota(K) pointwise
    for (int i = 0; i < bundle->aut_closure.size(); ++i)
        if (bundle->aut_closure.elements[i].apply(roots[0]) == roots[0])
            bundle->gal_over_k_image.push_back(i);

    // Gal(K/k): roots of the modulus lying inside iota(K), pulled back
    std::vector<FieldElement> gal_images;
    for (auto& r : bundle->roots) {
        auto c = solve_left(bundle->iota_pow_rows, L->base_coords(r));
        if (c) gal_images.push_back(K->from_base_coords(*c));
    }
    bundle->gal = build_galois_group(K, gal_images);

    // orbits of embeddings <-> irreducible factors of the modulus over K
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        EmbeddingOrbit orb;
        orb.factor = minpoly_over_subfield(K, L, roots[0], roots[i]);
        orb.representative = FieldMap{K, L, roots[i]};
        for (size_t j = i; j < roots.size(); ++j) {
            if (used[j]) continue;
            Poly fj = minpoly_over_subfield(K, L, roots[0], roots[j]);
            if (fj == orb.factor) {
                used[j] = true;
                orb.root_indices.push_back((int)j);
            }
        }
        orb.size = (int)orb.root_indices.size();
        if (orb.size != orb.factor.degree())
            throw InternalError("orbit size does not match its factor degree");
        bundle->orbits.push_back(std::move(orb));
    }
    std::sort(bundle->orbits.begin(), bundle->orbits.end(),
              [](const EmbeddingOrbit& a, const EmbeddingOrbit& b) {
                  return poly_lex_less(a.factor, b.factor);
              });
    return bundle;
}

inline bool has_rational_root(const std::vector<Rat>& mod) {
    // rational root theorem on the primitive integer form
    Int lcm = 1;
    for (auto& c : mod) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(c));
    std::vector<Int> ic;
    for (auto& c : mod)
        ic.push_back((Int)(boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c))));
    Int a0 = ic.front(), an = ic.back();
    if (a0 == 0) return true;
    auto divisors = [](Int n) {
        std::vector<Int> ds;
        n = boost::multiprecision::abs(n);
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    for (Int p : divisors(a0))
        for (Int q : divisors(an))
            for (int s : {1, -1}) {
                Rat r(p * s, q);
                Rat acc = 0;
                for (int i = (int)ic.size() - 1; i >= 0; --i) acc = acc * r + Rat(ic[i]);
                if (acc == 0) return true;
            }
    return false;
}

inline bool quartic_splits_over_q(const std::vector<Rat>& mod) {
    // substitute x = y/c with c the common denominator: y^4 + m3*c*y^3 + ...
    // is monic with integer coefficients, and by Gauss any monic rational
    // factorization scales to one by monic integer quadratics
    Int lcm = 1;
    for (auto& c : mod) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(c));
    std::vector<Int> ic(5);
    Int scale = 1;
    for (int i = 4; i >= 0; --i) {
        Rat v = mod[i] * Rat(scale);
        if (boost::multiprecision::denominator(v) != 1)
            throw InternalError("quartic scaling failed");
        ic[i] = (Int)boost::multiprecision::numerator(v);
        scale *= lcm;
    }
    // y^4 + c3 y^3 + c2 y^2 + c1 y + c0 = (y^2 + a y + b)(y^2 + c y + d)
    // => b*d = c0, so enumerate divisor pairs of c0
    Int c0 = ic[0], c1 = ic[1], c2 = ic[2], c3 = ic[3];
    if (c0 == 0) return true;
    std::vector<Int> ds;
    Int n = boost::multiprecision::abs(c0);
    for (Int d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            ds.push_back(d);
            ds.push_back(n / d);
            ds.push_back(-d);
            ds.push_back(-(n / d));
        }
    for (Int b : ds) {
        if (c0 % b != 0) continue;
        Int d = c0 / b;
        // unknowns a, c with: a + c = c3 ; b + d + a*c = c2 ; a*d + b*c = c1
        // a*c = c2 - b - d and a + c = c3 -> a is a root of t^2 - c3 t + (c2-b-d)
        Int prod = c2 - b - d, sum = c3;
        Int disc = sum * sum - 4 * prod;
        if (disc < 0) continue;
        Int s = boost::multiprecision::sqrt(disc);
        if (s * s != disc) continue;
        for (int sign : {1, -1}) {
            Int two_a = sum + sign * s;
            if (two_a % 2 != 0) continue;
            Int a = two_a / 2, c = sum - a;
            if (a * d + b * c == c1) return true;
        }
    }
    return false;
}

}  // namespace detail

struct ClosureSpec {
    std::vector<Rat> modulus;               // monic, over the base
    std::vector<std::vector<Rat>> roots;    // roots of K's modulus inside the closure
};

/// Construct a tower K = base[x]/(modulus), checking that the modulus is monic,
/// irreducible and separable, and attach normal-closure data.
///
/// Finite base: the closure is K itself and is computed outright.
/// Rational base: closure data comes from the (exactly verified) certificate;
/// towers built without one support plain arithmetic only.
inline std::shared_ptr<const FieldTower> make_extension(
    BaseField base, const std::vector<Rat>& modulus, const std::string& name,
    const std::optional<ClosureSpec>& closure = std::nullopt, uint64_t seed = 0xD1CE) {
    auto tower = FieldTower::make_raw(base, modulus, name);
    FieldTower* K = tower.get();

    // separability: gcd(m, m') = 1 over the base
    {
        const FieldTower* bt = K->base_tower();
        Poly m = K->finite()
                     ? poly_from_rats(bt, [&] {
                           std::vector<Rat> cs;
                           for (auto v : K->mod_f) cs.emplace_back(v);
                           return cs;
                       }())
                     : poly_from_rats(bt, K->mod_r);
        Poly d = derivative(m);
        if (d.is_zero() || gcd(m, d).degree() != 0)
            throw InvalidInput("modulus of " + name + " is not separable");
        if (K->finite()) {
            if (!is_irreducible(m)) {
                auto fs = factor_poly(m, seed);
                throw InvalidInput("modulus of " + name + " is reducible; factor of degree " +
                                   std::to_string(fs.front().factor.degree()) + " found");
            }
        } else {
            if (K->degree() >= 2 && detail::has_rational_root(K->mod_r))
                throw InvalidInput("modulus of " + name + " is reducible: it has a rational root");
            if (K->degree() == 4 && detail::quartic_splits_over_q(K->mod_r))
                throw InvalidInput("modulus of " + name +
                                   " is reducible: it splits into integer quadratics");
            // degree >= 5: irreducibility is accepted as certified
        }
    }

    if (K->finite()) {
        if (closure) throw InvalidInput("finite fields are self-closed; omit the closure block");
        Poly m = modulus_poly(K);
        auto roots = roots_in_field(m, seed);
        if ((int)roots.size() != K->degree())
            throw InternalError("finite modulus did not split over its own extension");
        K->closure = detail::build_bundle(K, nullptr, roots);
    } else if (closure) {
        bool self = closure->modulus == K->mod_r;
        std::shared_ptr<const FieldTower> L_holder;
        const FieldTower* L = K;
        if (!self) {
            L_holder = make_extension(base, closure->modulus, name + "_closure");
            L = L_holder.get();
        }
        std::vector<FieldElement> roots;
        for (auto& rc : closure->roots) roots.push_back(L->from_rats(rc));
        K->closure = detail::build_bundle(K, L_holder, roots);
    }
    return tower;
}

inline const ClosureBundle& closure_of(const FieldTower& t) {
    if (!t.closure)
        throw InvalidInput("field " + t.name +
                           " has no normal-closure certificate; this operation needs one");
    return *t.closure;
}

/// Gal(K/k): automorphisms correspond to roots of the modulus inside K.
inline const GaloisGroup& galois_group(const FieldTower& t) { return closure_of(t).gal; }

/// Finite orbits of embeddings K -> closure under Gal(closure/K).
inline const std::vector<EmbeddingOrbit>& embedding_orbits(const FieldTower& t) {
    return closure_of(t).orbits;
}

/// All extensions of an embedding lambda : K -> L to automorphisms of L.
inline std::vector<int> extensions_of(const ClosureBundle& cb, const FieldMap& lambda) {
    if (lambda.target != cb.L) throw InvalidInput("embedding does not land in the closure");
    std::vector<int> out;
    for (int i = 0; i < cb.aut_closure.size(); ++i)
        if (cb.aut_closure.elements[i].apply(cb.roots[0]) == lambda.image) out.push_back(i);
    return out;
}

/// mu = (extension of lambda)^{-1} restricted to K. The orbit of the result
/// does not depend on which extension is chosen.
inline FieldMap invert_restricted_extension(const FieldTower& K, const FieldMap& lambda) {
    const ClosureBundle& cb = closure_of(K);
    auto exts = extensions_of(cb, lambda);
    if (exts.empty()) throw InvalidInput("no extension of the embedding to the closure exists");
    int inv = cb.aut_closure.inverse[exts.front()];
    return FieldMap{&K, cb.L, cb.aut_closure.elements[inv].apply(cb.roots[0])};
}

/// The orbit containing a given embedding K -> closure.
inline const EmbeddingOrbit& orbit_of(const FieldTower& K, const FieldMap& lambda) {
    const ClosureBundle& cb = closure_of(K);
    for (size_t i = 0; i < cb.roots.size(); ++i) {
        if (cb.roots[i] == lambda.image) {
            for (auto& orb : cb.orbits)
                if (std::find(orb.root_indices.begin(), orb.root_indices.end(), (int)i) !=
                    orb.root_indices.end())
                    return orb;
        }
    }
    throw InvalidInput("embedding image is not a root of the modulus");
}

/// Orbit-level action lambda^G . (delta, eps) = orbit of (ext(delta)^{-1} lambda eps).
inline const EmbeddingOrbit& orbit_pair_action(const FieldTower& K, const EmbeddingOrbit& orb,
                                               const FieldMap& delta, const FieldMap& eps) {
    const ClosureBundle& cb = closure_of(K);
    auto dexts = extensions_of(cb, FieldMap{&K, cb.L, cb.iota().apply(delta.image)});
    if (dexts.empty()) throw InternalError("Galois element has no extension to the closure");
    int dinv = cb.aut_closure.inverse[dexts.front()];
    const FieldMap& dbar_inv = cb.aut_closure.elements[dinv];
    // (dbar^{-1} lambda eps)(gen) = dbar^{-1}(lambda(eps(gen)))
    FieldElement img = dbar_inv.apply(orb.representative.apply(eps.image));
    return orbit_of(K, FieldMap{&K, cb.L, img});
}

}  // namespace ncline
