#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;

TEST_CASE("Gal(GF(9)/GF(3)) is {id, Frobenius}") {
    auto k = testhelp::field("F9");
    const GaloisGroup& g = galois_group(*k);
    REQUIRE(g.size() == 2);
    CHECK(g.elements[0].is_identity());
    FieldElement a = k->generator();
    CHECK(g.elements[1].apply(a) == a.pow(3));
    CHECK(compose(g.elements[1], g.elements[1]).is_identity());
}

TEST_CASE("Gal(GF(27)/GF(3)) is cyclic of order 3 generated by Frobenius") {
    auto k = testhelp::field("F27");
    const GaloisGroup& g = galois_group(*k);
    REQUIRE(g.size() == 3);
    FieldElement a = k->generator();
    int frob = -1;
    for (int i = 0; i < 3; ++i)
        if (g.elements[i].image == a.pow(3)) frob = i;
    REQUIRE(frob >= 0);
    CHECK(g.table[frob][frob] != 0);
    CHECK(g.table[g.table[frob][frob]][frob] == 0);  // Frob^3 = id
}

TEST_CASE("Gal(Q(cbrt2)/Q) is trivial") {
    auto k = testhelp::field("Qcbrt2");
    CHECK(galois_group(*k).size() == 1);
    // the quadratic cofactor x^2 + a x + a^2 has no root in K: exactly one
    // root of the modulus lies in the base copy of K inside the closure
    const ClosureBundle& cb = closure_of(*k);
    int in_K = 0;
    for (auto& r : cb.roots)
        if (solve_left(cb.iota_pow_rows, cb.L->base_coords(r))) ++in_K;
    CHECK(in_K == 1);
}

TEST_CASE("group tables are consistent for every catalog field") {
    for (auto& f : testhelp::cat().fields) {
        const GaloisGroup& g = galois_group(*f);
        CHECK(f->degree() % g.size() == 0);  // order divides the degree
        for (int i = 0; i < g.size(); ++i) {
            // each image is a root of the modulus
            CHECK(f->eval_modulus(g.elements[i].image).is_zero());
            // table consistency against direct composition
            for (int j = 0; j < g.size(); ++j) {
                FieldMap c = compose(g.elements[i], g.elements[j]);
                CHECK(g.elements[g.table[i][j]].image == c.image);
            }
        }
    }
}

TEST_CASE("embedding orbits partition the roots and sizes add to the degree") {
    for (auto& f : testhelp::cat().fields) {
        auto& orbits = embedding_orbits(*f);
        int total = 0;
        std::vector<bool> seen(f->degree(), false);
        for (auto& orb : orbits) {
            total += orb.size;
            CHECK(orb.size == orb.factor.degree());
            for (int idx : orb.root_indices) {
                CHECK(!seen[idx]);
                seen[idx] = true;
            }
        }
        CHECK(total == f->degree());
    }
}

TEST_CASE("orbit structure of the catalog fields") {
    CHECK(embedding_orbits(*testhelp::field("F9")).size() == 2);
    CHECK(embedding_orbits(*testhelp::field("F27")).size() == 3);  // all size 1
    auto& orb3 = embedding_orbits(*testhelp::field("Qcbrt2"));
    REQUIRE(orb3.size() == 2);
    CHECK(orb3[0].size + orb3[1].size == 3);  // a size-1 and a size-2 orbit
    // finite extensions of finite fields are normal: every orbit has size 1
    for (auto& orb : embedding_orbits(*testhelp::field("F25"))) CHECK(orb.size == 1);
}

TEST_CASE("composition rejects mismatched domains") {
    auto k9 = testhelp::field("F9");
    auto k27 = testhelp::field("F27");
    CHECK_THROWS_AS(compose(galois_group(*k9).elements[0], galois_group(*k27).elements[0]),
                    InvalidInput);
}

TEST_CASE("inverting an embedding through the closure") {
    auto k = testhelp::field("Qcbrt2");
    const ClosureBundle& cb = closure_of(*k);

    // identity embedding inverts to itself
    FieldMap mu_id = invert_restricted_extension(*k, cb.iota());
    CHECK(mu_id.image == cb.roots[0]);

    // a complex embedding inverts into the size-2 orbit
    auto& orbits = embedding_orbits(*k);
    const EmbeddingOrbit& big = orbits[0].size == 2 ? orbits[0] : orbits[1];
    FieldMap mu = invert_restricted_extension(*k, big.representative);
    CHECK(orbit_of(*k, mu) == big);

    // the orbit is independent of the chosen extension, exhaustively
    for (int i : extensions_of(cb, big.representative)) {
        int inv = cb.aut_closure.inverse[i];
        FieldMap cand{k.get(), cb.L, cb.aut_closure.elements[inv].apply(cb.roots[0])};
        CHECK(orbit_of(*k, cand) == orbit_of(*k, mu));
    }
}

TEST_CASE("Frobenius inverts to itself on GF(9)") {
    auto k = testhelp::field("F9");
    const ClosureBundle& cb = closure_of(*k);
    const GaloisGroup& g = galois_group(*k);
    FieldMap frob_embed{k.get(), cb.L, cb.iota().apply(g.elements[1].image)};
    FieldMap mu = invert_restricted_extension(*k, frob_embed);
    CHECK(mu.image == frob_embed.image);  // order 2
}

TEST_CASE("the orbit-level pair action is extension independent") {
    auto k = testhelp::field("Qquart2");
    const GaloisGroup& g = galois_group(*k);
    const ClosureBundle& cb = closure_of(*k);
    for (auto& orb : embedding_orbits(*k))
        for (int d = 0; d < g.size(); ++d)
            for (int e = 0; e < g.size(); ++e) {
                const EmbeddingOrbit& first =
                    orbit_pair_action(*k, orb, g.elements[d], g.elements[e]);
                // recompute with every extension of delta
                for (int i :
                     extensions_of(cb, FieldMap{k.get(), cb.L,
                                                cb.iota().apply(g.elements[d].image)})) {
                    int inv = cb.aut_closure.inverse[i];
                    FieldElement img = cb.aut_closure.elements[inv].apply(
                        orb.representative.apply(g.elements[e].image));
                    CHECK(orbit_of(*k, FieldMap{k.get(), cb.L, img}) == first);
                }
            }
}

TEST_CASE("user closure certificates are verified exactly") {
    // wrong root: 2 is not a root of x^2 - 3
    ClosureSpec cs;
    cs.modulus = {Rat(-3), Rat(0), Rat(1)};
    cs.roots = {{Rat(2)}, {Rat(0), Rat(-1)}};
    CHECK_THROWS_AS(make_extension(BaseField{0}, {Rat(-3), Rat(0), Rat(1)}, "bad", cs),
                    InvalidInput);
    // repeated roots
    ClosureSpec cs2;
    cs2.modulus = {Rat(-3), Rat(0), Rat(1)};
    cs2.roots = {{Rat(0), Rat(1)}, {Rat(0), Rat(1)}};
    CHECK_THROWS_AS(make_extension(BaseField{0}, {Rat(-3), Rat(0), Rat(1)}, "bad", cs2),
                    InvalidInput);
    // too few roots
    ClosureSpec cs3;
    cs3.modulus = {Rat(-3), Rat(0), Rat(1)};
    cs3.roots = {{Rat(0), Rat(1)}};
    CHECK_THROWS_AS(make_extension(BaseField{0}, {Rat(-3), Rat(0), Rat(1)}, "bad", cs3),
                    InvalidInput);
    // a valid certificate passes
    ClosureSpec ok;
    ok.modulus = {Rat(-3), Rat(0), Rat(1)};
    ok.roots = {{Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
    auto k = make_extension(BaseField{0}, {Rat(-3), Rat(0), Rat(1)}, "Qsqrt3", ok);
    CHECK(galois_group(*k).size() == 2);
}

TEST_CASE("operations requiring a closure reject towers without one") {
    auto k = make_extension(BaseField{0}, {Rat(-5), Rat(0), Rat(1)}, "Qsqrt5");
    CHECK_THROWS_AS(galois_group(*k), InvalidInput);
    CHECK_THROWS_AS(embedding_orbits(*k), InvalidInput);
}
