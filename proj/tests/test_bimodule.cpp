#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;
using testhelp::bimod;
using testhelp::field;

namespace {

std::vector<std::string> battery_names() {
    std::vector<std::string> names;
    for (auto& b : testhelp::cat().bimodules) names.push_back(b.field + "." + b.name);
    return names;
}

TwoSidedVectorSpace random_validated(std::shared_ptr<const FieldTower> k, int rank,
                                     std::mt19937_64& rng) {
    // random block sum of twisted lines, conjugated by a random basis change
    const GaloisGroup& g = galois_group(*k);
    Mat m(k.get(), rank, rank);
    for (int i = 0; i < rank; ++i)
        m.at(i, i) = g.elements[(int)(rng() % g.size())].image;
    long long q = k->order_ll();
    while (true) {
        Mat p(k.get(), rank, rank);
        for (auto& x : p.a) x = k->element_from_index((long long)(rng() % q));
        auto pi = try_inverse(p);
        if (!pi) continue;
        return make_bimodule(k, p * m * *pi);
    }
}

}  // namespace

TEST_CASE("validation accepts roots of the modulus and rejects non-roots") {
    auto k = field("F9");
    FieldElement a = k->generator();
    Mat good(k.get(), 2, 2);
    good.at(0, 0) = a;
    good.at(1, 1) = a.pow(3);
    CHECK(make_bimodule(k, good).rank() == 2);

    Mat bad(k.get(), 2, 2);
    bad.at(0, 0) = a;
    bad.at(1, 1) = k->one();  // 1^2 + 1 != 0 in characteristic 3
    CHECK_THROWS_AS(make_bimodule(k, bad), InvalidInput);
}

TEST_CASE("the companion of x^2 + a x + a^2 validates over Q(cbrt2)") {
    // Cayley-Hamilton gives phi^2 + a phi + a^2 = 0, and x^3 - 2 factors as
    // (x - a)(x^2 + a x + a^2), so phi^3 = 2
    const auto& v = bimod("Qcbrt2.simple");
    CHECK(v.rank() == 2);
    Mat cube = v.phi * v.phi * v.phi;
    Mat two = Mat::identity(v.K(), 2).scaled(v.K()->from_integer(2));
    CHECK(cube == two);
}

TEST_CASE("decomposition of the catalog examples") {
    CHECK(decompose(bimod("F9.split")).rank2_shape() == Rank2Shape::TwoLines);
    CHECK(decompose(bimod("F9.double")).rank2_shape() == Rank2Shape::DoubleLine);
    CHECK(decompose(bimod("F9.double")).summands[0].multiplicity == 2);
    CHECK(decompose(bimod("Qcbrt2.simple")).rank2_shape() == Rank2Shape::Simple);
    CHECK(decompose(bimod("Qcbrt2.simple")).summands[0].orbit.size == 2);
}

TEST_CASE("the characteristic polynomial equals the product of orbit factors") {
    // independent oracle for the decomposition multiplicities
    for (auto& name : battery_names()) {
        const auto& v = bimod(name);
        auto dec = decompose(v);
        Poly prod = Poly::constant(v.K(), v.K()->one());
        for (auto& s : dec.summands)
            for (int m = 0; m < s.multiplicity; ++m) prod = prod * s.orbit.factor;
        CHECK(prod == charpoly(v.phi));
    }
}

TEST_CASE("hom spaces have the predicted dimensions") {
    const auto& v = bimod("F9.split");
    CHECK(hom_space(v, v).size() == 2);  // diagonal matrices only
    auto k = field("F9");
    const GaloisGroup& g = galois_group(*k);
    auto kid = twisted_line(k, g.elements[0]);
    auto kf = twisted_line(k, g.elements[1]);
    CHECK(hom_space(kid, kf).empty());  // a m = m a^3 forces m = 0
    const auto& s = bimod("Qcbrt2.simple");
    CHECK(hom_space(s, s).size() == 2);  // End V(lambda) = K(lambda), K-dim 2
}

TEST_CASE("every hom-space basis element intertwines") {
    std::mt19937_64 rng(17);
    auto k = field("F25");
    for (int t = 0; t < 4; ++t) {
        auto v = random_validated(k, 2, rng);
        auto w = random_validated(k, 2, rng);
        for (auto& m : hom_space(v, w)) CHECK(is_intertwiner(v, w, m));
    }
}

TEST_CASE("isomorphism testing produces verified witnesses") {
    auto k = field("F9");
    const GaloisGroup& g = galois_group(*k);
    auto kid = twisted_line(k, g.elements[0]);
    auto kf = twisted_line(k, g.elements[1]);
    auto vw = direct_sum(kid, kf);
    auto wv = direct_sum(kf, kid);
    auto wit = isomorphism_witness(vw, wv);
    REQUIRE(wit.has_value());
    CHECK(is_intertwiner(vw, wv, *wit));
    CHECK(try_inverse(*wit).has_value());
    CHECK(!is_isomorphic(direct_sum(kid, kid), vw));
}

TEST_CASE("isomorphism is an equivalence relation on a random battery") {
    std::mt19937_64 rng(23);
    auto k = field("F9");
    std::vector<TwoSidedVectorSpace> battery;
    for (int t = 0; t < 6; ++t) battery.push_back(random_validated(k, 2, rng));
    for (auto& v : battery) CHECK(is_isomorphic(v, v));
    for (auto& v : battery)
        for (auto& w : battery) CHECK(is_isomorphic(v, w) == is_isomorphic(w, v));
    for (auto& u : battery)
        for (auto& v : battery)
            for (auto& w : battery)
                if (is_isomorphic(u, v) && is_isomorphic(v, w)) CHECK(is_isomorphic(u, w));
}

TEST_CASE("the dual of a twisted line twists by the inverse") {
    for (auto& fname : {"F9", "F27", "F25", "Qi", "Qsqrt2", "Qbiquad"}) {
        auto k = field(fname);
        const GaloisGroup& g = galois_group(*k);
        for (int i = 0; i < g.size(); ++i) {
            auto line = twisted_line(k, g.elements[i]);
            auto dd = right_dual(line);
            auto expected = twisted_line(k, g.elements[g.inverse[i]]);
            CHECK(is_isomorphic(dd.dual, expected));
        }
    }
}

TEST_CASE("the dual of a simple bimodule is the inverted embedding") {
    auto k = field("Qcbrt2");
    const auto& v = bimod("Qcbrt2.simple");
    auto dd = right_dual(v);
    auto dec = decompose(dd.dual);
    REQUIRE(dec.rank2_shape() == Rank2Shape::Simple);
    FieldMap mu = invert_restricted_extension(*k, decompose(v).summands[0].orbit.representative);
    CHECK(dec.summands[0].orbit == orbit_of(*k, mu));
}

TEST_CASE("biduality and mixed duals across the battery") {
    for (auto& name : battery_names()) {
        const auto& v = bimod(name);
        auto d1 = right_dual(v);
        auto d2 = right_dual(d1.dual);
        CHECK(is_isomorphic(v, d2.dual));
        auto ld = left_dual(v);
        auto back = right_dual(ld.dual);
        CHECK(is_isomorphic(back.dual, v));  // (*V)* ~ V
        auto fwd = left_dual(d1.dual);
        CHECK(is_isomorphic(fwd.dual, v));  // *(V*) ~ V
    }
}

TEST_CASE("iterated duals preserve rank for |i| <= 4") {
    const auto& v = bimod("F9.split");
    auto ch = build_dual_chain(v, 4, 4);
    for (int i = -4; i <= 4; ++i) CHECK(ch.space(i).rank() == 2);
    const auto& s = bimod("Qcbrt2.simple");
    auto ch2 = build_dual_chain(s, 4, 4);
    for (int i = -4; i <= 4; ++i) CHECK(ch2.space(i).rank() == 2);
}

TEST_CASE("triangle identities hold for all duality data in the battery") {
    for (auto& name : battery_names()) {
        const auto& v = bimod(name);
        auto ch = build_dual_chain(v, 3, 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(triangle_identities_hold(ch.space(i), ch.up[i]));
            CHECK(triangle_identities_hold(ch.space(-i), ch.down[i]));
        }
    }
}

TEST_CASE("unit elements are central and evaluation is a bimodule map") {
    for (auto& name : battery_names()) {
        const auto& v = bimod(name);
        auto ch = build_dual_chain(v, 2, 1);
        for (int i = -1; i <= 1; ++i) CHECK(unit_is_central(ch, i));

        // evaluation V* (x) V -> K as the bimodule K with trivial twist
        auto dd = ch.up[0];
        int n = v.rank();
        auto prod = tensor(dd.dual, v);
        Mat ev(v.K(), n * n, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<FieldElement> psi(n, v.K()->zero()), x(n, v.K()->zero());
                psi[i] = v.K()->one();
                x[j] = v.K()->one();
                ev.at(i * n + j, 0) = dual_pair(dd, psi, x);
            }
        Mat lhs = prod.phi * ev;
        Mat rhs = ev.scaled(v.K()->generator());
        CHECK(lhs == rhs);
    }
}

TEST_CASE("tensor products of twisted lines compose the twists") {
    auto k = field("F27");
    const GaloisGroup& g = galois_group(*k);
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) {
            auto t = tensor(twisted_line(k, g.elements[i]), twisted_line(k, g.elements[j]));
            auto expected = twisted_line(k, g.elements[g.table[i][j]]);
            CHECK(is_isomorphic(t, expected));
        }
}

TEST_CASE("tensor rank is multiplicative on random validated inputs") {
    std::mt19937_64 rng(29);
    auto k = field("F9");
    for (int t = 0; t < 5; ++t) {
        auto v = random_validated(k, 2, rng);
        auto w = random_validated(k, 2, rng);
        auto tw = tensor(v, w);
        CHECK(tw.rank() == v.rank() * w.rank());
        validate(tw);
    }
}

TEST_CASE("tensor construction is strictly associative in coordinates") {
    std::mt19937_64 rng(31);
    auto k = field("F9");
    auto u = random_validated(k, 2, rng);
    auto v = random_validated(k, 2, rng);
    auto w = random_validated(k, 2, rng);
    CHECK(tensor(tensor(u, v), w).phi == tensor(u, tensor(v, w)).phi);
}

TEST_CASE("twists act on decompositions orbit by orbit") {
    auto k = field("F9");
    const GaloisGroup& g = galois_group(*k);
    const auto& v = bimod("F9.split");

    // twisting by (Frob, id) swaps the two eigenvalues
    auto tw = twist(v, g.elements[1], g.elements[0]);
    FieldElement a = k->generator();
    CHECK(tw.phi.at(0, 0) == -a);
    CHECK(tw.phi.at(1, 1) == a);

    // identity twist is the identity
    CHECK(twist(v, g.elements[0], g.elements[0]).phi == v.phi);

    // twist agrees with explicit tensoring K_{delta^-1} (x) V (x) K_eps
    for (int d = 0; d < g.size(); ++d)
        for (int e = 0; e < g.size(); ++e) {
            auto lhs = twist(v, g.elements[d], g.elements[e]);
            auto rhs = tensor(tensor(twisted_line(k, g.elements[g.inverse[d]]), v),
                              twisted_line(k, g.elements[e]));
            CHECK(is_isomorphic(lhs, rhs));
        }
}

TEST_CASE("twisting rejects maps that are not automorphisms") {
    auto k = field("Qcbrt2");
    const auto& v = bimod("Qcbrt2.simple");
    const ClosureBundle& cb = closure_of(*k);
    // an embedding into the closure is not an automorphism of K
    FieldMap bad{k.get(), k.get(), k->generator() + k->one()};
    CHECK_THROWS_AS(twist(v, bad, bad), InvalidInput);
    (void)cb;
}

TEST_CASE("dual of a direct sum matches the sum of duals") {
    auto k = field("F27");
    const auto& v = bimod("F27.split");
    const auto& w = bimod("F27.split2");
    auto lhs = right_dual(direct_sum(v, w)).dual;
    auto rhs = direct_sum(right_dual(v).dual, right_dual(w).dual);
    CHECK(decompose(lhs) == decompose(rhs));
}

TEST_CASE("duals of morphisms: identities, scalings, contravariance") {
    auto k = field("F9");
    const GaloisGroup& g = galois_group(*k);
    FieldElement a = k->generator();

    // (id)* = id
    const auto& v = bimod("F9.split");
    auto dv = right_dual(v);
    CHECK(dual_of_morphism(Mat::identity(k.get(), 2), dv, dv) == Mat::identity(k.get(), 2));

    // right multiplication by b on K_sigma dualizes to left multiplication by b
    for (int i = 0; i < g.size(); ++i) {
        auto line = twisted_line(k, g.elements[i]);
        auto dd = right_dual(line);
        FieldElement b = a + k->one();
        Mat psi(k.get(), 1, 1);
        psi.at(0, 0) = g.elements[i].apply(b);  // v . b = v sigma(b)
        Mat dualized = dual_of_morphism(psi, dd, dd);
        CHECK(dualized.at(0, 0) == b);
    }

    // contravariance (psi o rho)* = rho* o psi* on random composable pairs
    std::mt19937_64 rng(37);
    for (int t = 0; t < 5; ++t) {
        auto u2 = random_validated(k, 2, rng);
        auto wit_uv = isomorphism_witness(u2, v);
        if (!wit_uv) continue;
        auto w2 = random_validated(k, 2, rng);
        auto wit_vw = isomorphism_witness(v, w2);
        if (!wit_vw) continue;
        auto du = right_dual(u2);
        auto dw = right_dual(w2);
        Mat rho = *wit_uv;  // u2 -> v
        Mat psi = *wit_vw;  // v -> w2
        Mat lhs = dual_of_morphism(rho * psi, du, dw);
        Mat rhs = dual_of_morphism(psi, dv, dw) * dual_of_morphism(rho, du, dv);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("dualized isomorphisms close the coevaluation square") {
    // for an isomorphism psi : V -> W, transporting the unit of V by
    // (psi (x) (psi*)^{-1}) lands on the unit of W
    auto k = field("F9");
    const auto& v = bimod("F9.split");
    std::mt19937_64 rng(41);
    auto w = random_validated(k, 2, rng);
    auto wit = isomorphism_witness(v, w);
    while (!wit) {
        w = random_validated(k, 2, rng);
        wit = isomorphism_witness(v, w);
    }
    auto dv = right_dual(v), dw = right_dual(w);
    Mat psi = *wit;
    Mat psi_dual_inv = inverse(dual_of_morphism(psi, dv, dw));  // V* -> W*
    int n = 2;
    std::vector<FieldElement> mapped(n * n, k->zero());
    for (int al = 0; al < n; ++al)
        for (int be = 0; be < n; ++be) {
            const FieldElement& c = dv.unit[al * n + be];
            if (c.is_zero()) continue;
            auto urow = psi.row(al);
            auto wrow = psi_dual_inv.row(be);
            for (int b2 = 0; b2 < n; ++b2) {
                if (wrow[b2].is_zero()) continue;
                auto ua = row_times_mat(urow, phi_of(w, wrow[b2]));
                for (int a2 = 0; a2 < n; ++a2)
                    mapped[a2 * n + b2] = mapped[a2 * n + b2] + c * ua[a2];
            }
        }
    // the image must be a central unit: a scalar multiple c . unit_W with
    // c fixed by comparing any nonzero coordinate
    FieldElement ratio = k->zero();
    for (int t = 0; t < n * n; ++t)
        if (!dw.unit[t].is_zero()) {
            ratio = mapped[t] / dw.unit[t];
            break;
        }
    REQUIRE(!ratio.is_zero());
    for (int t = 0; t < n * n; ++t) CHECK(mapped[t] == ratio * dw.unit[t]);
}
