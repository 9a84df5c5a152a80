#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;

TEST_CASE("degree-2 extension of GF(3) has 9 elements and a^2 = -1") {
    auto k = make_extension(BaseField{3}, {Rat(1), Rat(0), Rat(1)}, "K");
    CHECK(k->degree() == 2);
    CHECK(k->order() == 9);
    FieldElement a = k->generator();
    CHECK(a * a == k->from_integer(-1));
    // exhaustive field axioms spot: every nonzero element inverts
    for (long long i = 1; i < 9; ++i) {
        FieldElement x = k->element_from_index(i);
        CHECK(x * x.inverse() == k->one());
    }
}

TEST_CASE("cube root of 2 gives a degree-3 extension of Q") {
    auto k = make_extension(BaseField{0}, {Rat(-2), Rat(0), Rat(0), Rat(1)}, "K");
    CHECK(k->degree() == 3);
    FieldElement a = k->generator();
    CHECK(a * a * a == k->from_integer(2));
    FieldElement x = a + k->from_rational(Rat(1, 2));
    CHECK(x * x.inverse() == k->one());
}

TEST_CASE("reducible moduli are rejected with a factor") {
    // x^2 - 1 = (x-1)(x+1) over GF(3)
    CHECK_THROWS_AS(make_extension(BaseField{3}, {Rat(-1), Rat(0), Rat(1)}, "bad"), InvalidInput);
    try {
        make_extension(BaseField{3}, {Rat(-1), Rat(0), Rat(1)}, "bad");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("degree 1") != std::string::npos);
    }
    // x^2 - 4 has the rational root 2
    CHECK_THROWS_AS(make_extension(BaseField{0}, {Rat(-4), Rat(0), Rat(1)}, "bad"), InvalidInput);
    // x^4 - 10x^2 + 9 = (x^2-1)(x^2-9) splits into integer quadratics
    CHECK_THROWS_AS(
        make_extension(BaseField{0}, {Rat(9), Rat(0), Rat(-10), Rat(0), Rat(1)}, "bad"),
        InvalidInput);
}

TEST_CASE("inseparable moduli are rejected") {
    // x^3 - 1 = (x-1)^3 over GF(3): gcd with derivative is not 1
    CHECK_THROWS_AS(make_extension(BaseField{3}, {Rat(-1), Rat(0), Rat(0), Rat(1)}, "bad"),
                    InvalidInput);
}

TEST_CASE("non-prime characteristic is rejected") {
    CHECK_THROWS_AS(make_extension(BaseField{4}, {Rat(1), Rat(1), Rat(1)}, "bad"), InvalidInput);
}

TEST_CASE("modulus separability holds for every catalog tower") {
    for (auto& f : testhelp::cat().fields) {
        const FieldTower* bt = f->base_tower();
        Poly m = f->finite() ? poly_from_rats(bt, [&] {
            std::vector<Rat> cs;
            for (auto v : f->mod_f) cs.emplace_back(v);
            return cs;
        }())
                             : poly_from_rats(bt, f->mod_r);
        CHECK(gcd(m, derivative(m)).degree() == 0);
    }
}

TEST_CASE("field arithmetic satisfies ring axioms on random elements") {
    auto k = testhelp::field("F25");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        FieldElement x = k->element_from_index((long long)(rng() % 25));
        FieldElement y = k->element_from_index((long long)(rng() % 25));
        FieldElement z = k->element_from_index((long long)(rng() % 25));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x + (-x) == k->zero());
    }
}

TEST_CASE("rational tower arithmetic is exact") {
    auto k = testhelp::field("Qcbrt2");
    FieldElement a = k->generator();
    FieldElement x = a * a - k->from_rational(Rat(7, 3)) * a + k->one();
    FieldElement y = x.inverse();
    CHECK(x * y == k->one());
    CHECK(x.pow(3) * x.pow(-3) == k->one());
}
