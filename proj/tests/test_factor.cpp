#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;

namespace {

Poly product_of(const std::vector<PolyFactor>& fs, const FieldTower* t) {
    Poly acc = Poly::constant(t, t->one());
    for (auto& f : fs)
        for (int m = 0; m < f.multiplicity; ++m) acc = acc * f.factor;
    return acc;
}

}  // namespace

TEST_CASE("x^2+1 splits into (x-a)(x+a) over GF(9)") {
    auto k = testhelp::field("F9");
    Poly f = poly_from_rats(k.get(), {Rat(1), Rat(0), Rat(1)});
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].factor.degree() == 1);
    CHECK(fs[1].factor.degree() == 1);
    auto roots = roots_in_field(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -roots[1]);
    CHECK(roots[0] * roots[0] == k->from_integer(-1));
}

TEST_CASE("x^2+1 is irreducible over GF(3)") {
    auto f3 = make_extension(BaseField{3}, {Rat(0), Rat(1)}, "F3");
    Poly f = poly_from_rats(f3.get(), {Rat(1), Rat(0), Rat(1)});
    CHECK(is_irreducible(f));
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor.degree() == 2);
}

TEST_CASE("x^9-x over GF(3) is the product of all monic irreducibles of degree <= 2") {
    auto f3 = make_extension(BaseField{3}, {Rat(0), Rat(1)}, "F3");
    // oracle: enumerate monic irreducibles of degree 1 and 2 by brute force
    std::vector<Poly> expected;
    for (long long c0 = 0; c0 < 3; ++c0) {
        Poly lin(f3.get(), {f3->from_integer(c0), f3->one()});
        expected.push_back(lin);
    }
    for (long long c0 = 0; c0 < 3; ++c0)
        for (long long c1 = 0; c1 < 3; ++c1) {
            Poly q(f3.get(), {f3->from_integer(c0), f3->from_integer(c1), f3->one()});
            bool has_root = false;
            for (long long r = 0; r < 3; ++r)
                if (q.eval(f3->from_integer(r)).is_zero()) has_root = true;
            if (!has_root) expected.push_back(q);
        }
    REQUIRE(expected.size() == 6);

    Poly f(f3.get());
    f.c.assign(10, f3->zero());
    f.c[1] = -f3->one();
    f.c[9] = f3->one();
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == expected.size());
    for (auto& fac : fs) {
        CHECK(fac.multiplicity == 1);
        bool found = false;
        for (auto& e : expected)
            if (e == fac.factor) found = true;
        CHECK(found);
    }
    CHECK(product_of(fs, f3.get()) == f.monic());
}

TEST_CASE("factorization handles repeated factors and p-th powers") {
    auto f3 = make_extension(BaseField{3}, {Rat(0), Rat(1)}, "F3");
    // (x+1)^3 (x^2+1)
    Poly a = poly_from_rats(f3.get(), {Rat(1), Rat(1)});
    Poly b = poly_from_rats(f3.get(), {Rat(1), Rat(0), Rat(1)});
    Poly f = a * a * a * b;
    auto fs = factor_poly(f);
    REQUIRE(fs.size() == 2);
    CHECK(product_of(fs, f3.get()) == f.monic());
    bool saw3 = false;
    for (auto& fac : fs)
        if (fac.multiplicity == 3) saw3 = true;
    CHECK(saw3);
}

TEST_CASE("factorization is deterministic for a fixed seed") {
    auto k = testhelp::field("F25");
    Poly f(k.get());
    f.c.assign(7, k->zero());
    f.c[0] = k->generator();
    f.c[2] = k->one();
    f.c[6] = k->one();
    auto f1 = factor_poly(f, 42), f2 = factor_poly(f, 42);
    REQUIRE(f1.size() == f2.size());
    for (size_t i = 0; i < f1.size(); ++i) CHECK(f1[i].factor == f2[i].factor);
    CHECK(product_of(f1, k.get()) == f.monic());
}

TEST_CASE("the zero polynomial is rejected") {
    auto k = testhelp::field("F9");
    CHECK_THROWS_AS(factor_poly(Poly(k.get())), InvalidInput);
}
