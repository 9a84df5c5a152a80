#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;

namespace {

Mat random_mat(const FieldTower* k, int n, std::mt19937_64& rng) {
    Mat m(k, n, n);
    long long q = k->order_ll();
    for (auto& x : m.a) x = k->element_from_index((long long)(rng() % q));
    return m;
}

}  // namespace

TEST_CASE("rref, rank and kernel over GF(9)") {
    auto k = testhelp::field("F9");
    FieldElement a = k->generator();
    Mat m(k.get(), 2, 3);
    m.at(0, 0) = a;
    m.at(0, 1) = k->one();
    m.at(1, 0) = a * a;  // = -1
    m.at(1, 1) = a;      // row1 = a * row0
    CHECK(rank(m) == 1);
    auto kern = left_kernel(m);
    REQUIRE(kern.size() == 1);
    auto img = row_times_mat(kern[0], m);
    for (auto& x : img) CHECK(x.is_zero());
}

TEST_CASE("inverse round trip on random invertible matrices") {
    auto k = testhelp::field("F25");
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 10) {
        Mat m = random_mat(k.get(), 3, rng);
        auto inv = try_inverse(m);
        if (!inv) continue;
        CHECK(m * *inv == Mat::identity(k.get(), 3));
        ++done;
    }
}

TEST_CASE("solve_left solves and detects inconsistency") {
    auto k = testhelp::field("F9");
    FieldElement a = k->generator();
    Mat m(k.get(), 2, 2);
    m.at(0, 0) = k->one();
    m.at(0, 1) = a;
    m.at(1, 0) = a;
    m.at(1, 1) = a * a;  // singular: row1 = a row0
    std::vector<FieldElement> good{a, a * a};
    auto sol = solve_left(m, good);
    REQUIRE(sol.has_value());
    CHECK(row_times_mat(*sol, m) == good);
    std::vector<FieldElement> bad{k->one(), k->one()};
    CHECK(!solve_left(m, bad).has_value());
}

TEST_CASE("characteristic polynomial of a 2x2 matches trace and determinant") {
    auto k = testhelp::field("F9");
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        Mat m = random_mat(k.get(), 2, rng);
        Poly cp = charpoly(m);
        REQUIRE(cp.degree() == 2);
        CHECK(cp.c[2] == k->one());
        CHECK(cp.c[1] == -(m.at(0, 0) + m.at(1, 1)));
        CHECK(cp.c[0] == m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0));
    }
}

TEST_CASE("Cayley-Hamilton holds for random matrices up to size 4") {
    auto k = testhelp::field("F9");
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 4; ++n)
        for (int t = 0; t < 5; ++t) {
            Mat m = random_mat(k.get(), n, rng);
            CHECK(eval_poly_at(charpoly(m), m).is_zero());
        }
}

TEST_CASE("characteristic polynomial over a rational tower") {
    auto k = testhelp::field("Qcbrt2");
    FieldElement a = k->generator();
    Mat comp(k.get(), 2, 2);
    comp.at(0, 1) = k->one();
    comp.at(1, 0) = -(a * a);
    comp.at(1, 1) = -a;
    Poly cp = charpoly(comp);
    // the companion of x^2 + a x + a^2
    CHECK(cp.c[0] == a * a);
    CHECK(cp.c[1] == a);
    CHECK(cp.c[2] == k->one());
}
