#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace ncline;
using testhelp::bimod;
using testhelp::field;

namespace {

// all k-basis elements of a component: gen^t at slot s
std::vector<Vec> k_basis_elements(const AlgebraSlice& s, int i, int j) {
    std::vector<Vec> out;
    const FieldTower* K = s.K();
    for (int slot = 0; slot < s.dim_A(i, j); ++slot)
        for (int t = 0; t < K->degree(); ++t) {
            Vec v(s.dim_A(i, j), K->zero());
            v[slot] = K->generator().pow(t);
            out.push_back(v);
        }
    return out;
}

}  // namespace

TEST_CASE("slice construction rejects bad inputs") {
    const auto& v = bimod("F9.split");
    CHECK_THROWS_AS(build_slice(v, 0, 8), ResourceLimit);  // window cap
    auto k = field("F9");
    auto line = twisted_line(k, galois_group(*k).elements[0]);
    CHECK_THROWS_AS(build_slice(line, 0, 3), InvalidInput);  // rank 1
}

TEST_CASE("dimension table over GF(9): dim A_{i,i+m} = m+1") {
    auto s = build_slice(bimod("F9.split"), 0, 5);
    for (int i = 0; i <= 5; ++i)
        for (int j = i; j <= 5; ++j) {
            CHECK(s.dim_A(i, j) == j - i + 1);
            if (j > i) CHECK(s.dim_T(i, j) == (1 << (j - i)));
            CHECK(s.dim_R(i, j) == s.dim_T(i, j) - (j - i + 1));
        }
}

TEST_CASE("unit lines are one dimensional and central") {
    auto s = build_slice(bimod("F9.split"), 0, 4);
    const FieldTower* K = s.K();
    FieldElement a = K->generator();
    for (int i = 0; i <= 2; ++i) {
        const Vec& q = s.unit_element(i);
        // central: a.q = q.a inside T_{i,i+2}
        Vec left = q;
        for (auto& c : left) c = a * c;
        Vec right = row_times_mat(q, s.T.at({i, i + 2}).phi_of(a));
        CHECK(left == right);
        // R_{i,i+2} is exactly the line through q
        CHECK(s.dim_R(i, i + 2) == 1);
    }
}

TEST_CASE("dim R_{0,3} = 4, cross-checked by a direct span computation") {
    auto s = build_slice(bimod("F9.split"), 0, 3);
    CHECK(s.dim_R(0, 3) == 4);
    // independent span: Q_0 (x) V^{2*} + V^{0*} (x) Q_1 via the plain tensor
    // machinery of the bimodule layer
    const TwoSidedVectorSpace& d0 = s.duals.space(0);
    const TwoSidedVectorSpace& d01 = s.T.at({0, 2}).space;
    const FieldTower* K = s.K();
    std::vector<std::vector<FieldElement>> rows;
    for (int b = 0; b < 2; ++b) {
        std::vector<FieldElement> e(2, K->zero());
        e[b] = K->one();
        rows.push_back(pure_tensor_coords(d01, s.unit_element(0), e));
    }
    for (int a2 = 0; a2 < 2; ++a2) {
        std::vector<FieldElement> e(2, K->zero());
        e[a2] = K->one();
        rows.push_back(pure_tensor_coords(d0, e, s.unit_element(1)));
    }
    Mat m = Mat::from_rows(K, rows);
    CHECK(rank(m) == 4);
}

TEST_CASE("relations embed into higher relations") {
    // R_ij (x) T_jk and T_ij (x) R_jk land inside R_ik
    auto s = build_slice(bimod("F9.split"), 0, 4);
    for (int i = 0; i <= 1; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k2 = j + 1; k2 <= 4; ++k2) {
                const auto& rij = s.R.at({i, j}).rows;
                for (int r = 0; r < rij.nr; ++r)
                    for (int t = 0; t < s.dim_T(j, k2); ++t) {
                        Vec e(s.dim_T(j, k2), s.K()->zero());
                        e[t] = s.K()->one();
                        Vec emb = s.compose_tensors(i, j, k2, rij.row(r), e);
                        Vec red = s.reduce(i, k2, emb);
                        for (auto& c : red) CHECK(c.is_zero());
                    }
                const auto& rjk = s.R.at({j, k2}).rows;
                for (int r = 0; r < rjk.nr; ++r)
                    for (int t = 0; t < s.dim_T(i, j); ++t) {
                        Vec e(s.dim_T(i, j), s.K()->zero());
                        e[t] = s.K()->one();
                        Vec emb = s.compose_tensors(i, j, k2, e, rjk.row(r));
                        Vec red = s.reduce(i, k2, emb);
                        for (auto& c : red) CHECK(c.is_zero());
                    }
            }
}

TEST_CASE("multiplication: identity, associativity, surjectivity") {
    auto s = build_slice(bimod("F9.split"), 0, 4);
    const FieldTower* K = s.K();

    // 1 in A_ii acts as the identity on both sides
    for (int i = 0; i <= 3; ++i)
        for (int j = i; j <= 4; ++j) {
            Vec one{K->one()};
            for (auto& x : k_basis_elements(s, i, j)) {
                CHECK(s.multiply(i, i, j, one, x) == x);
                CHECK(s.multiply(i, j, j, x, one) == x);
            }
        }

    // associativity on exhaustive k-basis triples (multiplication is
    // k-bilinear, so this is a complete check) in degrees <= 3
    for (int i = 0; i <= 1; ++i)
        for (int j = i; j <= 3; ++j)
            for (int k2 = j; k2 <= 3; ++k2)
                for (int l = k2; l <= std::min(i + 3, 4); ++l)
                    for (auto& x : k_basis_elements(s, i, j))
                        for (auto& y : k_basis_elements(s, j, k2))
                            for (auto& z : k_basis_elements(s, k2, l)) {
                                auto lhs = s.multiply(i, k2, l, s.multiply(i, j, k2, x, y), z);
                                auto rhs = s.multiply(i, j, l, x, s.multiply(j, k2, l, y, z));
                                CHECK(lhs == rhs);
                            }

    // mu is surjective: products of coset bases span the target
    for (int i = 0; i <= 2; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k2 = j + 1; k2 <= 4; ++k2) {
                std::vector<std::vector<FieldElement>> rows;
                for (auto& row : s.sc.at({i, j, k2}))
                    for (auto& cell : row) rows.push_back(cell);
                CHECK(rank(Mat::from_rows(K, rows)) == s.dim_A(i, k2));
            }
}

TEST_CASE("mismatched indices are rejected rather than returning zero") {
    auto s = build_slice(bimod("F9.split"), 0, 3);
    Vec x(2, s.K()->zero()), y(2, s.K()->zero());
    CHECK_THROWS_AS(s.multiply(0, 2, 3, x, y), InvalidInput);  // x not in A_{0,2}
    CHECK_THROWS_AS(s.multiply(1, 0, 1, x, y), InvalidInput);  // decreasing indices
}

TEST_CASE("zero-divisor sweep over GF(9) components") {
    auto s = build_slice(bimod("F9.split"), 0, 3);
    auto rep = domain_check(s, 3);
    CHECK(rep.total_violations == 0);
    // the (A_01, A_12) family enumerates all 80 x 80 nonzero pairs
    bool found = false;
    for (auto& f : rep.families)
        if (f.i == 0 && f.j == 1 && f.k == 2) {
            found = true;
            CHECK(f.method == "pairwise");
            CHECK(f.enumerated == 80);  // nonzero right factors; all x per y
        }
    CHECK(found);
}

TEST_CASE("the kernel sweep agrees with literal pair enumeration") {
    auto s = build_slice(bimod("F9.split"), 0, 3);
    auto literal = domain_check(s, 2, /*pairwise_cap=*/100'000'000);
    auto kernel = domain_check(s, 2, /*pairwise_cap=*/0);  // force the kernel method
    REQUIRE(literal.families.size() == kernel.families.size());
    for (size_t i = 0; i < literal.families.size(); ++i) {
        CHECK(literal.families[i].violations == kernel.families[i].violations);
        CHECK(kernel.families[i].method == "kernel");
    }
}

TEST_CASE("periodicity isomorphisms exist and respect multiplication") {
    auto s = build_slice(bimod("F9.split"), 0, 5);
    // identity at i = j
    CHECK(periodicity_iso(s, 1, 1).map == Mat::identity(s.K(), 1));
    for (int i = 0; i <= 1; ++i)
        for (int j = i; j <= 3; ++j) {
            auto p = periodicity_iso(s, i, j);
            CHECK(p.map.nr == s.dim_A(i, j));
            CHECK(p.map.nr == s.dim_A(i + 2, j + 2));
            CHECK(try_inverse(p.map).has_value());
        }
    auto p01 = periodicity_iso(s, 0, 1);
    auto p13 = periodicity_iso(s, 1, 3);
    auto p03 = periodicity_iso(s, 0, 3);
    for (auto& x : k_basis_elements(s, 0, 1))
        for (auto& y : k_basis_elements(s, 1, 3)) {
            auto lhs = row_times_mat(s.multiply(0, 1, 3, x, y), p03.map);
            auto rhs = s.multiply(2, 3, 5, row_times_mat(x, p01.map), row_times_mat(y, p13.map));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("periodicity maps are bimodule maps") {
    auto s = build_slice(bimod("F25.split"), 0, 4);
    for (int i = 0; i <= 1; ++i)
        for (int j = i + 1; j <= 2; ++j) {
            auto p = periodicity_iso(s, i, j);
            auto src = component_space(s, i, j);
            auto dst = component_space(s, i + 2, j + 2);
            CHECK(is_intertwiner(src, dst, p.map));
        }
}

TEST_CASE("veronese ring: dimensions, generation, associativity") {
    auto s = build_slice(bimod("F9.split"), 0, 4);
    auto c = veronese(s);
    REQUIRE(c.imax == 2);
    CHECK(c.dims == std::vector<int>{1, 3, 5});

    // generated in degree 1: C_1 . C_1 spans C_2
    std::vector<std::vector<FieldElement>> rows;
    for (int a2 = 0; a2 < 3; ++a2)
        for (int b = 0; b < 3; ++b) {
            Vec x(3, s.K()->zero()), y(3, s.K()->zero());
            x[a2] = s.K()->one();
            y[b] = s.K()->one();
            rows.push_back(c.multiply(1, 1, x, y));
        }
    CHECK(rank(Mat::from_rows(s.K(), rows)) == 5);

    // associativity (0,1,1) and scalar compatibility on k-basis elements
    const FieldTower* K = s.K();
    for (int t = 0; t < K->degree(); ++t) {
        Vec scal{K->generator().pow(t)};
        for (int a2 = 0; a2 < 3; ++a2)
            for (int b = 0; b < 3; ++b) {
                Vec x(3, K->zero()), y(3, K->zero());
                x[a2] = K->one();
                y[b] = K->one();
                auto lhs = c.multiply(1, 1, c.multiply(0, 1, scal, x), y);
                auto rhs = c.multiply(0, 2, scal, c.multiply(1, 1, x, y));
                CHECK(lhs == rhs);
            }
    }

    auto rep = domain_check(c, 2);
    CHECK(rep.total_violations == 0);
}

TEST_CASE("shifted algebra components match the dual's algebra") {
    const auto& v = bimod("F9.split");
    auto rep0 = shifted_algebra_check(v, 0, 2);
    CHECK(rep0.all_match);
    auto rep1 = shifted_algebra_check(v, 1, 2);
    CHECK(rep1.all_match);
    auto rep2 = shifted_algebra_check(v, 2, 2);
    CHECK(rep2.all_match);
}

TEST_CASE("twisted algebra components match the twisted components") {
    const auto& v = bimod("F9.split");
    const GaloisGroup& g = galois_group(*v.K());
    for (int d = 0; d < 2; ++d)
        for (int e = 0; e < 2; ++e) {
            auto rep = twisted_algebra_check(v, g.elements[d], g.elements[e], 3);
            CHECK(rep.all_match);
        }
}

TEST_CASE("slices over a number field have the right dimension table") {
    auto s = build_slice(bimod("Qcbrt2.simple"), 0, 3);
    for (int i = 0; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) CHECK(s.dim_A(i, j) == j - i + 1);
    // sweeps reject infinite fields
    CHECK_THROWS_AS(domain_check(s, 2), InvalidInput);
}
