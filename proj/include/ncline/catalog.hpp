#pragma once

#include "ncline/classify.hpp"

namespace ncline {

// Built-in fields (with exact closure certificates for the number fields)
// and example bimodules covering the three rank-2 forms.

struct CatalogBimodule {
    std::string field;
    std::string name;  // referenced as "<field>.<name>"
    TwoSidedVectorSpace space;
};

struct Catalog {
    std::vector<std::shared_ptr<const FieldTower>> fields;
    std::vector<CatalogBimodule> bimodules;

    std::shared_ptr<const FieldTower> field(const std::string& name) const {
        for (auto& f : fields)
            if (f->name == name) return f;
        throw InvalidInput("no catalog field named '" + name + "'");
    }
    const TwoSidedVectorSpace& bimodule(const std::string& qualified) const {
        for (auto& b : bimodules)
            if (b.field + "." + b.name == qualified || b.name == qualified) return b.space;
        throw InvalidInput("no catalog bimodule named '" + qualified + "'");
    }
};

inline Catalog build_catalog() {
    Catalog cat;
    auto R = [](long long n, long long d = 1) { return Rat(n, d); };

    auto add_split = [&](std::shared_ptr<const FieldTower> K, const std::string& name, int s,
                         int t) {
        const GaloisGroup& g = galois_group(*K);
        Mat m(K.get(), 2, 2);
        m.at(0, 0) = g.elements[s].image;
        m.at(1, 1) = g.elements[t].image;
        cat.bimodules.push_back({K->name, name, make_bimodule(K, std::move(m))});
    };

    // finite fields
    auto f9 = make_extension(BaseField{3}, {R(1), R(0), R(1)}, "F9");
    auto f27 = make_extension(BaseField{3}, {R(1), R(2), R(0), R(1)}, "F27");
    auto f25 = make_extension(BaseField{5}, {R(2), R(0), R(1)}, "F25");
    cat.fields = {f9, f27, f25};
    add_split(f9, "double", 0, 0);
    add_split(f9, "split", 0, 1);
    add_split(f27, "double", 0, 0);
    add_split(f27, "split", 0, 1);
    add_split(f27, "split2", 0, 2);
    add_split(f25, "double", 0, 0);
    add_split(f25, "split", 0, 1);

    // Q(2^(1/3)) with closure Q(2^(1/3), omega) presented by the minimal
    // polynomial of 2^(1/3) + omega
    {
        ClosureSpec cs;
        cs.modulus = {R(9), R(9), R(0), R(3), R(6), R(3), R(1)};
        cs.roots = {
            {R(2), R(1), R(-2, 3), R(2, 3), R(1, 3), R(2, 9)},
            {R(1), R(0), R(2, 3), R(2, 3), R(1, 3), R(1, 9)},
            {R(-3), R(-1), R(0), R(-4, 3), R(-2, 3), R(-1, 3)},
        };
        auto k = make_extension(BaseField{0}, {R(-2), R(0), R(0), R(1)}, "Qcbrt2", cs);
        cat.fields.push_back(k);
        add_split(k, "double", 0, 0);
        FieldElement a = k->generator();
        Mat comp(k.get(), 2, 2);
        comp.at(0, 1) = k->one();
        comp.at(1, 0) = -(a * a);
        comp.at(1, 1) = -a;
        cat.bimodules.push_back({k->name, "simple", make_bimodule(k, std::move(comp))});
    }

    // Q(2^(1/4)) with closure Q(2^(1/4), i) presented by the minimal
    // polynomial of 2^(1/4) + i
    {
        ClosureSpec cs;
        cs.modulus = {R(1), R(0), R(28), R(0), R(2), R(0), R(4), R(0), R(1)};
        cs.roots = {
            {R(0), R(151, 24), R(0), R(5, 24), R(0), R(19, 24), R(0), R(5, 24)},
            {R(0), R(-151, 24), R(0), R(-5, 24), R(0), R(-19, 24), R(0), R(-5, 24)},
            {R(29, 24), R(0), R(13, 24), R(0), R(5, 24), R(0), R(1, 24), R(0)},
            {R(-29, 24), R(0), R(-13, 24), R(0), R(-5, 24), R(0), R(-1, 24), R(0)},
        };
        auto k = make_extension(BaseField{0}, {R(-2), R(0), R(0), R(0), R(1)}, "Qquart2", cs);
        cat.fields.push_back(k);
        FieldElement a = k->generator();
        Mat comp(k.get(), 2, 2);
        comp.at(0, 1) = k->one();
        comp.at(1, 0) = -(a * a);
        cat.bimodules.push_back({k->name, "simple", make_bimodule(k, std::move(comp))});
        add_split(k, "split", 0, 1);
    }

    // normal quadratics and a biquadratic: closures are the fields themselves
    {
        ClosureSpec cs;
        cs.modulus = {R(-2), R(0), R(1)};
        cs.roots = {{R(0), R(1)}, {R(0), R(-1)}};
        auto k = make_extension(BaseField{0}, {R(-2), R(0), R(1)}, "Qsqrt2", cs);
        cat.fields.push_back(k);
        add_split(k, "double", 0, 0);
        add_split(k, "split", 0, 1);
    }
    {
        ClosureSpec cs;
        cs.modulus = {R(1), R(0), R(1)};
        cs.roots = {{R(0), R(1)}, {R(0), R(-1)}};
        auto k = make_extension(BaseField{0}, {R(1), R(0), R(1)}, "Qi", cs);
        cat.fields.push_back(k);
        add_split(k, "double", 0, 0);
        add_split(k, "split", 0, 1);
    }
    {
        // Q(sqrt2, sqrt3) = Q[x]/(x^4 - 10x^2 + 1), a = sqrt2 + sqrt3
        ClosureSpec cs;
        cs.modulus = {R(1), R(0), R(-10), R(0), R(1)};
        cs.roots = {{R(0), R(1)},
                    {R(0), R(-1)},
                    {R(0), R(-10), R(0), R(1)},
                    {R(0), R(10), R(0), R(-1)}};
        auto k = make_extension(BaseField{0}, {R(1), R(0), R(-10), R(0), R(1)}, "Qbiquad", cs);
        cat.fields.push_back(k);
        add_split(k, "split", 0, 1);
        add_split(k, "split2", 0, 2);
    }
    return cat;
}

}  // namespace ncline
