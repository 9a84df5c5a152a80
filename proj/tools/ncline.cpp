// Command-line front end: parse field/bimodule documents, run the
// classification and algebra computations, emit text or JSON reports.
//
// Exit codes: 0 success (and "true" verdicts), 1 computed "false"/violation,
// 2 invalid input, 3 resource cap exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncline/serialize.hpp"

using namespace ncline;

namespace {

struct Options {
    std::string input;
    std::string bimodule, left, right;
    std::string delta = "1", eps = "1";
    bool json = false;
    uint64_t seed = 0xD1CE;
    int window = 5;
    int degree = 3;
    int veronese_degree = -1;
    int iterate = 1;
    long long pairwise_cap = 20'000'000;
    long long enum_cap = 100'000'000;
};

JobDocument load_document(const Options& opt) {
    if (opt.input.empty()) return catalog_document();
    Json j;
    if (opt.input == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        j = Json::parse(buf.str());
    } else {
        std::ifstream in(opt.input);
        if (!in) throw InvalidInput("cannot open input file '" + opt.input + "'");
        in >> j;
    }
    return document_from_json(j, opt.seed);
}

const TwoSidedVectorSpace& pick(const JobDocument& doc, const std::string& name, size_t index) {
    if (!name.empty()) return doc.bimodule(name);
    if (doc.bimodules.size() <= index)
        throw InvalidInput("document does not contain enough bimodules");
    return doc.bimodules[index].second;
}

const FieldMap& parse_gal(const FieldTower& K, const std::string& spec) {
    const GaloisGroup& g = galois_group(K);
    if (spec == "1" || spec == "id") return g.elements[0];
    for (int i = 0; i < g.size(); ++i)
        if (gal_label(g, i) == spec) return g.elements[i];
    if (!spec.empty() && spec.front() == '[') {
        FieldElement img = element_from_json(&K, Json::parse(spec));
        for (int i = 0; i < g.size(); ++i)
            if (g.elements[i].image == img) return g.elements[i];
        throw InvalidInput("image does not define a Galois element");
    }
    throw InvalidInput("unknown Galois element '" + spec + "' (use 1, F, F^k, g<i>, or an image array)");
}

void emit(const Options& opt, const Json& j, const std::string& text) {
    if (opt.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string render_decomposition(const CanonicalDecomposition& dec, const FieldTower& K) {
    std::ostringstream os;
    for (auto& s : dec.summands) {
        os << "  orbit of degree " << s.orbit.size << " (factor";
        for (auto& c : s.orbit.factor.c) {
            os << " [";
            auto rats = K.to_rats(c);
            for (size_t i = 0; i < rats.size(); ++i) os << (i ? "," : "") << rats[i].str();
            os << "]";
        }
        os << ") x " << s.multiplicity << "\n";
    }
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"exact computations with two-sided vector spaces, noncommutative "
                 "symmetric algebras and noncommutative projective lines"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--input", opt.input, "JSON document (default: built-in catalog)");
        c->add_flag("--json", opt.json, "machine-readable output");
        c->add_option("--seed", opt.seed, "seed for probabilistic factorization");
        return c;
    };

    auto* c_catalog = add_common(app.add_subcommand("catalog", "list built-in fields and bimodules"));
    auto* c_decomp = add_common(app.add_subcommand("decompose", "canonical decomposition into simples"));
    c_decomp->add_option("--bimodule", opt.bimodule, "bimodule name");
    auto* c_dual = add_common(app.add_subcommand("dual", "iterated dual presentation"));
    c_dual->add_option("--bimodule", opt.bimodule, "bimodule name");
    c_dual->add_option("--i", opt.iterate, "dual iterate (negative = left duals)");
    auto* c_tensor = add_common(app.add_subcommand("tensor", "tensor product of two bimodules"));
    c_tensor->add_option("--left", opt.left, "left factor");
    c_tensor->add_option("--right", opt.right, "right factor");
    auto* c_twist = add_common(app.add_subcommand("twist", "twist by a pair of Galois elements"));
    c_twist->add_option("--bimodule", opt.bimodule, "bimodule name");
    c_twist->add_option("--delta", opt.delta, "Galois element (1, F, F^k, g<i>, or image array)");
    c_twist->add_option("--eps", opt.eps, "Galois element");
    auto* c_equiv = add_common(app.add_subcommand("equiv", "decide equivalence of two projective lines"));
    c_equiv->add_option("--left", opt.left, "first bimodule");
    c_equiv->add_option("--right", opt.right, "second bimodule");
    auto* c_stab = add_common(app.add_subcommand("stab", "stabilizer of a bimodule under twists"));
    c_stab->add_option("--bimodule", opt.bimodule, "bimodule name");
    auto* c_aut = add_common(app.add_subcommand("aut", "bimodule automorphisms modulo inner scalings"));
    c_aut->add_option("--bimodule", opt.bimodule, "bimodule name");
    auto* c_autline = add_common(app.add_subcommand("autline", "automorphism group of the projective line"));
    c_autline->add_option("--bimodule", opt.bimodule, "bimodule name");
    auto* c_hilbert = add_common(app.add_subcommand("hilbert", "dimension table of the symmetric algebra"));
    c_hilbert->add_option("--bimodule", opt.bimodule, "bimodule name");
    c_hilbert->add_option("--window", opt.window, "window width");
    auto* c_domain = add_common(app.add_subcommand("domain-check", "exhaustive zero-divisor sweep"));
    c_domain->add_option("--bimodule", opt.bimodule, "bimodule name");
    c_domain->add_option("--window", opt.window, "window width");
    c_domain->add_option("--degree", opt.degree, "max total degree of the sweep");
    c_domain->add_option("--veronese-degree", opt.veronese_degree, "also sweep the Veronese ring");
    c_domain->add_option("--pairwise-cap", opt.pairwise_cap, "max pairs for literal enumeration");
    c_domain->add_option("--enum-cap", opt.enum_cap, "max single-side enumeration");
    auto* c_ver = add_common(app.add_subcommand("veronese", "even Veronese ring of the algebra"));
    c_ver->add_option("--bimodule", opt.bimodule, "bimodule name");
    c_ver->add_option("--window", opt.window, "window width");
    auto* c_structure = add_common(app.add_subcommand("structure-end", "structure of V (x) V* for simple V"));
    c_structure->add_option("--bimodule", opt.bimodule, "bimodule name");
    auto* c_enum = add_common(app.add_subcommand("equivalences", "enumerate equivalences between two lines"));
    c_enum->add_option("--left", opt.left, "first bimodule");
    c_enum->add_option("--right", opt.right, "second bimodule");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (c_catalog->parsed()) {
        JobDocument doc = catalog_document();
        std::ostringstream os;
        os << "fields:\n";
        for (auto& f : doc.fields)
            os << "  " << f->name << " (degree " << f->degree() << " over "
               << (f->finite() ? "GF(" + std::to_string(f->base.p) + ")" : "Q") << ")\n";
        os << "bimodules:\n";
        for (auto& [n, v] : doc.bimodules) {
            auto shape = decompose(v).rank2_shape();
            const char* kind = shape == Rank2Shape::DoubleLine  ? "doubled line"
                               : shape == Rank2Shape::TwoLines ? "split pair"
                                                                : "simple";
            os << "  " << n << " (" << kind << ")\n";
        }
        emit(opt, document_to_json(doc), os.str());
        return 0;
    }

    JobDocument doc = load_document(opt);

    if (c_decomp->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto dec = decompose(v);
        Json j = decomposition_to_json(dec);
        j["input"] = bimodule_to_json("", v);
        emit(opt, j, render_decomposition(dec, *v.K()));
        return 0;
    }
    if (c_dual->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto d = iterated_dual(v, opt.iterate);
        Json j = bimodule_to_json("", d);
        j["decomposition"] = decomposition_to_json(decompose(d));
        emit(opt, j, "dual presentation:\n" + matrix_to_json(d.phi).dump(1) + "\n");
        return 0;
    }
    if (c_tensor->parsed()) {
        const auto& a = pick(doc, opt.left, 0);
        const auto& b = pick(doc, opt.right, 1);
        auto t = tensor(a, b);
        Json j = bimodule_to_json("", t);
        j["decomposition"] = decomposition_to_json(decompose(t));
        emit(opt, j,
             "rank " + std::to_string(t.rank()) + "\n" +
                 render_decomposition(decompose(t), *t.K()));
        return 0;
    }
    if (c_twist->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto& d = parse_gal(*v.K(), opt.delta);
        auto& e = parse_gal(*v.K(), opt.eps);
        auto t = twist(v, d, e);
        Json j = bimodule_to_json("", t);
        j["decomposition"] = decomposition_to_json(decompose(t));
        emit(opt, j, "twist presentation:\n" + matrix_to_json(t.phi).dump(1) + "\n");
        return 0;
    }
    if (c_equiv->parsed()) {
        const auto& a = pick(doc, opt.left, 0);
        const auto& b = pick(doc, opt.right, 1);
        auto verdict = decide_equivalence(a, b);
        Json j = verdict_to_json(verdict, galois_group(*a.K()));
        std::ostringstream os;
        os << (verdict.equivalent ? "equivalent" : "not equivalent") << " (case ";
        if (verdict.case_tag)
            os << verdict.case_tag;
        else
            os << "mismatch";
        os << ")";
        if (verdict.equivalent)
            os << ": twist " << pair_label(galois_group(*a.K()), verdict.delta, verdict.eps)
               << " parity " << verdict.parity << " against " << verdict.matched;
        os << "\n";
        emit(opt, j, os.str());
        return verdict.equivalent ? 0 : 1;
    }
    if (c_stab->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto st = stabilizer(v);
        Json j = group_to_json(st.group);
        std::ostringstream os;
        os << "stabilizer order " << st.group.order() << ": ";
        for (auto& l : st.group.labels) os << l << " ";
        os << "\n";
        emit(opt, j, os.str());
        return 0;
    }
    if (c_aut->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto a = aut_bimodule(v);
        Json j = group_to_json(a.group);
        std::ostringstream os;
        if (a.group.finite())
            os << "Aut V: order " << a.group.order() << "\n";
        else {
            os << "Aut V: " << a.group.name;
            if (a.group.order_value) os << " (order " << a.group.order_value->str() << ")";
            os << "\n";
        }
        emit(opt, j, os.str());
        return 0;
    }
    if (c_autline->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto r = aut_projective_line(v);
        Json j;
        j["group"] = group_to_json(r.group);
        j["aut"] = group_to_json(r.aut.group);
        j["stab"] = group_to_json(r.stab.group);
        std::ostringstream os;
        if (r.group.finite())
            os << "Aut P(V): order " << r.group.order() << " = |Aut V| "
               << r.aut.group.order() << " x |Stab| " << r.stab.group.order() << "\n";
        else {
            os << "Aut P(V): " << r.group.name;
            if (r.group.order_value) os << " (order " << r.group.order_value->str() << ")";
            os << "\n";
        }
        emit(opt, j, os.str());
        return 0;
    }
    if (c_hilbert->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto s = build_slice(v, 0, opt.window, std::max(6, opt.window));
        Json rows = Json::array();
        std::ostringstream os;
        os << "dim A_{i,j} for the window:\n";
        for (int i = 0; i <= opt.window; ++i) {
            Json row = Json::array();
            os << "  i=" << i << ":";
            for (int d : s.hilbert_row(i)) {
                row.push_back(d);
                os << " " << d;
            }
            os << "\n";
            rows.push_back(row);
        }
        emit(opt, Json{{"hilbert", rows}}, os.str());
        return 0;
    }
    if (c_domain->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        int need = std::max(opt.window, opt.veronese_degree > 0 ? 2 * opt.veronese_degree : 0);
        auto s = build_slice(v, 0, need, std::max(6, need));
        auto rep = domain_check(s, opt.degree, opt.pairwise_cap, opt.enum_cap);
        Json j = Json{{"slice", domain_report_to_json(rep)}};
        long long viol = rep.total_violations;
        std::ostringstream os;
        os << "slice sweep: " << rep.total_violations << " violations over "
           << rep.families.size() << " component pairs\n";
        if (opt.veronese_degree > 0) {
            auto c = veronese(s);
            auto repv = domain_check(c, opt.veronese_degree, opt.pairwise_cap, opt.enum_cap);
            j["veronese"] = domain_report_to_json(repv);
            viol += repv.total_violations;
            os << "veronese sweep: " << repv.total_violations << " violations over "
               << repv.families.size() << " degree pairs\n";
        }
        emit(opt, j, os.str());
        return viol == 0 ? 0 : 1;
    }
    if (c_ver->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto s = build_slice(v, 0, opt.window, std::max(6, opt.window));
        auto c = veronese(s);
        Json dims = Json::array();
        std::ostringstream os;
        os << "veronese dimensions:";
        for (int d : c.dims) {
            dims.push_back(d);
            os << " " << d;
        }
        os << "\n";
        emit(opt, Json{{"dims", dims}}, os.str());
        return 0;
    }
    if (c_structure->parsed()) {
        const auto& v = pick(doc, opt.bimodule, 0);
        auto rep = structure_of_end(v);
        Json j = structure_report_to_json(rep);
        std::ostringstream os;
        os << "case " << rep.case_no << "; prediction "
           << (rep.match ? "matches" : "DOES NOT match") << " the tensor decomposition\n"
           << render_decomposition(rep.actual, *v.K());
        emit(opt, j, os.str());
        return rep.match ? 0 : 1;
    }
    if (c_enum->parsed()) {
        const auto& a = pick(doc, opt.left, 0);
        const auto& b = pick(doc, opt.right, 1);
        auto verdict = decide_equivalence(a, b);
        if (!verdict.equivalent) {
            emit(opt, Json{{"equivalent", false}, {"signatures", Json::array()}},
                 "not equivalent; no signatures\n");
            return 1;
        }
        auto sigs = enumerate_equivalences(a, b);
        const GaloisGroup& g = galois_group(*a.K());
        Json arr = Json::array();
        std::ostringstream os;
        os << sigs.size() << " signatures\n";
        for (auto& s : sigs) {
            arr.push_back(Json{{"parity", s.parity},
                               {"delta", gal_label(g, s.delta)},
                               {"eps", gal_label(g, s.eps)},
                               {"intertwiner", matrix_to_json(s.intertwiner)}});
            os << "  parity " << s.parity << " twist " << pair_label(g, s.delta, s.eps) << "\n";
        }
        emit(opt, Json{{"equivalent", true}, {"signatures", arr}}, os.str());
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
