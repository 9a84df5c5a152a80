#pragma once

#include <json.hpp>

#include "ncline/catalog.hpp"

namespace ncline {

// JSON wire formats. All numbers are decimal strings ("p/q" for rationals),
// element coefficient arrays run low-to-high.

using Json = nlohmann::json;

inline Json coeffs_to_json(const std::vector<Rat>& cs) {
    Json arr = Json::array();
    for (auto& c : cs) arr.push_back(c.str());
    return arr;
}

inline std::vector<Rat> coeffs_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("expected a coefficient array");
    std::vector<Rat> out;
    for (auto& c : j) {
        if (c.is_string())
            out.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer())
            out.push_back(Rat(c.get<long long>()));
        else
            throw InvalidInput("coefficients must be decimal strings");
    }
    return out;
}

inline Json element_to_json(const FieldElement& x) {
    return coeffs_to_json(x.tower()->to_rats(x));
}

inline FieldElement element_from_json(const FieldTower* t, const Json& j) {
    return t->from_rats(coeffs_from_json(j));
}

inline Json field_to_json(const FieldTower& t) {
    Json j;
    j["name"] = t.name;
    if (t.finite()) {
        j["base"] = {{"kind", "finite"}, {"p", t.base.p}};
        std::vector<Rat> cs;
        for (auto v : t.mod_f) cs.emplace_back(v);
        j["modulus"] = coeffs_to_json(cs);
    } else {
        j["base"] = {{"kind", "rational"}};
        j["modulus"] = coeffs_to_json(t.mod_r);
        if (t.closure) {
            const ClosureBundle& cb = *t.closure;
            Json cl;
            cl["modulus"] = t.closure->is_self() ? j["modulus"]
                                                 : coeffs_to_json(cb.L->mod_r);
            Json roots = Json::array();
            for (auto& r : cb.roots) roots.push_back(element_to_json(r));
            cl["roots"] = roots;
            j["closure"] = cl;
        }
    }
    return j;
}

inline std::shared_ptr<const FieldTower> field_from_json(const Json& j, uint64_t seed = 0xD1CE) {
    if (!j.contains("base") || !j.contains("modulus"))
        throw InvalidInput("field document needs 'base' and 'modulus'");
    BaseField base;
    const Json& b = j.at("base");
    std::string kind = b.value("kind", "");
    if (kind == "finite") {
        if (!b.contains("p")) throw InvalidInput("finite base needs 'p'");
        base.p = b.at("p").is_number() ? b.at("p").get<long long>()
                                       : std::stoll(b.at("p").get<std::string>());
    } else if (kind == "rational") {
        base.p = 0;
    } else {
        throw InvalidInput("base kind must be 'finite' or 'rational'");
    }
    std::string name = j.value("name", "K");
    std::optional<ClosureSpec> closure;
    if (j.contains("closure")) {
        ClosureSpec cs;
        cs.modulus = coeffs_from_json(j.at("closure").at("modulus"));
        for (auto& r : j.at("closure").at("roots")) cs.roots.push_back(coeffs_from_json(r));
        closure = std::move(cs);
    }
    return make_extension(base, coeffs_from_json(j.at("modulus")), name, closure, seed);
}

inline Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.nr; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.nc; ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline Mat matrix_from_json(const FieldTower* t, const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array");
    int nr = (int)j.size(), nc = (int)j.at(0).size();
    Mat m(t, nr, nc);
    for (int i = 0; i < nr; ++i) {
        if ((int)j.at(i).size() != nc) throw InvalidInput("ragged matrix rows");
        for (int c = 0; c < nc; ++c) m.at(i, c) = element_from_json(t, j.at(i).at(c));
    }
    return m;
}

inline Json bimodule_to_json(const std::string& name, const TwoSidedVectorSpace& v) {
    Json j;
    if (!name.empty()) j["name"] = name;
    j["field"] = v.K()->name;
    j["matrix"] = matrix_to_json(v.phi);
    return j;
}

inline Json map_to_json(const FieldMap& m) {
    return Json{{"source", m.source->name},
                {"target", m.target->name},
                {"image", element_to_json(m.image)}};
}

inline Json orbit_to_json(const EmbeddingOrbit& orb) {
    Json f = Json::array();
    for (auto& c : orb.factor.c) f.push_back(element_to_json(c));
    return Json{{"factor", f}, {"size", orb.size}};
}

inline Json decomposition_to_json(const CanonicalDecomposition& d) {
    Json s = Json::array();
    for (auto& x : d.summands)
        s.push_back(Json{{"orbit", orbit_to_json(x.orbit)}, {"mult", x.multiplicity}});
    return Json{{"summands", s}};
}

inline Json group_to_json(const GroupDescription& g) {
    if (g.finite()) {
        Json j{{"kind", "finite"}, {"order", (long long)g.order()}};
        j["labels"] = g.labels;
        j["identity"] = g.identity;
        j["table"] = g.table;
        return j;
    }
    Json j{{"kind", "symbolic"}, {"name", g.name}};
    for (auto& [k, v] : g.params) j["params"][k] = v;
    if (g.order_value) j["order"] = g.order_value->str();
    return j;
}

inline Json verdict_to_json(const EquivalenceVerdict& v, const GaloisGroup& g) {
    Json j;
    j["equivalent"] = v.equivalent;
    if (v.case_tag == 0)
        j["case"] = "mismatch";
    else
        j["case"] = v.case_tag;
    if (v.equivalent) {
        j["witness"] = Json{{"delta", gal_label(g, v.delta)},
                            {"eps", gal_label(g, v.eps)},
                            {"parity", v.parity},
                            {"matched", v.matched}};
    } else {
        j["refutation"] = v.transcript;
    }
    return j;
}

inline Json domain_report_to_json(const DomainReport& r) {
    Json fams = Json::array();
    for (auto& f : r.families)
        fams.push_back(Json{{"i", f.i},
                            {"j", f.j},
                            {"k", f.k},
                            {"enumerated", f.enumerated},
                            {"method", f.method},
                            {"violations", f.violations}});
    return Json{{"families", fams}, {"total_violations", r.total_violations}};
}

inline Json structure_report_to_json(const StructureReport& r) {
    Json j;
    j["case"] = r.case_no;
    j["lambda_orbit"] = orbit_to_json(r.lambda_orbit);
    j["mu_orbit"] = orbit_to_json(r.mu_orbit);
    if (r.gamma_or_delta) j[r.case_no == 1 ? "gamma" : "delta"] = map_to_json(*r.gamma_or_delta);
    j["predicted"] = decomposition_to_json(r.predicted);
    j["actual"] = decomposition_to_json(r.actual);
    j["match"] = r.match;
    return j;
}

// A parsed input document: named fields and named bimodules over them.
struct JobDocument {
    std::vector<std::shared_ptr<const FieldTower>> fields;
    std::vector<std::pair<std::string, TwoSidedVectorSpace>> bimodules;

    std::shared_ptr<const FieldTower> field(const std::string& name) const {
        for (auto& f : fields)
            if (f->name == name) return f;
        throw InvalidInput("document has no field named '" + name + "'");
    }
    const TwoSidedVectorSpace& bimodule(const std::string& name) const {
        for (auto& [n, v] : bimodules)
            if (n == name) return v;
        throw InvalidInput("document has no bimodule named '" + name + "'");
    }
};

inline JobDocument document_from_json(const Json& j, uint64_t seed = 0xD1CE) {
    JobDocument doc;
    if (j.contains("fields"))
        for (auto& f : j.at("fields")) doc.fields.push_back(field_from_json(f, seed));
    int unnamed = 0;
    if (j.contains("bimodules"))
        for (auto& b : j.at("bimodules")) {
            std::string fname = b.value("field", "");
            auto f = doc.field(fname);
            std::string name = b.value("name", "V" + std::to_string(unnamed++));
            TwoSidedVectorSpace v = make_bimodule(f, matrix_from_json(f.get(), b.at("matrix")));
            doc.bimodules.push_back({name, std::move(v)});
        }
    return doc;
}

inline Json document_to_json(const JobDocument& doc) {
    Json j;
    j["fields"] = Json::array();
    for (auto& f : doc.fields) j["fields"].push_back(field_to_json(*f));
    j["bimodules"] = Json::array();
    for (auto& [n, v] : doc.bimodules) j["bimodules"].push_back(bimodule_to_json(n, v));
    return j;
}

inline JobDocument catalog_document() {
    Catalog cat = build_catalog();
    JobDocument doc;
    doc.fields = cat.fields;
    for (auto& b : cat.bimodules) doc.bimodules.push_back({b.field + "." + b.name, b.space});
    return doc;
}

}  // namespace ncline
