// JSON encodings of the library's value types. Rationals travel as strings
// ("p/q" or an integer string) so no precision is lost; integer JSON numbers
// are accepted on input. Serialization is deterministic, so encoded values
// are usable as golden fixtures.
#pragma once

#include "nilpotent.hpp"
#include "pants.hpp"
#include "surface.hpp"

#include <json.hpp>

namespace wfilt {

using nlohmann::json;

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_parse(j.get<std::string>());
    throw parse_error("expected rational as string or integer, got " + j.dump());
}

inline json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const Rat& x : v) a.push_back(rat_str(x));
    return a;
}

inline Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("expected array for vector, got " + j.dump());
    Vec v;
    v.reserve(j.size());
    for (const json& x : j) v.push_back(rat_from_json(x));
    return v;
}

// Matrix: {"rows": [["p/q", ...], ...]}
inline json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
    return json{{"rows", rows}};
}

inline Mat mat_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows"))
        throw parse_error("matrix: missing 'rows'");
    const json& rows = j["rows"];
    if (!rows.is_array() || rows.empty()) throw parse_error("matrix: 'rows' must be a nonempty array");
    std::vector<Vec> rv;
    for (const json& r : rows) rv.push_back(vec_from_json(r));
    for (const Vec& r : rv)
        if (r.size() != rv[0].size()) throw parse_error("matrix: ragged rows");
    return Mat::from_rows(rv);
}

// Subspace: {"ambient": n, "basis": [[...], ...]}
inline json subspace_to_json(const Subspace& s) {
    json basis = json::array();
    for (const Vec& b : s.basis()) basis.push_back(vec_to_json(b));
    return json{{"ambient", s.ambient()}, {"basis", basis}};
}

inline Subspace subspace_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ambient") || !j.contains("basis"))
        throw parse_error("subspace: need 'ambient' and 'basis'");
    std::size_t ambient = j["ambient"].get<std::size_t>();
    std::vector<Vec> gens;
    for (const json& b : j["basis"]) gens.push_back(vec_from_json(b));
    return Subspace(ambient, std::move(gens));
}

// Filtration: {"ambient": n, "steps": {"-2": [[...]], ...}}; omitted weights
// interpolate by the nesting rules.
inline json filtration_to_json(const Filtration& f) {
    json steps = json::object();
    for (const auto& [w, s] : f.steps()) {
        json basis = json::array();
        for (const Vec& b : s.basis()) basis.push_back(vec_to_json(b));
        steps[std::to_string(w)] = basis;
    }
    return json{{"ambient", f.ambient()}, {"steps", steps}};
}

inline Filtration filtration_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ambient") || !j.contains("steps"))
        throw parse_error("filtration: need 'ambient' and 'steps'");
    std::size_t ambient = j["ambient"].get<std::size_t>();
    std::map<long, Subspace> steps;
    for (const auto& [key, val] : j["steps"].items()) {
        long w;
        try {
            std::size_t pos = 0;
            w = std::stol(key, &pos);
            if (pos != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw parse_error("filtration: bad weight key '" + key + "'");
        }
        std::vector<Vec> gens;
        for (const json& b : val) gens.push_back(vec_from_json(b));
        steps.emplace(w, Subspace(ambient, std::move(gens)));
    }
    return Filtration(ambient, steps);
}

// Curve system: {"genus": g, "punctures": n, "curves": [{"label":, "class": [..]}]}
inline json curve_system_to_json(const SurfaceModel& s, const CurveSystem& cs) {
    json curves = json::array();
    for (const Curve& c : cs.curves)
        curves.push_back(json{{"label", c.label}, {"class", vec_to_json(c.cls)}});
    return json{{"genus", s.genus()}, {"punctures", s.punctures()}, {"curves", curves}};
}

inline std::pair<SurfaceModel, CurveSystem> curve_system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("genus") || !j.contains("punctures") ||
        !j.contains("curves"))
        throw parse_error("curve system: need 'genus', 'punctures', 'curves'");
    SurfaceModel s(j["genus"].get<std::size_t>(), j["punctures"].get<std::size_t>());
    CurveSystem cs;
    for (const json& c : j["curves"]) {
        if (!c.contains("label") || !c.contains("class"))
            throw parse_error("curve system: each curve needs 'label' and 'class'");
        cs.curves.push_back({c["label"].get<std::string>(), vec_from_json(c["class"])});
    }
    return {s, cs};
}

// Pants graph: {"genus":, "boundary":, "blacks": [...],
//               "whites": [{"id":, "kind":, "class": [...]}], "edges": [[b,w],...]}
inline json pants_graph_to_json(const PantsGraph& pg) {
    json whites = json::array();
    for (const White& w : pg.whites) {
        json jw{{"id", w.id},
                {"kind", w.kind == WhiteKind::internal ? "internal" : "boundary"}};
        if (w.kind == WhiteKind::internal) jw["class"] = vec_to_json(w.cls);
        whites.push_back(jw);
    }
    json edges = json::array();
    for (const auto& [b, w] : pg.edges) edges.push_back(json::array({b, w}));
    return json{{"genus", pg.genus},
                {"boundary", pg.boundary},
                {"blacks", pg.blacks},
                {"whites", whites},
                {"edges", edges}};
}

inline PantsGraph pants_graph_from_json(const json& j) {
    for (const char* key : {"genus", "boundary", "blacks", "whites", "edges"})
        if (!j.is_object() || !j.contains(key))
            throw parse_error(std::string("pants graph: missing '") + key + "'");
    PantsGraph pg;
    pg.genus = j["genus"].get<std::size_t>();
    pg.boundary = j["boundary"].get<std::size_t>();
    for (const json& b : j["blacks"]) pg.blacks.push_back(b.get<std::string>());
    for (const json& w : j["whites"]) {
        if (!w.contains("id") || !w.contains("kind"))
            throw parse_error("pants graph: each white needs 'id' and 'kind'");
        White white;
        white.id = w["id"].get<std::string>();
        std::string kind = w["kind"].get<std::string>();
        if (kind == "internal")
            white.kind = WhiteKind::internal;
        else if (kind == "boundary")
            white.kind = WhiteKind::boundary;
        else
            throw parse_error("pants graph: bad white kind '" + kind + "'");
        if (w.contains("class")) white.cls = vec_from_json(w["class"]);
        pg.whites.push_back(std::move(white));
    }
    for (const json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2)
            throw parse_error("pants graph: each edge must be [black, white]");
        pg.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return pg;
}

inline json rwf_outcome_to_json(const RelativeWFOutcome& o) {
    if (const auto* e = std::get_if<RwfExists>(&o))
        return json{{"outcome", "exists"}, {"filtration", filtration_to_json(e->filtration)}};
    if (const auto* c = std::get_if<RwfCertifiedNonexistent>(&o))
        return json{{"outcome", "certified-nonexistent"},
                    {"witness", json{{"weight", c->weight}, {"vector", vec_to_json(c->witness)}}},
                    {"forced_candidate", filtration_to_json(c->forced)}};
    const auto& i = std::get<RwfInconclusive>(o);
    return json{{"outcome", "inconclusive"}, {"search_depth", i.depth}};
}

/// Human-readable Gr-dimension table.
inline std::string render_gr_table(const std::map<long, std::size_t>& dims) {
    std::string out = "weight  dim Gr\n";
    for (auto it = dims.rbegin(); it != dims.rend(); ++it)
        out += std::to_string(it->first) + "\t" + std::to_string(it->second) + "\n";
    return out;
}

}  // namespace wfilt
