#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "coverforge/cover.hpp"
#include "coverforge/hurwitz.hpp"

namespace coverforge {

using Json = nlohmann::ordered_json;

/// {"kind":"dihedral","n":5} | {"kind":"cyclic","n":7}
/// | {"kind":"permutation","degree":4,"generators":[[2,1,3,4],[2,3,4,1]]}
inline FiniteGroup parse_group_descriptor(const Json& j,
                                          std::size_t element_cap = FiniteGroup::kDefaultElementCap) {
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("group descriptor must be an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return FiniteGroup::cyclic(j.at("n").get<long>());
    if (kind == "dihedral") return FiniteGroup::dihedral(j.at("n").get<long>());
    if (kind == "permutation") {
        long degree = j.at("degree").get<long>();
        std::vector<std::vector<int>> gens;
        for (const auto& g : j.at("generators")) gens.push_back(g.get<std::vector<int>>());
        return FiniteGroup::permutation(degree, gens, element_cap);
    }
    throw ParseError("unknown group kind '" + kind + "'");
}

inline Json group_descriptor_json(const FiniteGroup& g) {
    Json j;
    switch (g.kind()) {
        case GroupKind::Cyclic:
            j["kind"] = "cyclic";
            j["n"] = g.parameter_n();
            break;
        case GroupKind::Dihedral:
            j["kind"] = "dihedral";
            j["n"] = g.parameter_n();
            break;
        case GroupKind::Permutation: {
            j["kind"] = "permutation";
            j["degree"] = g.degree();
            Json gens = Json::array();
            for (int e = 0; e < g.size(); ++e) gens.push_back(g.permutation_images({e}));
            j["generators"] = std::move(gens);
            break;
        }
    }
    return j;
}

/// Datum file:
/// {"group": {...}, "base_genus": 0, "handles": [...],
///  "branches": [{"label":"t1","order":2,"element":"b"}, ...]}
/// "handles" may be omitted when the base genus is 0.
inline BranchDatum parse_datum_json(const Json& j,
                                    std::size_t element_cap = FiniteGroup::kDefaultElementCap) {
    if (!j.is_object()) throw ParseError("datum file must be a JSON object");
    FiniteGroup g = parse_group_descriptor(j.at("group"), element_cap);
    long base_genus = j.value("base_genus", 0L);
    std::vector<GroupElement> handles;
    if (j.contains("handles"))
        for (const auto& h : j.at("handles"))
            handles.push_back(g.element_from_label(h.get<std::string>()));
    std::vector<Branch> branches;
    if (j.contains("branches"))
        for (const auto& b : j.at("branches"))
            branches.push_back({b.at("label").get<std::string>(), b.at("order").get<long>(),
                                g.element_from_label(b.at("element").get<std::string>())});
    return BranchDatum(std::move(g), base_genus, std::move(handles), std::move(branches));
}

inline Json datum_json(const BranchDatum& d) {
    Json j;
    j["group"] = group_descriptor_json(d.group());
    j["base_genus"] = d.base_genus();
    Json handles = Json::array();
    for (GroupElement h : d.handles()) handles.push_back(d.group().label(h));
    j["handles"] = std::move(handles);
    Json branches = Json::array();
    for (const auto& b : d.branches()) {
        Json jb;
        jb["label"] = b.label;
        jb["order"] = b.order;
        jb["element"] = d.group().label(b.monodromy);
        branches.push_back(std::move(jb));
    }
    j["branches"] = std::move(branches);
    return j;
}

/// Tuple file: {"group": {...}, "entries": ["b","a*b","a"]}
inline HurwitzTuple parse_tuple_json(const Json& j,
                                     std::size_t element_cap = FiniteGroup::kDefaultElementCap) {
    if (!j.is_object()) throw ParseError("tuple file must be a JSON object");
    FiniteGroup g = parse_group_descriptor(j.at("group"), element_cap);
    std::vector<GroupElement> entries;
    for (const auto& e : j.at("entries"))
        entries.push_back(g.element_from_label(e.get<std::string>()));
    return HurwitzTuple{std::move(g), std::move(entries)};
}

inline Json tuple_json(const HurwitzTuple& t) {
    Json j;
    j["group"] = group_descriptor_json(t.group);
    Json entries = Json::array();
    for (GroupElement e : t.entries) entries.push_back(t.group.label(e));
    j["entries"] = std::move(entries);
    return j;
}

/// Wraps nlohmann parse errors (which carry byte positions) as ParseError.
inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

inline BranchDatum load_datum_file(const std::string& path,
                                   std::size_t element_cap = FiniteGroup::kDefaultElementCap) {
    return parse_datum_json(load_json_file(path), element_cap);
}

}  // namespace coverforge
