#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "bisim.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "kripke.hpp"
#include "lifetree.hpp"
#include "model.hpp"

namespace glocal {

using json = nlohmann::json;

/// Version tag carried by every machine-readable CLI result.
inline constexpr const char* kSchema = "glocal/1";

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
    return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw FormatError(where + ": expected an array of strings");
    std::vector<std::string> out;
    for (const auto& x : j) {
        if (!x.is_string()) throw FormatError(where + ": expected an array of strings");
        out.push_back(x.get<std::string>());
    }
    return out;
}

inline LocalAtom parse_atom_ref(const std::string& s, const std::string& where) {
    auto at = s.find('@');
    if (at == std::string::npos || at == 0 || at + 1 == s.size() || s.find('@', at + 1) != std::string::npos)
        throw FormatError(where + ": atom '" + s + "' is not of the form name@agent");
    return {s.substr(0, at), s.substr(at + 1)};
}

} // namespace detail

inline json to_json(const SimplicialModelData& d) {
    json j;
    j["agents"] = d.agents;
    json vs = json::object();
    for (const auto& [name, v] : d.vertices)
        vs[name] = {{"agent", v.agent}, {"atoms", std::vector<std::string>(v.atoms.begin(), v.atoms.end())}};
    j["vertices"] = vs;
    j["facets"] = d.facets;
    if (!d.names.empty()) j["names"] = d.names;
    return j;
}

inline SimplicialModelData simplicial_from_json(const json& j) {
    SimplicialModelData d;
    d.agents = detail::string_list(detail::field(j, "agents", "model"), "agents");
    const json& vs = detail::field(j, "vertices", "model");
    if (!vs.is_object()) throw FormatError("vertices: expected an object");
    for (const auto& [name, v] : vs.items()) {
        std::string where = "vertex '" + name + "'";
        const json& ag = detail::field(v, "agent", where);
        if (!ag.is_string()) throw FormatError(where + ": agent must be a string");
        VertexData vd{ag.get<std::string>(), {}};
        if (v.contains("atoms"))
            for (auto& p : detail::string_list(v.at("atoms"), where + " atoms")) vd.atoms.insert(p);
        d.vertices.emplace(name, std::move(vd));
    }
    const json& fs = detail::field(j, "facets", "model");
    if (!fs.is_array()) throw FormatError("facets: expected an array");
    for (const auto& f : fs) d.facets.push_back(detail::string_list(f, "facet"));
    if (j.contains("names")) {
        const json& ns = j.at("names");
        if (!ns.is_object()) throw FormatError("names: expected an object");
        for (const auto& [alias, vs2] : ns.items()) d.names.emplace(alias, detail::string_list(vs2, "alias " + alias));
    }
    return d;
}

inline json to_json(const PartialEpistemicModelData& d) {
    json j;
    j["agents"] = d.agents;
    json ss = json::object();
    for (const auto& [name, s] : d.states) {
        std::vector<std::string> atoms;
        for (const auto& p : s.atoms) atoms.push_back(p.str());
        ss[name] = {{"alive", std::vector<std::string>(s.alive.begin(), s.alive.end())}, {"atoms", atoms}};
    }
    j["states"] = ss;
    j["relations"] = d.relations;
    return j;
}

inline PartialEpistemicModelData kripke_from_json(const json& j) {
    PartialEpistemicModelData d;
    d.agents = detail::string_list(detail::field(j, "agents", "model"), "agents");
    const json& ss = detail::field(j, "states", "model");
    if (!ss.is_object()) throw FormatError("states: expected an object");
    for (const auto& [name, s] : ss.items()) {
        std::string where = "state '" + name + "'";
        StateData st;
        if (s.contains("alive"))
            for (auto& a : detail::string_list(s.at("alive"), where + " alive")) st.alive.insert(a);
        if (s.contains("atoms"))
            for (auto& p : detail::string_list(s.at("atoms"), where + " atoms"))
                st.atoms.insert(detail::parse_atom_ref(p, where));
        d.states.emplace(name, std::move(st));
    }
    if (j.contains("relations")) {
        const json& rs = j.at("relations");
        if (!rs.is_object()) throw FormatError("relations: expected an object");
        for (const auto& [a, blocks] : rs.items()) {
            if (!blocks.is_array()) throw FormatError("relations." + a + ": expected an array of blocks");
            for (const auto& b : blocks) d.relations[a].push_back(detail::string_list(b, "relations." + a));
        }
    }
    return d;
}

/// Simplicial when the document has "facets", Kripke when it has "states".
inline ModelPayload model_from_json(const json& j) {
    if (j.is_object() && j.contains("facets")) return simplicial_from_json(j);
    if (j.is_object() && j.contains("states")) return kripke_from_json(j);
    throw FormatError("model file has neither \"facets\" nor \"states\"");
}

inline json to_json(const ModelPayload& p) {
    return std::visit([](const auto& d) { return to_json(d); }, p);
}

/// Two-space indented dump with a trailing newline; key order is sorted, so output is byte-stable.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline ModelPayload read_model_file(const std::string& path) { return model_from_json(read_json_file(path)); }

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << text;
}

inline json to_json(const LifeTree& t) {
    json nodes = json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
        json n;
        n["id"] = i;
        n["label"] = std::vector<std::string>(t[i].label.begin(), t[i].label.end());
        n["children"] = t[i].children;
        if (t[i].parent >= 0) {
            n["parent"] = t[i].parent;
            n["edge"] = t[i].edge;
        }
        if (t[i].tag) n["subformula"] = print(*t[i].tag);
        nodes.push_back(std::move(n));
    }
    return {{"nodes", nodes}};
}

/// Relation as a list of related labels plus the removal cause of every excluded pair.
template <class LabelL, class LabelR>
json relation_to_json(const BisimRelation& rel, LabelL&& left_label, LabelR&& right_label) {
    json pairs = json::array();
    json removed = json::array();
    for (std::uint32_t l = 0; l < rel.left_size(); ++l)
        for (std::uint32_t r = 0; r < rel.right_size(); ++r) {
            if (rel.contains(l, r)) {
                pairs.push_back({left_label(l), right_label(r)});
                continue;
            }
            const RemovalCause& c = *rel.cause(l, r);
            json e = {{"pair", {left_label(l), right_label(r)}}, {"round", c.round}, {"cause", to_string(c.kind)}};
            if (c.kind == RemovalKind::Forth) {
                e["agent"] = c.agent;
                e["witness"] = left_label(c.witness);
            } else if (c.kind == RemovalKind::Back) {
                e["agent"] = c.agent;
                e["witness"] = right_label(c.witness);
            }
            removed.push_back(std::move(e));
        }
    return {{"pairs", pairs}, {"removed", removed}, {"rounds", rel.rounds()}};
}

} // namespace glocal
