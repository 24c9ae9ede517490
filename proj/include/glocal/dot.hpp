#pragma once

#include <string>

#include "kripke.hpp"
#include "lifetree.hpp"
#include "model.hpp"

namespace glocal {

namespace detail {

inline const char* agent_colour(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};
    return palette[i % 7];
}

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// Vertices coloured by agent and labelled with their true atoms; each facet drawn as a clique.
inline std::string to_dot(const SimplicialModel& m, const std::string& name = "complex") {
    std::string out = "graph " + detail::quote(name) + " {\n  node [shape=circle, style=filled, fontcolor=white];\n";
    for (std::uint32_t v = 0; v < m.vertex_count(); ++v) {
        std::string label = m.vertex_name(v);
        for (const auto& p : m.vertex_atoms(v)) label += "\\n" + p;
        out += "  " + detail::quote(m.vertex_name(v)) + " [label=" + detail::quote(label) +
               ", fillcolor=" + detail::quote(detail::agent_colour(static_cast<std::size_t>(*m.agent_index(m.vertex_agent(v))))) +
               "];\n";
    }
    for (auto f : m.facets()) {
        auto vs = m.facet_vertices(f);
        std::string lab = detail::quote(m.facet_label(f));
        if (vs.size() == 1) {
            out += "  " + detail::quote(m.vertex_name(vs[0])) + " [xlabel=" + lab + "];\n";
            continue;
        }
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                out += "  " + detail::quote(m.vertex_name(vs[i])) + " -- " + detail::quote(m.vertex_name(vs[j])) +
                       " [label=" + lab + "];\n";
    }
    return out + "}\n";
}

/// States labelled with live agents and atoms; one edge per related pair, labelled by agent.
inline std::string to_dot(const PartialEpistemicModel& m, const std::string& name = "kripke") {
    std::string out = "graph " + detail::quote(name) + " {\n  node [shape=box];\n";
    for (std::uint32_t s = 0; s < m.state_count(); ++s) {
        const auto& st = m.state({s});
        std::vector<std::string> alive(st.alive.begin(), st.alive.end());
        std::vector<std::string> atoms;
        for (const auto& p : st.atoms) atoms.push_back(p.str());
        std::string label = m.state_name({s}) + "\\nalive " + detail::brace(alive) + "\\n" + detail::brace(atoms);
        out += "  " + detail::quote(m.state_name({s})) + " [label=" + detail::quote(label) + "];\n";
    }
    for (std::size_t a = 0; a < m.agents().size(); ++a)
        for (const auto& blk : m.blocks(static_cast<int>(a)))
            for (std::size_t i = 0; i < blk.size(); ++i)
                for (std::size_t j = i + 1; j < blk.size(); ++j)
                    out += "  " + detail::quote(m.state_name({blk[i]})) + " -- " +
                           detail::quote(m.state_name({blk[j]})) + " [label=" + detail::quote(m.agents()[a]) +
                           ", color=" + detail::quote(detail::agent_colour(a)) + "];\n";
    return out + "}\n";
}

} // namespace glocal
