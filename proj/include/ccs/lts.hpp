#ifndef CCS_LTS_HPP
#define CCS_LTS_HPP

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccs/semantics.hpp"

#include "json.hpp"

namespace ccs {

using StateId = std::size_t;

/// Renames rec-bound identifiers to X0, X1, ... in leftmost-innermost
/// binder order, so terms equal up to binder names share one canonical
/// form. Idempotent; free variables are untouched.
inline Process canonicalize(const Process& p) {
    struct Walker {
        std::size_t counter = 0;
        std::vector<std::pair<std::string, std::string>> env; // old -> new, innermost last

        static std::size_t count_binders(const Process& p) {
            switch (p.kind()) {
                case ProcKind::nil:
                case ProcKind::var: return 0;
                case ProcKind::prefix:
                case ProcKind::restr:
                case ProcKind::relab: return count_binders(p.body());
                case ProcKind::sum:
                case ProcKind::par:
                    return count_binders(p.left()) + count_binders(p.right());
                case ProcKind::rec: return 1 + count_binders(p.body());
            }
            return 0;
        }

        Process go(const Process& p) {
            switch (p.kind()) {
                case ProcKind::nil: return p;
                case ProcKind::var: {
                    for (auto it = env.rbegin(); it != env.rend(); ++it)
                        if (it->first == p.var_name()) return Process::var(Identifier(it->second));
                    return p; // free variable
                }
                case ProcKind::prefix: return Process::prefix(p.action(), go(p.body()));
                case ProcKind::sum: return Process::sum(go(p.left()), go(p.right()));
                case ProcKind::par: return Process::par(go(p.left()), go(p.right()));
                case ProcKind::restr: return Process::restr(p.restricted(), go(p.body()));
                case ProcKind::relab: return Process::relab(go(p.body()), p.relabeling());
                case ProcKind::rec: {
                    // Binders inside the body are numbered first (post-order).
                    std::size_t mine = counter + count_binders(p.body());
                    std::string fresh = "X" + std::to_string(mine);
                    env.emplace_back(p.var_name(), fresh);
                    Process body = go(p.body());
                    env.pop_back();
                    counter = mine + 1;
                    return Process::rec(Identifier(fresh), std::move(body));
                }
            }
            return p;
        }
    };
    return Walker{}.go(p);
}

struct LtsLimits {
    std::size_t max_states = 10000;
    std::size_t max_edges = 100000;
};

struct LtsState {
    StateId id;
    Process term;
    std::string text; // render(term), the canonical key
};

struct LtsEdge {
    StateId from;
    Action action;
    StateId to;
};

/// Reachable labeled transition system of a root process. States hold
/// canonical terms; no two states are structurally equal; edge order
/// follows BFS discovery and the deterministic transition order.
struct Lts {
    std::vector<LtsState> states;
    std::vector<LtsEdge> edges;
    StateId root = 0;

    std::size_t num_states() const { return states.size(); }

    std::vector<std::vector<std::size_t>> edges_by_source() const {
        std::vector<std::vector<std::size_t>> out(states.size());
        for (std::size_t i = 0; i < edges.size(); ++i) out[edges[i].from].push_back(i);
        return out;
    }
};

/// Breadth-first exploration from canonicalize(root). Deterministic:
/// state ids follow discovery order.
inline Lts build_lts(const Process& root, const LtsLimits& limits = {},
                     const SemanticsConfig& cfg = {}) {
    Lts lts;
    std::unordered_map<std::string, StateId> index;

    auto intern = [&](const Process& canon) -> StateId {
        std::string text = render(canon);
        auto it = index.find(text);
        if (it != index.end()) return it->second;
        if (lts.states.size() >= limits.max_states)
            throw CcsError(Errc::state_space_exceeded,
                           "more than " + std::to_string(limits.max_states) + " states");
        StateId id = lts.states.size();
        lts.states.push_back({id, canon, std::move(text)});
        index.emplace(lts.states.back().text, id);
        return id;
    };

    intern(canonicalize(root));
    StateId next_unexplored = 0;

    while (next_unexplored < lts.states.size()) {
        StateId sid = next_unexplored++;
        Process term = lts.states[sid].term;
        for (const auto& t : transitions(term, cfg)) {
            if (lts.edges.size() >= limits.max_edges)
                throw CcsError(Errc::edge_space_exceeded,
                               "more than " + std::to_string(limits.max_edges) + " edges");
            StateId to = intern(canonicalize(t.target));
            lts.edges.push_back({sid, t.action, to});
        }
    }
    return lts;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace detail

/// Graphviz digraph; node labels are rendered terms, the root is drawn
/// with a double circle.
inline std::string export_dot(const Lts& lts) {
    std::string out = "digraph lts {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (const auto& s : lts.states) {
        out += "  " + std::to_string(s.id) + " [label=\"" + detail::dot_escape(s.text) + "\"";
        if (s.id == lts.root) out += ", shape=doublecircle";
        out += "];\n";
    }
    for (const auto& e : lts.edges) {
        out += "  " + std::to_string(e.from) + " -> " + std::to_string(e.to) + " [label=\"" +
               detail::dot_escape(render_action(e.action)) + "\"];\n";
    }
    out += "}\n";
    return out;
}

/// {"root": int, "states": [{"id": int, "term": string}], "edges":
///  [{"from": int, "action": string, "to": int}]}
inline std::string export_json(const Lts& lts) {
    nlohmann::ordered_json j;
    j["root"] = lts.root;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto& s : lts.states) {
        nlohmann::ordered_json js;
        js["id"] = s.id;
        js["term"] = s.text;
        j["states"].push_back(std::move(js));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : lts.edges) {
        nlohmann::ordered_json je;
        je["from"] = e.from;
        je["action"] = render_action(e.action);
        je["to"] = e.to;
        j["edges"].push_back(std::move(je));
    }
    return j.dump();
}

} // namespace ccs

#endif // CCS_LTS_HPP
