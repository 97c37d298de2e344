#ifndef CCS_EQUIV_HPP
#define CCS_EQUIV_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ccs/lts.hpp"

namespace ccs {

// ---------------------------------------------------------------------------
// Relations and partitions
// ---------------------------------------------------------------------------

/// Finite set of state pairs.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::vector<std::pair<StateId, StateId>> pairs) : pairs_(std::move(pairs)) {
        std::sort(pairs_.begin(), pairs_.end());
        pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    }

    bool contains(StateId a, StateId b) const {
        return std::binary_search(pairs_.begin(), pairs_.end(), std::make_pair(a, b));
    }

    const std::vector<std::pair<StateId, StateId>>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    auto begin() const { return pairs_.begin(); }
    auto end() const { return pairs_.end(); }

private:
    std::vector<std::pair<StateId, StateId>> pairs_; // sorted, unique
};

/// Disjoint blocks covering all states of an LTS.
struct Partition {
    std::vector<std::vector<StateId>> blocks; // each sorted; blocks sorted by first member
    std::vector<std::size_t> block_of;

    bool same_block(StateId a, StateId b) const { return block_of[a] == block_of[b]; }

    /// The induced equivalence as an explicit relation.
    Relation to_relation() const {
        std::vector<std::pair<StateId, StateId>> pairs;
        for (const auto& blk : blocks)
            for (StateId a : blk)
                for (StateId b : blk) pairs.emplace_back(a, b);
        return Relation(std::move(pairs));
    }
};

// ---------------------------------------------------------------------------
// Saturation: EPS and weak transitions
// ---------------------------------------------------------------------------

struct WeakEdge {
    StateId from;
    Label label;
    StateId to;
};

/// Base LTS plus its tau closure: eps is the reflexive-transitive closure
/// of tau edges, weak_edges realize ==l=>> (eps; l; eps) and
/// weak_tau_edges realize ==tau=>> (eps; tau; eps, at least one tau).
struct SaturatedLts {
    Lts base;
    Relation eps;
    std::vector<WeakEdge> weak_edges;
    std::vector<std::pair<StateId, StateId>> weak_tau_edges;

    // adjacency caches, indexed by source state
    std::vector<std::vector<StateId>> eps_fwd;
    std::vector<std::vector<std::pair<Label, StateId>>> weak_fwd;
    std::vector<std::vector<StateId>> weak_tau_fwd;

    bool has_weak(StateId s, const Label& l, StateId t) const {
        for (const auto& [lab, to] : weak_fwd[s])
            if (to == t && lab == l) return true;
        return false;
    }
    bool has_weak_tau(StateId s, StateId t) const {
        const auto& v = weak_tau_fwd[s];
        return std::find(v.begin(), v.end(), t) != v.end();
    }
    bool has_eps(StateId s, StateId t) const {
        const auto& v = eps_fwd[s];
        return std::binary_search(v.begin(), v.end(), t);
    }
};

/// Reflexive-transitive closure of the tau-edge relation.
inline Relation compute_eps(const Lts& lts) {
    std::size_t n = lts.num_states();
    std::vector<std::vector<StateId>> tau_adj(n);
    for (const auto& e : lts.edges)
        if (e.action.is_tau()) tau_adj[e.from].push_back(e.to);

    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<char> seen(n);
    for (StateId s = 0; s < n; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        std::vector<StateId> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            StateId cur = stack.back();
            stack.pop_back();
            pairs.emplace_back(s, cur);
            for (StateId nxt : tau_adj[cur])
                if (!seen[nxt]) {
                    seen[nxt] = 1;
                    stack.push_back(nxt);
                }
        }
    }
    return Relation(std::move(pairs));
}

inline SaturatedLts saturate(const Lts& lts) {
    SaturatedLts sat;
    sat.base = lts;
    sat.eps = compute_eps(lts);

    std::size_t n = lts.num_states();
    sat.eps_fwd.assign(n, {});
    for (const auto& [s, t] : sat.eps) sat.eps_fwd[s].push_back(t);

    std::vector<std::vector<StateId>> eps_bwd(n);
    for (const auto& [s, t] : sat.eps) eps_bwd[t].push_back(s);

    // eps ; base edge ; eps
    std::map<std::tuple<StateId, bool, std::string, StateId>, bool> seen_vis;
    std::map<std::pair<StateId, StateId>, bool> seen_tau;
    for (const auto& e : lts.edges) {
        for (StateId s : eps_bwd[e.from]) {
            for (StateId t : sat.eps_fwd[e.to]) {
                if (e.action.is_tau()) {
                    if (!seen_tau.emplace(std::make_pair(s, t), true).second) continue;
                    sat.weak_tau_edges.emplace_back(s, t);
                } else {
                    const Label& l = e.action.label();
                    auto key = std::make_tuple(s, l.is_output(), l.name(), t);
                    if (!seen_vis.emplace(key, true).second) continue;
                    sat.weak_edges.push_back({s, l, t});
                }
            }
        }
    }
    std::sort(sat.weak_tau_edges.begin(), sat.weak_tau_edges.end());
    std::sort(sat.weak_edges.begin(), sat.weak_edges.end(), [](const WeakEdge& a, const WeakEdge& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.label != b.label) return a.label < b.label;
        return a.to < b.to;
    });

    sat.weak_fwd.assign(n, {});
    for (const auto& w : sat.weak_edges) sat.weak_fwd[w.from].emplace_back(w.label, w.to);
    sat.weak_tau_fwd.assign(n, {});
    for (const auto& [s, t] : sat.weak_tau_edges) sat.weak_tau_fwd[s].push_back(t);
    return sat;
}

// ---------------------------------------------------------------------------
// Partition refinement (Kanellakis-Smolka style)
// ---------------------------------------------------------------------------

namespace detail {

/// Splits blocks by (move key, target block) signatures until stable.
/// Blocks are visited in ascending minimum-state order and sub-blocks in
/// lexicographic signature order, which pins the result and the block
/// numbering for identical inputs.
inline Partition refine_by_signatures(
    std::size_t n,
    const std::function<std::vector<std::pair<std::string, StateId>>(StateId)>& moves_of) {
    Partition part;
    part.block_of.assign(n, 0);
    if (n == 0) return part;
    std::size_t nblocks = 1;

    std::vector<std::vector<std::pair<std::string, StateId>>> moves(n);
    for (StateId s = 0; s < n; ++s) moves[s] = moves_of(s);

    for (;;) {
        using Sig = std::vector<std::pair<std::string, std::size_t>>;
        std::vector<Sig> sig(n);
        for (StateId s = 0; s < n; ++s) {
            Sig sg;
            sg.reserve(moves[s].size());
            for (const auto& [key, to] : moves[s]) sg.emplace_back(key, part.block_of[to]);
            std::sort(sg.begin(), sg.end());
            sg.erase(std::unique(sg.begin(), sg.end()), sg.end());
            sig[s] = std::move(sg);
        }

        std::vector<std::vector<StateId>> blocks(nblocks);
        for (StateId s = 0; s < n; ++s) blocks[part.block_of[s]].push_back(s);
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });

        std::vector<std::size_t> next(n, 0);
        std::size_t next_count = 0;
        for (const auto& blk : blocks) {
            std::map<Sig, std::vector<StateId>> split;
            for (StateId s : blk) split[sig[s]].push_back(s);
            for (auto& [_, members] : split) {
                for (StateId s : members) next[s] = next_count;
                ++next_count;
            }
        }
        bool stable = next_count == nblocks;
        part.block_of = std::move(next);
        nblocks = next_count;
        if (stable) break;
    }

    part.blocks.assign(nblocks, {});
    for (StateId s = 0; s < n; ++s) part.blocks[part.block_of[s]].push_back(s);
    std::sort(part.blocks.begin(), part.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t b = 0; b < part.blocks.size(); ++b)
        for (StateId s : part.blocks[b]) part.block_of[s] = b;
    return part;
}

inline std::string strong_move_key(const Action& u) { return render_action(u); }

} // namespace detail

/// Coarsest partition whose induced relation satisfies the strong
/// transfer condition; same block means strongly bisimilar.
inline Partition strong_bisim_partition(const Lts& lts) {
    auto by_src = lts.edges_by_source();
    return detail::refine_by_signatures(lts.num_states(), [&](StateId s) {
        std::vector<std::pair<std::string, StateId>> out;
        for (std::size_t ei : by_src[s])
            out.emplace_back(detail::strong_move_key(lts.edges[ei].action), lts.edges[ei].to);
        return out;
    });
}

/// Coarsest weak-transfer partition, computed as strong refinement over
/// the saturated moves (==l=>> plus eps).
inline Partition weak_bisim_partition(const SaturatedLts& sat) {
    // Move keys are prefixed so a label literally named "eps" cannot
    // collide with the eps pseudo-move.
    return detail::refine_by_signatures(sat.base.num_states(), [&](StateId s) {
        std::vector<std::pair<std::string, StateId>> out;
        for (const auto& [l, to] : sat.weak_fwd[s])
            out.emplace_back("l:" + detail::strong_move_key(Action::visible(l)), to);
        for (StateId to : sat.eps_fwd[s]) out.emplace_back("e", to);
        return out;
    });
}

// ---------------------------------------------------------------------------
// Transfer-condition oracle
// ---------------------------------------------------------------------------

enum class EquivKind { strong, weak, rooted_weak };

/// Evaluates the transfer condition directly on a candidate relation, in
/// both directions for every pair. This is the oracle used to validate
/// witnesses.
inline bool check_bisimulation(const Lts& lts, const Relation& r) {
    auto by_src = lts.edges_by_source();
    auto matches = [&](StateId from, const Action& u, StateId into_class_of,
                       bool flipped) -> bool {
        for (std::size_t ei : by_src[from]) {
            const auto& e = lts.edges[ei];
            if (!(e.action == u)) continue;
            bool ok = flipped ? r.contains(into_class_of, e.to) : r.contains(e.to, into_class_of);
            if (ok) return true;
        }
        return false;
    };
    for (const auto& [s, t] : r) {
        for (std::size_t ei : by_src[s]) {
            const auto& e = lts.edges[ei];
            if (!matches(t, e.action, e.to, true)) return false; // s-move unmatched by t
        }
        for (std::size_t ei : by_src[t]) {
            const auto& e = lts.edges[ei];
            if (!matches(s, e.action, e.to, false)) return false; // t-move unmatched by s
        }
    }
    return true;
}

/// Weak variant: base visible moves must be matched by ==l=>>, base tau
/// moves by eps, into related states.
inline bool check_weak_bisimulation(const SaturatedLts& sat, const Relation& r) {
    auto by_src = sat.base.edges_by_source();
    auto match_vis = [&](StateId from, const Label& l, StateId target, bool first_arg) {
        for (const auto& [lab, to] : sat.weak_fwd[from]) {
            if (!(lab == l)) continue;
            if (first_arg ? r.contains(to, target) : r.contains(target, to)) return true;
        }
        return false;
    };
    auto match_tau = [&](StateId from, StateId target, bool first_arg) {
        for (StateId to : sat.eps_fwd[from])
            if (first_arg ? r.contains(to, target) : r.contains(target, to)) return true;
        return false;
    };
    for (const auto& [s, t] : r) {
        for (std::size_t ei : by_src[s]) {
            const auto& e = sat.base.edges[ei];
            bool ok = e.action.is_tau() ? match_tau(t, e.to, false)
                                        : match_vis(t, e.action.label(), e.to, false);
            if (!ok) return false;
        }
        for (std::size_t ei : by_src[t]) {
            const auto& e = sat.base.edges[ei];
            bool ok = e.action.is_tau() ? match_tau(s, e.to, true)
                                        : match_vis(s, e.action.label(), e.to, true);
            if (!ok) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Equivalence checks over process pairs
// ---------------------------------------------------------------------------

struct Distinguishing {
    StateId state;
    Action action;
};

struct EquivReport {
    EquivKind kind = EquivKind::strong;
    bool related = false;
    std::optional<Partition> witness;
    std::optional<Distinguishing> distinguishing;

    // joint LTS context (left root first, right root second)
    Lts joint;
    StateId root_left = 0;
    StateId root_right = 0;
};

inline const char* equiv_kind_name(EquivKind k) {
    switch (k) {
        case EquivKind::strong: return "strong";
        case EquivKind::weak: return "weak";
        case EquivKind::rooted_weak: return "rooted_weak";
    }
    return "?";
}

/// Disjoint union; right-side states are shifted by the left state count.
/// Identical terms on the two sides stay distinct states.
inline Lts disjoint_union(const Lts& a, const Lts& b, StateId& root_b_out) {
    Lts out = a;
    StateId off = a.num_states();
    for (const auto& s : b.states) out.states.push_back({s.id + off, s.term, s.text});
    for (const auto& e : b.edges) out.edges.push_back({e.from + off, e.action, e.to + off});
    root_b_out = b.root + off;
    return out;
}

namespace detail {

inline std::optional<Distinguishing> strong_counterexample(const Lts& lts, const Partition& part,
                                                           StateId a, StateId b) {
    auto by_src = lts.edges_by_source();
    auto unmatched = [&](StateId from, StateId other) -> std::optional<Distinguishing> {
        for (std::size_t ei : by_src[from]) {
            const auto& e = lts.edges[ei];
            bool ok = false;
            for (std::size_t ej : by_src[other]) {
                const auto& f = lts.edges[ej];
                if (f.action == e.action && part.same_block(e.to, f.to)) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return Distinguishing{from, e.action};
        }
        return std::nullopt;
    };
    if (auto d = unmatched(a, b)) return d;
    return unmatched(b, a);
}

inline std::optional<Distinguishing> weak_counterexample(const SaturatedLts& sat,
                                                         const Partition& part, StateId a,
                                                         StateId b) {
    auto by_src = sat.base.edges_by_source();
    auto unmatched = [&](StateId from, StateId other) -> std::optional<Distinguishing> {
        for (std::size_t ei : by_src[from]) {
            const auto& e = sat.base.edges[ei];
            bool ok = false;
            if (e.action.is_tau()) {
                for (StateId to : sat.eps_fwd[other])
                    if (part.same_block(e.to, to)) {
                        ok = true;
                        break;
                    }
            } else {
                for (const auto& [l, to] : sat.weak_fwd[other])
                    if (l == e.action.label() && part.same_block(e.to, to)) {
                        ok = true;
                        break;
                    }
            }
            if (!ok) return Distinguishing{from, e.action};
        }
        return std::nullopt;
    };
    if (auto d = unmatched(a, b)) return d;
    return unmatched(b, a);
}

} // namespace detail

inline EquivReport strong_equiv(const Process& p, const Process& q, const LtsLimits& limits = {},
                                const SemanticsConfig& cfg = {}) {
    EquivReport rep;
    rep.kind = EquivKind::strong;
    Lts a = build_lts(p, limits, cfg);
    Lts b = build_lts(q, limits, cfg);
    rep.joint = disjoint_union(a, b, rep.root_right);
    rep.root_left = a.root;
    Partition part = strong_bisim_partition(rep.joint);
    rep.related = part.same_block(rep.root_left, rep.root_right);
    if (rep.related)
        rep.witness = std::move(part);
    else
        rep.distinguishing =
            detail::strong_counterexample(rep.joint, part, rep.root_left, rep.root_right);
    return rep;
}

inline EquivReport weak_equiv(const Process& p, const Process& q, const LtsLimits& limits = {},
                              const SemanticsConfig& cfg = {}) {
    EquivReport rep;
    rep.kind = EquivKind::weak;
    Lts a = build_lts(p, limits, cfg);
    Lts b = build_lts(q, limits, cfg);
    rep.joint = disjoint_union(a, b, rep.root_right);
    rep.root_left = a.root;
    SaturatedLts sat = saturate(rep.joint);
    Partition part = weak_bisim_partition(sat);
    rep.related = part.same_block(rep.root_left, rep.root_right);
    if (rep.related)
        rep.witness = std::move(part);
    else
        rep.distinguishing =
            detail::weak_counterexample(sat, part, rep.root_left, rep.root_right);
    return rep;
}

/// Rooted weak equivalence (observation congruence): on top of the weak
/// partition, every root move must be answered by a weak transition with
/// at least one tau when the move is tau.
inline EquivReport rooted_weak_equiv(const Process& p, const Process& q,
                                     const LtsLimits& limits = {},
                                     const SemanticsConfig& cfg = {}) {
    EquivReport rep;
    rep.kind = EquivKind::rooted_weak;
    Lts a = build_lts(p, limits, cfg);
    Lts b = build_lts(q, limits, cfg);
    rep.joint = disjoint_union(a, b, rep.root_right);
    rep.root_left = a.root;
    SaturatedLts sat = saturate(rep.joint);
    Partition part = weak_bisim_partition(sat);

    auto by_src = rep.joint.edges_by_source();
    auto root_unmatched = [&](StateId from, StateId other) -> std::optional<Distinguishing> {
        for (std::size_t ei : by_src[from]) {
            const auto& e = rep.joint.edges[ei];
            bool ok = false;
            if (e.action.is_tau()) {
                for (StateId to : sat.weak_tau_fwd[other])
                    if (part.same_block(e.to, to)) {
                        ok = true;
                        break;
                    }
            } else {
                for (const auto& [l, to] : sat.weak_fwd[other])
                    if (l == e.action.label() && part.same_block(e.to, to)) {
                        ok = true;
                        break;
                    }
            }
            if (!ok) return Distinguishing{from, e.action};
        }
        return std::nullopt;
    };

    auto d = root_unmatched(rep.root_left, rep.root_right);
    if (!d) d = root_unmatched(rep.root_right, rep.root_left);
    rep.related = !d.has_value();
    if (rep.related)
        rep.witness = std::move(part);
    else
        rep.distinguishing = d;
    return rep;
}

// ---------------------------------------------------------------------------
// Weak traces
// ---------------------------------------------------------------------------

/// True iff some state is reachable from the root along a path whose
/// visible labels spell exactly the given trace (tau steps are erased).
inline bool weak_trace_check(const Lts& lts, const std::vector<Label>& trace) {
    std::size_t n = lts.num_states();
    std::size_t k = trace.size();
    auto by_src = lts.edges_by_source();
    std::vector<std::vector<char>> seen(n, std::vector<char>(k + 1, 0));
    std::vector<std::pair<StateId, std::size_t>> stack{{lts.root, 0}};
    seen[lts.root][0] = 1;
    while (!stack.empty()) {
        auto [s, pos] = stack.back();
        stack.pop_back();
        if (pos == k) return true;
        for (std::size_t ei : by_src[s]) {
            const auto& e = lts.edges[ei];
            std::size_t npos;
            if (e.action.is_tau())
                npos = pos;
            else if (pos < k && e.action.label() == trace[pos])
                npos = pos + 1;
            else
                continue;
            if (!seen[e.to][npos]) {
                seen[e.to][npos] = 1;
                stack.emplace_back(e.to, npos);
            }
        }
    }
    return false;
}

inline bool weak_trace_check(const Process& p, const std::vector<Label>& trace,
                             const LtsLimits& limits = {}, const SemanticsConfig& cfg = {}) {
    return weak_trace_check(build_lts(p, limits, cfg), trace);
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

/// {"kind": "...", "related": bool, "blocks": [[stateIds]],
///  "distinguishing": {"state": int, "action": string} | null}
inline std::string equiv_report_json(const EquivReport& rep) {
    nlohmann::ordered_json j;
    j["kind"] = equiv_kind_name(rep.kind);
    j["related"] = rep.related;
    j["blocks"] = nlohmann::ordered_json::array();
    if (rep.witness) {
        for (const auto& blk : rep.witness->blocks) j["blocks"].push_back(blk);
    }
    if (rep.distinguishing) {
        nlohmann::ordered_json d;
        d["state"] = rep.distinguishing->state;
        d["action"] = render_action(rep.distinguishing->action);
        j["distinguishing"] = std::move(d);
    } else {
        j["distinguishing"] = nullptr;
    }
    return j.dump();
}

} // namespace ccs

#endif // CCS_EQUIV_HPP
