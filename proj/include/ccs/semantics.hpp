#ifndef CCS_SEMANTICS_HPP
#define CCS_SEMANTICS_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "ccs/parser.hpp"
#include "ccs/syntax.hpp"

namespace ccs {

struct Transition {
    Action action;
    Process target;

    friend bool operator==(const Transition& a, const Transition& b) {
        return a.action == b.action && a.target == b.target;
    }
};

/// Finite, deduplicated, deterministically ordered set of one-step
/// transitions: inputs by name, then outputs by name, then tau, ties
/// broken on the rendered target text.
class TransitionSet {
public:
    TransitionSet() = default;

    explicit TransitionSet(std::vector<Transition> items) : items_(std::move(items)) {
        std::vector<std::string> keys(items_.size());
        for (std::size_t i = 0; i < items_.size(); ++i) keys[i] = render(items_[i].target);
        std::vector<std::size_t> idx(items_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (items_[a].action != items_[b].action)
                return action_less(items_[a].action, items_[b].action);
            return keys[a] < keys[b];
        });
        std::vector<Transition> sorted;
        sorted.reserve(items_.size());
        for (std::size_t i : idx) {
            if (!sorted.empty() && sorted.back() == items_[i]) continue;
            sorted.push_back(items_[i]);
        }
        items_ = std::move(sorted);
    }

    const std::vector<Transition>& items() const { return items_; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    bool contains(const Action& u, const Process& t) const {
        for (const auto& tr : items_)
            if (tr.action == u && tr.target == t) return true;
        return false;
    }

    friend bool operator==(const TransitionSet& a, const TransitionSet& b) {
        return a.items_ == b.items_;
    }

private:
    std::vector<Transition> items_;
};

struct SemanticsConfig {
    int max_unfold_depth = 64;
};

namespace detail {

inline void collect_transitions(const Process& p, const SemanticsConfig& cfg, int depth,
                                std::vector<Transition>& out) {
    switch (p.kind()) {
        case ProcKind::nil:
        case ProcKind::var: // closedness is checked at entry
            return;
        case ProcKind::prefix:
            out.push_back({p.action(), p.body()});
            return;
        case ProcKind::sum:
            collect_transitions(p.left(), cfg, depth, out);
            collect_transitions(p.right(), cfg, depth, out);
            return;
        case ProcKind::par: {
            std::vector<Transition> ls, rs;
            collect_transitions(p.left(), cfg, depth, ls);
            collect_transitions(p.right(), cfg, depth, rs);
            for (const auto& t : ls) out.push_back({t.action, Process::par(t.target, p.right())});
            for (const auto& t : rs) out.push_back({t.action, Process::par(p.left(), t.target)});
            // synchronization of complementary visible actions
            for (const auto& lt : ls) {
                if (lt.action.is_tau()) continue;
                for (const auto& rt : rs) {
                    if (rt.action.is_tau()) continue;
                    if (rt.action.label() == compl_label(lt.action.label()))
                        out.push_back({Action::tau(), Process::par(lt.target, rt.target)});
                }
            }
            return;
        }
        case ProcKind::restr: {
            std::vector<Transition> ts;
            collect_transitions(p.body(), cfg, depth, ts);
            const auto& blocked = p.restricted();
            for (const auto& t : ts) {
                if (t.action.is_visible() &&
                    std::binary_search(blocked.begin(), blocked.end(), t.action.label().name()))
                    continue;
                out.push_back({t.action, Process::restr(blocked, t.target)});
            }
            return;
        }
        case ProcKind::relab: {
            std::vector<Transition> ts;
            collect_transitions(p.body(), cfg, depth, ts);
            for (const auto& t : ts)
                out.push_back({apply_relabeling(p.relabeling(), t.action),
                               Process::relab(t.target, p.relabeling())});
            return;
        }
        case ProcKind::rec: {
            if (depth >= cfg.max_unfold_depth)
                throw CcsError(Errc::depth_exceeded,
                               "recursion unfolded more than " +
                                   std::to_string(cfg.max_unfold_depth) + " times");
            Process unfolded = ccs_subst(p.body(), p, Identifier(p.var_name()));
            collect_transitions(unfolded, cfg, depth + 1, out);
            return;
        }
    }
}

} // namespace detail

/// All one-step successors of p under the SOS rules. Requires p closed
/// and weakly guarded.
inline TransitionSet transitions(const Process& p, const SemanticsConfig& cfg = {}) {
    if (!is_closed(p))
        throw CcsError(Errc::free_variable, "process has free variables");
    if (!is_weakly_guarded(p))
        throw CcsError(Errc::unguarded_recursion,
                       "a recursion variable occurs unguarded by any prefix");
    std::vector<Transition> out;
    detail::collect_transitions(p, cfg, 0, out);
    return TransitionSet(std::move(out));
}

/// Successors of p reachable by exactly the action u.
inline std::vector<Process> step(const Process& p, const Action& u,
                                 const SemanticsConfig& cfg = {}) {
    std::vector<Process> out;
    for (const auto& t : transitions(p, cfg))
        if (t.action == u) out.push_back(t.target);
    return out;
}

} // namespace ccs

#endif // CCS_SEMANTICS_HPP
