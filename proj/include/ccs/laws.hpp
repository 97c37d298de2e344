#ifndef CCS_LAWS_HPP
#define CCS_LAWS_HPP

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "ccs/equiv.hpp"

namespace ccs {

// ---------------------------------------------------------------------------
// Prefixed sums and the expansion machinery
// ---------------------------------------------------------------------------

inline bool is_prefix(const Process& p) { return p.kind() == ProcKind::prefix; }

inline Action pref_act(const Process& p) {
    if (!is_prefix(p)) throw CcsError(Errc::not_a_prefix, "pref_act of a non-prefix term");
    return p.action();
}

inline Process pref_proc(const Process& p) {
    if (!is_prefix(p)) throw CcsError(Errc::not_a_prefix, "pref_proc of a non-prefix term");
    return p.body();
}

/// One summand of a prefixed sum.
struct PrefixedSummand {
    Action action;
    Process body;

    Process to_process() const { return Process::prefix(action, body); }
};

/// Left-nested sum of a nonempty list: ((f0 + f1) + ...) + fn.
inline Process sigma(const std::vector<Process>& fs) {
    if (fs.empty()) throw CcsError(Errc::empty_sum, "sigma of an empty list");
    Process acc = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) acc = Process::sum(acc, fs[i]);
    return acc;
}

namespace detail {

inline Process sync_upto(const Action& u, const Process& p,
                         const std::vector<PrefixedSummand>& fs, std::size_t idx) {
    const PrefixedSummand& f = fs[idx];
    bool no_sync = u.is_tau() || f.action.is_tau();
    bool fires = !no_sync && u.label() == compl_label(f.action.label());
    Process here = Process::prefix(Action::tau(), Process::par(p, f.body));
    if (idx == 0) {
        if (no_sync || !fires) return Process::nil();
        return here;
    }
    Process rest = sync_upto(u, p, fs, idx - 1);
    if (no_sync || !fires) return rest;
    return Process::sum(here, rest);
}

} // namespace detail

/// Synchronizations of one prefixed process u.p against a group of
/// summands; indices are consumed from the highest down, with nil
/// padding at the base when nothing fires there.
inline Process sync(const Action& u, const Process& p, const std::vector<PrefixedSummand>& fs) {
    if (fs.empty()) throw CcsError(Errc::empty_sum, "sync over an empty list");
    return detail::sync_upto(u, p, fs, fs.size() - 1);
}

/// All pairwise synchronizations of two summand groups, left-nested over
/// the first group's index.
inline Process all_sync(const std::vector<PrefixedSummand>& fs,
                        const std::vector<PrefixedSummand>& gs) {
    if (fs.empty() || gs.empty()) throw CcsError(Errc::empty_sum, "all_sync over an empty list");
    Process acc = sync(fs[0].action, fs[0].body, gs);
    for (std::size_t i = 1; i < fs.size(); ++i)
        acc = Process::sum(acc, sync(fs[i].action, fs[i].body, gs));
    return acc;
}

/// Decomposes a sum tree into its leaves, left to right. Every leaf must
/// be a prefix.
inline std::vector<PrefixedSummand> prefixed_summands(const Process& p) {
    std::vector<PrefixedSummand> out;
    std::function<void(const Process&)> walk = [&](const Process& q) {
        if (q.kind() == ProcKind::sum) {
            walk(q.left());
            walk(q.right());
            return;
        }
        if (!is_prefix(q))
            throw CcsError(Errc::not_prefixed_sum,
                           "summand '" + render(q) + "' is not a prefixed term");
        out.push_back({q.action(), q.body()});
    };
    walk(p);
    return out;
}

/// The expansion of p | q for prefixed sums p and q: interleavings of
/// both sides plus all synchronizations, strongly bisimilar to p | q.
inline Process expand(const Process& p, const Process& q) {
    std::vector<PrefixedSummand> fs = prefixed_summands(p);
    std::vector<PrefixedSummand> gs = prefixed_summands(q);
    std::vector<Process> left, right;
    left.reserve(fs.size());
    for (const auto& f : fs)
        left.push_back(Process::prefix(f.action, Process::par(f.body, q)));
    right.reserve(gs.size());
    for (const auto& g : gs)
        right.push_back(Process::prefix(g.action, Process::par(p, g.body)));
    return Process::sum(Process::sum(sigma(left), sigma(right)), all_sync(fs, gs));
}

/// Optional post-pass dropping nil padding from a sum spine.
inline Process simplify_nil_summands(const Process& p) {
    std::vector<Process> keep;
    std::function<void(const Process&)> walk = [&](const Process& q) {
        if (q.kind() == ProcKind::sum) {
            walk(q.left());
            walk(q.right());
            return;
        }
        if (q.kind() != ProcKind::nil) keep.push_back(q);
    };
    walk(p);
    if (keep.empty()) return Process::nil();
    return sigma(keep);
}

// ---------------------------------------------------------------------------
// Law catalog
// ---------------------------------------------------------------------------

using Binding =
    std::variant<Process, Action, Label, std::vector<std::string>, Relabeling, Identifier>;
using Bindings = std::map<std::string, Binding>;

enum class BindKind { process, action, label, label_set, relabeling, identifier };

namespace detail {

template <class T>
const T& bind_as(const Bindings& b, const std::string& key) {
    auto it = b.find(key);
    if (it == b.end())
        throw std::invalid_argument("missing binding for metavariable '" + key + "'");
    const T* v = std::get_if<T>(&it->second);
    if (!v) throw std::invalid_argument("binding '" + key + "' has the wrong kind");
    return *v;
}

inline const Process& bp(const Bindings& b, const std::string& k) { return bind_as<Process>(b, k); }
inline const Action& ba(const Bindings& b, const std::string& k) { return bind_as<Action>(b, k); }
inline const Label& bl(const Bindings& b, const std::string& k) { return bind_as<Label>(b, k); }
inline const std::vector<std::string>& bs(const Bindings& b, const std::string& k) {
    return bind_as<std::vector<std::string>>(b, k);
}
inline const Relabeling& br(const Bindings& b, const std::string& k) {
    return bind_as<Relabeling>(b, k);
}
inline const Identifier& bi(const Bindings& b, const std::string& k) {
    return bind_as<Identifier>(b, k);
}

inline bool name_in(const std::vector<std::string>& set, const Label& l) {
    return std::find(set.begin(), set.end(), l.name()) != set.end();
}

} // namespace detail

/// An executable algebraic-law schema: metavariables, an optional side
/// condition, and the two sides as term builders.
struct LawSchema {
    std::string name;
    std::vector<std::pair<std::string, BindKind>> metavars;
    std::function<bool(const Bindings&)> side_condition; // null = unconditional
    std::function<Process(const Bindings&)> lhs;
    std::function<Process(const Bindings&)> rhs;
};

struct LawInstance {
    std::string law_name;
    Process lhs = Process::nil();
    Process rhs = Process::nil();
    bool side_conditions_met = false;
    bool related = false;
};

inline const std::vector<LawSchema>& law_catalog() {
    using namespace detail;
    static const std::vector<LawSchema> catalog = [] {
        std::vector<LawSchema> laws;
        auto P = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::process}; };
        auto A = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::action}; };
        auto L = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::label}; };
        auto S = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::label_set}; };
        auto R = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::relabeling}; };
        auto I = [](const char* n) { return std::pair<std::string, BindKind>{n, BindKind::identifier}; };
        auto add = [&](std::string name, std::vector<std::pair<std::string, BindKind>> vars,
                       std::function<bool(const Bindings&)> cond,
                       std::function<Process(const Bindings&)> lhs,
                       std::function<Process(const Bindings&)> rhs) {
            laws.push_back({std::move(name), std::move(vars), std::move(cond), std::move(lhs),
                            std::move(rhs)});
        };
        auto nil = Process::nil();
        auto tau = Action::tau();

        // sum laws
        add("STRONG_SUM_IDENT_R", {P("E")}, nullptr,
            [=](const Bindings& b) { return Process::sum(bp(b, "E"), nil); },
            [](const Bindings& b) { return bp(b, "E"); });
        add("STRONG_SUM_IDEMP", {P("E")}, nullptr,
            [](const Bindings& b) { return Process::sum(bp(b, "E"), bp(b, "E")); },
            [](const Bindings& b) { return bp(b, "E"); });
        add("STRONG_SUM_COMM", {P("E"), P("E'")}, nullptr,
            [](const Bindings& b) { return Process::sum(bp(b, "E"), bp(b, "E'")); },
            [](const Bindings& b) { return Process::sum(bp(b, "E'"), bp(b, "E")); });
        add("STRONG_SUM_IDENT_L", {P("E")}, nullptr,
            [=](const Bindings& b) { return Process::sum(nil, bp(b, "E")); },
            [](const Bindings& b) { return bp(b, "E"); });
        add("STRONG_SUM_ASSOC_R", {P("E"), P("E'"), P("E''")}, nullptr,
            [](const Bindings& b) {
                return Process::sum(Process::sum(bp(b, "E"), bp(b, "E'")), bp(b, "E''"));
            },
            [](const Bindings& b) {
                return Process::sum(bp(b, "E"), Process::sum(bp(b, "E'"), bp(b, "E''")));
            });
        add("STRONG_SUM_ASSOC_L", {P("E"), P("E'"), P("E''")}, nullptr,
            [](const Bindings& b) {
                return Process::sum(bp(b, "E"), Process::sum(bp(b, "E'"), bp(b, "E''")));
            },
            [](const Bindings& b) {
                return Process::sum(Process::sum(bp(b, "E"), bp(b, "E'")), bp(b, "E''"));
            });
        add("STRONG_SUM_MID_IDEMP", {P("E"), P("E'")}, nullptr,
            [](const Bindings& b) {
                return Process::sum(Process::sum(bp(b, "E"), bp(b, "E'")), bp(b, "E"));
            },
            [](const Bindings& b) { return Process::sum(bp(b, "E'"), bp(b, "E")); });
        add("STRONG_LEFT_SUM_MID_IDEMP", {P("E"), P("E'"), P("E''")}, nullptr,
            [](const Bindings& b) {
                return Process::sum(
                    Process::sum(Process::sum(bp(b, "E"), bp(b, "E'")), bp(b, "E''")),
                    bp(b, "E'"));
            },
            [](const Bindings& b) {
                return Process::sum(Process::sum(bp(b, "E"), bp(b, "E''")), bp(b, "E'"));
            });

        // par laws
        add("STRONG_PAR_IDENT_R", {P("E")}, nullptr,
            [=](const Bindings& b) { return Process::par(bp(b, "E"), nil); },
            [](const Bindings& b) { return bp(b, "E"); });
        add("STRONG_PAR_COMM", {P("E"), P("E'")}, nullptr,
            [](const Bindings& b) { return Process::par(bp(b, "E"), bp(b, "E'")); },
            [](const Bindings& b) { return Process::par(bp(b, "E'"), bp(b, "E")); });
        add("STRONG_PAR_IDENT_L", {P("E")}, nullptr,
            [=](const Bindings& b) { return Process::par(nil, bp(b, "E")); },
            [](const Bindings& b) { return bp(b, "E"); });
        add("STRONG_PAR_ASSOC", {P("E"), P("E'"), P("E''")}, nullptr,
            [](const Bindings& b) {
                return Process::par(Process::par(bp(b, "E"), bp(b, "E'")), bp(b, "E''"));
            },
            [](const Bindings& b) {
                return Process::par(bp(b, "E"), Process::par(bp(b, "E'"), bp(b, "E''")));
            });
        add("STRONG_PAR_PREF_TAU", {A("u"), P("E"), P("E'")}, nullptr,
            [=](const Bindings& b) {
                return Process::par(Process::prefix(ba(b, "u"), bp(b, "E")),
                                    Process::prefix(tau, bp(b, "E'")));
            },
            [=](const Bindings& b) {
                return Process::sum(
                    Process::prefix(ba(b, "u"),
                                    Process::par(bp(b, "E"), Process::prefix(tau, bp(b, "E'")))),
                    Process::prefix(tau, Process::par(Process::prefix(ba(b, "u"), bp(b, "E")),
                                                      bp(b, "E'"))));
            });
        add("STRONG_PAR_TAU_PREF", {A("u"), P("E"), P("E'")}, nullptr,
            [=](const Bindings& b) {
                return Process::par(Process::prefix(tau, bp(b, "E")),
                                    Process::prefix(ba(b, "u"), bp(b, "E'")));
            },
            [=](const Bindings& b) {
                return Process::sum(
                    Process::prefix(tau, Process::par(bp(b, "E"), Process::prefix(ba(b, "u"),
                                                                                  bp(b, "E'")))),
                    Process::prefix(ba(b, "u"),
                                    Process::par(Process::prefix(tau, bp(b, "E")), bp(b, "E'"))));
            });
        add("STRONG_PAR_TAU_TAU", {P("E"), P("E'")}, nullptr,
            [=](const Bindings& b) {
                return Process::par(Process::prefix(tau, bp(b, "E")),
                                    Process::prefix(tau, bp(b, "E'")));
            },
            [=](const Bindings& b) {
                return Process::sum(
                    Process::prefix(tau, Process::par(bp(b, "E"),
                                                      Process::prefix(tau, bp(b, "E'")))),
                    Process::prefix(tau, Process::par(Process::prefix(tau, bp(b, "E")),
                                                      bp(b, "E'"))));
            });
        add("STRONG_PAR_PREF_NO_SYNCR", {L("l"), L("l'"), P("E"), P("E'")},
            [](const Bindings& b) { return !(bl(b, "l") == compl_label(bl(b, "l'"))); },
            [](const Bindings& b) {
                return Process::par(Process::prefix(Action::visible(bl(b, "l")), bp(b, "E")),
                                    Process::prefix(Action::visible(bl(b, "l'")), bp(b, "E'")));
            },
            [](const Bindings& b) {
                Process lp = Process::prefix(Action::visible(bl(b, "l")), bp(b, "E"));
                Process rp = Process::prefix(Action::visible(bl(b, "l'")), bp(b, "E'"));
                return Process::sum(
                    Process::prefix(Action::visible(bl(b, "l")), Process::par(bp(b, "E"), rp)),
                    Process::prefix(Action::visible(bl(b, "l'")), Process::par(lp, bp(b, "E'"))));
            });
        add("STRONG_PAR_PREF_SYNCR", {L("l"), L("l'"), P("E"), P("E'")},
            [](const Bindings& b) { return bl(b, "l") == compl_label(bl(b, "l'")); },
            [](const Bindings& b) {
                return Process::par(Process::prefix(Action::visible(bl(b, "l")), bp(b, "E")),
                                    Process::prefix(Action::visible(bl(b, "l'")), bp(b, "E'")));
            },
            [=](const Bindings& b) {
                Process lp = Process::prefix(Action::visible(bl(b, "l")), bp(b, "E"));
                Process rp = Process::prefix(Action::visible(bl(b, "l'")), bp(b, "E'"));
                return Process::sum(
                    Process::sum(Process::prefix(Action::visible(bl(b, "l")),
                                                 Process::par(bp(b, "E"), rp)),
                                 Process::prefix(Action::visible(bl(b, "l'")),
                                                 Process::par(lp, bp(b, "E'")))),
                    Process::prefix(tau, Process::par(bp(b, "E"), bp(b, "E'"))));
            });

        // restriction laws
        add("STRONG_RESTR_NIL", {S("L")}, nullptr,
            [=](const Bindings& b) { return Process::restr(bs(b, "L"), nil); },
            [=](const Bindings&) { return nil; });
        add("STRONG_RESTR_SUM", {S("L"), P("E"), P("E'")}, nullptr,
            [](const Bindings& b) {
                return Process::restr(bs(b, "L"), Process::sum(bp(b, "E"), bp(b, "E'")));
            },
            [](const Bindings& b) {
                return Process::sum(Process::restr(bs(b, "L"), bp(b, "E")),
                                    Process::restr(bs(b, "L"), bp(b, "E'")));
            });
        add("STRONG_RESTR_PREFIX_TAU", {S("L"), P("E")}, nullptr,
            [=](const Bindings& b) {
                return Process::restr(bs(b, "L"), Process::prefix(tau, bp(b, "E")));
            },
            [=](const Bindings& b) {
                return Process::prefix(tau, Process::restr(bs(b, "L"), bp(b, "E")));
            });
        add("STRONG_RESTR_PR_LAB_NIL", {L("l"), S("L"), P("E")},
            [](const Bindings& b) {
                return name_in(bs(b, "L"), bl(b, "l")) ||
                       name_in(bs(b, "L"), compl_label(bl(b, "l")));
            },
            [](const Bindings& b) {
                return Process::restr(bs(b, "L"),
                                      Process::prefix(Action::visible(bl(b, "l")), bp(b, "E")));
            },
            [=](const Bindings&) { return nil; });
        add("STRONG_RESTR_PREFIX_LABEL", {L("l"), S("L"), P("E")},
            [](const Bindings& b) {
                return !name_in(bs(b, "L"), bl(b, "l")) &&
                       !name_in(bs(b, "L"), compl_label(bl(b, "l")));
            },
            [](const Bindings& b) {
                return Process::restr(bs(b, "L"),
                                      Process::prefix(Action::visible(bl(b, "l")), bp(b, "E")));
            },
            [](const Bindings& b) {
                return Process::prefix(Action::visible(bl(b, "l")),
                                       Process::restr(bs(b, "L"), bp(b, "E")));
            });

        // relabeling laws
        add("STRONG_RELAB_NIL", {R("rf")}, nullptr,
            [=](const Bindings& b) { return Process::relab(nil, br(b, "rf")); },
            [=](const Bindings&) { return nil; });
        add("STRONG_RELAB_SUM", {R("rf"), P("E"), P("E'")}, nullptr,
            [](const Bindings& b) {
                return Process::relab(Process::sum(bp(b, "E"), bp(b, "E'")), br(b, "rf"));
            },
            [](const Bindings& b) {
                return Process::sum(Process::relab(bp(b, "E"), br(b, "rf")),
                                    Process::relab(bp(b, "E'"), br(b, "rf")));
            });
        add("STRONG_RELAB_PREFIX", {A("u"), R("rf"), P("E")}, nullptr,
            [](const Bindings& b) {
                return Process::relab(Process::prefix(ba(b, "u"), bp(b, "E")), br(b, "rf"));
            },
            [](const Bindings& b) {
                return Process::prefix(apply_relabeling(br(b, "rf"), ba(b, "u")),
                                       Process::relab(bp(b, "E"), br(b, "rf")));
            });

        // recursion laws
        add("STRONG_UNFOLDING", {I("X"), P("E")}, nullptr,
            [](const Bindings& b) { return Process::rec(bi(b, "X"), bp(b, "E")); },
            [](const Bindings& b) {
                Process recx = Process::rec(bi(b, "X"), bp(b, "E"));
                return ccs_subst(bp(b, "E"), recx, bi(b, "X"));
            });
        add("STRONG_PREF_REC_EQUIV", {A("u"), A("v"), I("s")}, nullptr,
            [](const Bindings& b) {
                Process inner = Process::prefix(
                    ba(b, "v"),
                    Process::prefix(ba(b, "u"), Process::var(bi(b, "s"))));
                return Process::prefix(ba(b, "u"), Process::rec(bi(b, "s"), inner));
            },
            [](const Bindings& b) {
                Process inner = Process::prefix(
                    ba(b, "u"),
                    Process::prefix(ba(b, "v"), Process::var(bi(b, "s"))));
                return Process::rec(bi(b, "s"), inner);
            });
        add("STRONG_REC_ACT2", {A("u"), I("s")}, nullptr,
            [](const Bindings& b) {
                return Process::rec(
                    bi(b, "s"),
                    Process::prefix(ba(b, "u"),
                                    Process::prefix(ba(b, "u"), Process::var(bi(b, "s")))));
            },
            [](const Bindings& b) {
                return Process::rec(bi(b, "s"),
                                    Process::prefix(ba(b, "u"), Process::var(bi(b, "s"))));
            });
        return laws;
    }();
    return catalog;
}

inline const LawSchema& find_law(const std::string& name) {
    for (const auto& s : law_catalog())
        if (s.name == name) return s;
    throw CcsError(Errc::unknown_law, "no law named '" + name + "'");
}

/// Instantiates a named schema and verifies it with the strong
/// equivalence engine. A violated side condition (or an instance that is
/// not closed and weakly guarded) is reported in the instance, not
/// thrown.
inline LawInstance verify_law(const std::string& name, const Bindings& b,
                              const LtsLimits& limits = {}, const SemanticsConfig& cfg = {}) {
    const LawSchema& schema = find_law(name);
    LawInstance inst;
    inst.law_name = schema.name;
    inst.lhs = schema.lhs(b);
    inst.rhs = schema.rhs(b);
    bool cond = !schema.side_condition || schema.side_condition(b);
    bool wellformed = is_closed(inst.lhs) && is_closed(inst.rhs) &&
                      is_weakly_guarded(inst.lhs) && is_weakly_guarded(inst.rhs);
    inst.side_conditions_met = cond && wellformed;
    if (inst.side_conditions_met)
        inst.related = strong_equiv(inst.lhs, inst.rhs, limits, cfg).related;
    return inst;
}

} // namespace ccs

#endif // CCS_LAWS_HPP
