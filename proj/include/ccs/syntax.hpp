#ifndef CCS_SYNTAX_HPP
#define CCS_SYNTAX_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccs/errors.hpp"

namespace ccs {

// ---------------------------------------------------------------------------
// Names
// ---------------------------------------------------------------------------

/// Lexical class shared by label names and process identifiers:
/// [A-Za-z][A-Za-z0-9_-]*, with the parser keywords excluded so every
/// value in range survives a render/parse round trip.
inline bool is_valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return s != "tau" && s != "rec";
}

inline void check_name(const std::string& s, const char* what) {
    if (!is_valid_name(s))
        throw CcsError(Errc::invalid_name, std::string(what) + " '" + s + "' is not a valid name");
}

// ---------------------------------------------------------------------------
// Labels and actions
// ---------------------------------------------------------------------------

enum class Polarity : std::uint8_t { input, output };

/// A visible action name with a polarity; tau is excluded by construction.
class Label {
public:
    Label(Polarity pol, std::string name) : pol_(pol), name_(std::move(name)) {
        check_name(name_, "label");
    }

    static Label in(std::string name) { return Label(Polarity::input, std::move(name)); }
    static Label out(std::string name) { return Label(Polarity::output, std::move(name)); }

    Polarity polarity() const { return pol_; }
    bool is_input() const { return pol_ == Polarity::input; }
    bool is_output() const { return pol_ == Polarity::output; }
    const std::string& name() const { return name_; }

    friend bool operator==(const Label& a, const Label& b) {
        return a.pol_ == b.pol_ && a.name_ == b.name_;
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
    friend bool operator<(const Label& a, const Label& b) {
        if (a.pol_ != b.pol_) return a.pol_ < b.pol_;
        return a.name_ < b.name_;
    }

private:
    Polarity pol_;
    std::string name_;
};

/// Flips a label's polarity, keeping its name.
inline Label compl_label(const Label& l) {
    return Label(l.is_input() ? Polarity::output : Polarity::input, l.name());
}

/// tau or a visible label.
class Action {
public:
    static Action tau() { return Action(); }
    static Action visible(Label l) { return Action(std::move(l)); }
    static Action in(std::string name) { return visible(Label::in(std::move(name))); }
    static Action out(std::string name) { return visible(Label::out(std::move(name))); }

    bool is_tau() const { return !lab_.has_value(); }
    bool is_visible() const { return lab_.has_value(); }

    /// The carried label; only defined for visible actions.
    const Label& label() const {
        if (!lab_) throw CcsError(Errc::tau_has_no_label, "tau carries no label");
        return *lab_;
    }

    friend bool operator==(const Action& a, const Action& b) { return a.lab_ == b.lab_; }
    friend bool operator!=(const Action& a, const Action& b) { return !(a == b); }

private:
    Action() = default;
    explicit Action(Label l) : lab_(std::move(l)) {}
    std::optional<Label> lab_;
};

inline Label label_of(const Action& u) { return u.label(); }

/// tau maps to itself; a visible label maps to its complement.
inline Action compl_action(const Action& u) {
    return u.is_tau() ? Action::tau() : Action::visible(compl_label(u.label()));
}

/// Deterministic ordering used everywhere transitions are sorted:
/// inputs by name, then outputs by name, then tau last.
inline int action_rank(const Action& u) {
    if (u.is_tau()) return 2;
    return u.label().is_input() ? 0 : 1;
}

inline bool action_less(const Action& a, const Action& b) {
    int ra = action_rank(a), rb = action_rank(b);
    if (ra != rb) return ra < rb;
    if (ra == 2) return false;
    return a.label().name() < b.label().name();
}

inline std::string render_action(const Action& u) {
    if (u.is_tau()) return "tau";
    return u.label().is_input() ? u.label().name() : "'" + u.label().name();
}

// ---------------------------------------------------------------------------
// Relabeling
// ---------------------------------------------------------------------------

/// A finite substitution list [new/old, ...] denoting a total,
/// complement-respecting label map. Pairs are stored name-normalized
/// (polarity dropped); duplicate old names are rejected so the induced
/// function is well defined under first-match lookup.
class Relabeling {
public:
    Relabeling() = default;

    explicit Relabeling(const std::vector<std::pair<Label, Label>>& pairs) {
        for (const auto& [nw, old] : pairs) add(nw.name(), old.name());
    }

    /// Name-level constructor, e.g. {{"b","a"},{"d","c"}} for [b/a, d/c].
    static Relabeling of(const std::vector<std::pair<std::string, std::string>>& pairs) {
        Relabeling rf;
        for (const auto& [nw, old] : pairs) rf.add(nw, old);
        return rf;
    }

    const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }

    friend bool operator==(const Relabeling& a, const Relabeling& b) {
        return a.pairs_ == b.pairs_;
    }
    friend bool operator!=(const Relabeling& a, const Relabeling& b) { return !(a == b); }

private:
    void add(const std::string& nw, const std::string& old) {
        check_name(nw, "relabeling target");
        check_name(old, "relabeling source");
        for (const auto& p : pairs_) {
            if (p.second == old)
                throw CcsError(Errc::duplicate_relabeling,
                               "label '" + old + "' relabeled twice");
        }
        pairs_.emplace_back(nw, old);
    }

    std::vector<std::pair<std::string, std::string>> pairs_; // (new, old)
};

/// Applies a relabeling to an action. tau is fixed; a visible label is
/// looked up by name (first match) and keeps its polarity, which is what
/// complement closure forces; unmatched labels map to themselves.
inline Action apply_relabeling(const Relabeling& rf, const Action& u) {
    if (u.is_tau()) return u;
    const Label& l = u.label();
    for (const auto& [nw, old] : rf.pairs()) {
        if (old == l.name()) return Action::visible(Label(l.polarity(), nw));
    }
    return u;
}

// ---------------------------------------------------------------------------
// Process terms
// ---------------------------------------------------------------------------

/// Process variable / recursion binder name.
class Identifier {
public:
    explicit Identifier(std::string name) : name_(std::move(name)) {
        check_name(name_, "identifier");
    }
    const std::string& name() const { return name_; }

    friend bool operator==(const Identifier& a, const Identifier& b) { return a.name_ == b.name_; }
    friend bool operator!=(const Identifier& a, const Identifier& b) { return !(a == b); }
    friend bool operator<(const Identifier& a, const Identifier& b) { return a.name_ < b.name_; }

private:
    std::string name_;
};

enum class ProcKind : std::uint8_t { nil, prefix, sum, par, restr, relab, rec, var };

class Process;

namespace detail {
struct ProcNode;
using NodePtr = std::shared_ptr<const ProcNode>;
} // namespace detail

/// Immutable CCS term. Copies share structure; all operations are pure.
class Process {
public:
    static Process nil();
    static Process prefix(Action u, Process body);
    static Process sum(Process l, Process r);
    static Process par(Process l, Process r);
    static Process restr(std::vector<std::string> names, Process body);
    static Process relab(Process body, Relabeling rf);
    static Process rec(Identifier x, Process body);
    static Process var(Identifier x);

    ProcKind kind() const;
    const Action& action() const;                    // prefix
    const Process& body() const;                     // prefix, restr, relab, rec
    const Process& left() const;                     // sum, par
    const Process& right() const;                    // sum, par
    const std::vector<std::string>& restricted() const; // restr (sorted bare names)
    const Relabeling& relabeling() const;            // relab
    const std::string& var_name() const;             // rec, var

    std::size_t hash() const;

    friend bool operator==(const Process& a, const Process& b);
    friend bool operator!=(const Process& a, const Process& b) { return !(a == b); }

private:
    explicit Process(detail::NodePtr n) : node_(std::move(n)) {}
    detail::NodePtr node_;
};

namespace detail {

struct ProcNode {
    ProcKind kind;
    Action act = Action::tau();                 // prefix
    std::vector<Process> kids;                  // prefix/restr/relab/rec: [body]; sum/par: [l,r]
    std::vector<std::string> restr_names;       // restr, sorted + deduped
    Relabeling rf;                              // relab
    std::string var;                            // rec, var
    std::size_t hash = 0;
};

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

inline std::size_t node_hash(const ProcNode& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
    if (n.kind == ProcKind::prefix) {
        h = hash_mix(h, n.act.is_tau() ? 7 : (n.act.label().is_input() ? 11 : 13));
        if (n.act.is_visible()) h = hash_mix(h, hash_str(n.act.label().name()));
    }
    for (const auto& k : n.kids) h = hash_mix(h, k.hash());
    for (const auto& s : n.restr_names) h = hash_mix(h, hash_str(s));
    for (const auto& [nw, old] : n.rf.pairs()) {
        h = hash_mix(h, hash_str(nw));
        h = hash_mix(h, hash_str(old));
    }
    if (!n.var.empty()) h = hash_mix(h, hash_str(n.var));
    return h;
}

inline NodePtr make_node(ProcNode n) {
    n.hash = node_hash(n);
    return std::make_shared<const ProcNode>(std::move(n));
}

} // namespace detail

inline Process Process::nil() {
    static const detail::NodePtr n = detail::make_node({ProcKind::nil});
    return Process(n);
}

inline Process Process::prefix(Action u, Process body) {
    detail::ProcNode n{ProcKind::prefix};
    n.act = std::move(u);
    n.kids = {std::move(body)};
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::sum(Process l, Process r) {
    detail::ProcNode n{ProcKind::sum};
    n.kids = {std::move(l), std::move(r)};
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::par(Process l, Process r) {
    detail::ProcNode n{ProcKind::par};
    n.kids = {std::move(l), std::move(r)};
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::restr(std::vector<std::string> names, Process body) {
    for (const auto& s : names) check_name(s, "restricted label");
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    detail::ProcNode n{ProcKind::restr};
    n.kids = {std::move(body)};
    n.restr_names = std::move(names);
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::relab(Process body, Relabeling rf) {
    detail::ProcNode n{ProcKind::relab};
    n.kids = {std::move(body)};
    n.rf = std::move(rf);
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::rec(Identifier x, Process body) {
    detail::ProcNode n{ProcKind::rec};
    n.kids = {std::move(body)};
    n.var = x.name();
    return Process(detail::make_node(std::move(n)));
}

inline Process Process::var(Identifier x) {
    detail::ProcNode n{ProcKind::var};
    n.var = x.name();
    return Process(detail::make_node(std::move(n)));
}

inline ProcKind Process::kind() const { return node_->kind; }
inline const Action& Process::action() const { return node_->act; }
inline const Process& Process::body() const { return node_->kids[0]; }
inline const Process& Process::left() const { return node_->kids[0]; }
inline const Process& Process::right() const { return node_->kids[1]; }
inline const std::vector<std::string>& Process::restricted() const { return node_->restr_names; }
inline const Relabeling& Process::relabeling() const { return node_->rf; }
inline const std::string& Process::var_name() const { return node_->var; }
inline std::size_t Process::hash() const { return node_->hash; }

inline bool operator==(const Process& a, const Process& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind) return false;
    switch (x.kind) {
        case ProcKind::nil: return true;
        case ProcKind::prefix:
            return x.act == y.act && x.kids[0] == y.kids[0];
        case ProcKind::sum:
        case ProcKind::par:
            return x.kids[0] == y.kids[0] && x.kids[1] == y.kids[1];
        case ProcKind::restr:
            return x.restr_names == y.restr_names && x.kids[0] == y.kids[0];
        case ProcKind::relab:
            return x.rf == y.rf && x.kids[0] == y.kids[0];
        case ProcKind::rec:
            return x.var == y.var && x.kids[0] == y.kids[0];
        case ProcKind::var:
            return x.var == y.var;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Syntactic operations
// ---------------------------------------------------------------------------

/// Identifiers occurring in var positions not enclosed by a rec binding
/// the same identifier.
inline void free_vars_into(const Process& p, std::set<std::string>& bound,
                           std::set<std::string>& out) {
    switch (p.kind()) {
        case ProcKind::nil: return;
        case ProcKind::var:
            if (!bound.count(p.var_name())) out.insert(p.var_name());
            return;
        case ProcKind::prefix:
        case ProcKind::restr:
        case ProcKind::relab:
            free_vars_into(p.body(), bound, out);
            return;
        case ProcKind::sum:
        case ProcKind::par:
            free_vars_into(p.left(), bound, out);
            free_vars_into(p.right(), bound, out);
            return;
        case ProcKind::rec: {
            bool fresh = bound.insert(p.var_name()).second;
            free_vars_into(p.body(), bound, out);
            if (fresh) bound.erase(p.var_name());
            return;
        }
    }
}

inline std::set<Identifier> free_vars(const Process& p) {
    std::set<std::string> bound, names;
    free_vars_into(p, bound, names);
    std::set<Identifier> out;
    for (const auto& n : names) out.insert(Identifier(n));
    return out;
}

inline bool is_closed(const Process& p) {
    std::set<std::string> bound, names;
    free_vars_into(p, bound, names);
    return names.empty();
}

/// Capture-naive structural substitution [Ep / X] that stops at a rec
/// binding the same identifier. Inputs where the substitution would
/// capture a free variable of Ep under an inner rec are rejected rather
/// than silently renamed.
inline Process ccs_subst(const Process& e, const Process& ep, const Identifier& x) {
    std::set<std::string> bound, ep_free;
    free_vars_into(ep, bound, ep_free);

    struct Walker {
        const Process& ep;
        const std::string& x;
        const std::set<std::string>& ep_free;

        Process go(const Process& p) {
            switch (p.kind()) {
                case ProcKind::nil: return p;
                case ProcKind::var:
                    return p.var_name() == x ? ep : p;
                case ProcKind::prefix:
                    return Process::prefix(p.action(), go(p.body()));
                case ProcKind::sum:
                    return Process::sum(go(p.left()), go(p.right()));
                case ProcKind::par:
                    return Process::par(go(p.left()), go(p.right()));
                case ProcKind::restr:
                    return Process::restr(p.restricted(), go(p.body()));
                case ProcKind::relab:
                    return Process::relab(go(p.body()), p.relabeling());
                case ProcKind::rec: {
                    if (p.var_name() == x) return p;
                    if (ep_free.count(p.var_name()) && occurs_free(p.body()))
                        throw CcsError(Errc::capture_risk,
                                       "substituting under rec " + p.var_name() +
                                           " would capture a free variable");
                    return Process::rec(Identifier(p.var_name()), go(p.body()));
                }
            }
            return p;
        }

        bool occurs_free(const Process& p) {
            std::set<std::string> bound, names;
            free_vars_into(p, bound, names);
            return names.count(x) > 0;
        }
    };

    return Walker{ep, x.name(), ep_free}.go(e);
}

namespace detail {

/// Free identifiers of p that have at least one occurrence not guarded by
/// a prefix within p. Reports any rec binder whose variable is exposed.
inline std::set<std::string> exposed_vars(const Process& p, bool& guarded_ok) {
    switch (p.kind()) {
        case ProcKind::nil: return {};
        case ProcKind::var: return {p.var_name()};
        case ProcKind::prefix:
            exposed_vars(p.body(), guarded_ok); // still check inner recs
            return {};
        case ProcKind::sum:
        case ProcKind::par: {
            auto l = exposed_vars(p.left(), guarded_ok);
            auto r = exposed_vars(p.right(), guarded_ok);
            l.insert(r.begin(), r.end());
            return l;
        }
        case ProcKind::restr:
        case ProcKind::relab:
            return exposed_vars(p.body(), guarded_ok);
        case ProcKind::rec: {
            auto e = exposed_vars(p.body(), guarded_ok);
            if (e.count(p.var_name())) guarded_ok = false;
            e.erase(p.var_name());
            return e;
        }
    }
    return {};
}

} // namespace detail

/// True iff every rec-bound variable occurrence sits under at least one
/// prefix inside its binder's body, so unfolding terminates.
inline bool is_weakly_guarded(const Process& p) {
    bool ok = true;
    detail::exposed_vars(p, ok);
    return ok;
}

} // namespace ccs

#endif // CCS_SYNTAX_HPP
