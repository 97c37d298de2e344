#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ccs/equiv.hpp"
#include "ccs/gen.hpp"

using namespace ccs;

namespace {

// Synthetic LTS over n states with explicit edges; the algorithms under
// test only look at the graph.
Lts make_lts(std::size_t n, const std::vector<LtsEdge>& edges) {
    Lts l;
    for (std::size_t i = 0; i < n; ++i)
        l.states.push_back({i, Process::nil(), "s" + std::to_string(i)});
    l.edges = edges;
    l.root = 0;
    return l;
}

Lts random_lts(TermGen& gen, std::size_t max_states, std::size_t max_edges) {
    std::size_t n = 1 + gen.pick(max_states);
    std::vector<Action> acts{Action::in("a"), Action::out("a"), Action::in("b"), Action::tau()};
    std::vector<LtsEdge> edges;
    std::size_t m = gen.pick(max_edges + 1);
    for (std::size_t i = 0; i < m; ++i)
        edges.push_back({gen.pick(n), acts[gen.pick(acts.size())], gen.pick(n)});
    return make_lts(n, edges);
}

// PROPERTY_STAR deletion oracle: start from the full relation and drop
// pairs whose one-step transfer fails, until nothing changes.
std::set<std::pair<StateId, StateId>> naive_gfp(const Lts& l) {
    std::size_t n = l.num_states();
    auto by_src = l.edges_by_source();
    std::set<std::pair<StateId, StateId>> r;
    for (StateId s = 0; s < n; ++s)
        for (StateId t = 0; t < n; ++t) r.emplace(s, t);

    auto transfer = [&](StateId from, StateId other, bool first) {
        for (std::size_t ei : by_src[from]) {
            const auto& e = l.edges[ei];
            bool matched = false;
            for (std::size_t ej : by_src[other]) {
                const auto& f = l.edges[ej];
                if (!(f.action == e.action)) continue;
                if (first ? r.count({e.to, f.to}) : r.count({f.to, e.to})) {
                    matched = true;
                    break;
                }
            }
            if (!matched) return false;
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = r.begin(); it != r.end();) {
            auto [s, t] = *it;
            if (!transfer(s, t, true) || !transfer(t, s, false)) {
                it = r.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return r;
}

} // namespace

TEST_CASE("ccs::compute_eps") {
    SECTION("reflexive on every lts") {
        Lts l = build_lts(parse("a.tau.b.0"));
        Relation eps = compute_eps(l);
        for (const auto& s : l.states) CHECK(eps.contains(s.id, s.id));
    }

    SECTION("two tau steps compose") {
        Lts l = build_lts(parse("tau.tau.a.0"));
        Relation eps = compute_eps(l);
        StateId a0 = 0;
        for (const auto& s : l.states)
            if (s.text == "a.0") a0 = s.id;
        CHECK(eps.contains(l.root, a0));
    }

    SECTION("no tau edges means only the diagonal") {
        Lts l = build_lts(parse("a.0"));
        Relation eps = compute_eps(l);
        CHECK(eps.size() == l.num_states());
    }

    SECTION("matches an independent transitive-closure oracle") {
        TermGen gen(31);
        for (int i = 0; i < 100; ++i) {
            Lts l = random_lts(gen, 6, 12);
            std::size_t n = l.num_states();
            // Floyd-Warshall closure over tau edges
            std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
            for (std::size_t s = 0; s < n; ++s) reach[s][s] = true;
            for (const auto& e : l.edges)
                if (e.action.is_tau()) reach[e.from][e.to] = true;
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t s = 0; s < n; ++s)
                    for (std::size_t t = 0; t < n; ++t)
                        if (reach[s][k] && reach[k][t]) reach[s][t] = true;
            Relation eps = compute_eps(l);
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t) CHECK(eps.contains(s, t) == reach[s][t]);
        }
    }
}

TEST_CASE("ccs::saturate") {
    SECTION("tau.a.0 has a weak a-move from the root") {
        SaturatedLts sat = saturate(build_lts(parse("tau.a.0")));
        StateId nil_state = 0;
        for (const auto& s : sat.base.states)
            if (s.text == "0") nil_state = s.id;
        CHECK(sat.has_weak(sat.base.root, Label::in("a"), nil_state));
    }

    SECTION("zero-tau padding: base visible edges are weak edges") {
        TermGen gen(32);
        for (int i = 0; i < 60; ++i) {
            Lts l = random_lts(gen, 5, 10);
            SaturatedLts sat = saturate(l);
            for (const auto& e : l.edges)
                if (e.action.is_visible())
                    CHECK(sat.has_weak(e.from, e.action.label(), e.to));
        }
    }

    SECTION("a.0 has no weak tau move from the root") {
        SaturatedLts sat = saturate(build_lts(parse("a.0")));
        CHECK(sat.weak_tau_fwd[sat.base.root].empty());
    }

    SECTION("weak tau needs at least one tau step") {
        SaturatedLts sat = saturate(build_lts(parse("tau.a.0")));
        CHECK_FALSE(sat.weak_tau_fwd[sat.base.root].empty());
    }
}

TEST_CASE("ccs::strong_bisim_partition") {
    SECTION("E + 0 sits in the same block as E") {
        StateId rb = 0;
        Lts joint = disjoint_union(build_lts(parse("a.0 + 0")), build_lts(parse("a.0")), rb);
        Partition part = strong_bisim_partition(joint);
        CHECK(part.same_block(0, rb));
    }

    SECTION("branching-time distinguishes a.(b+c) from a.b + a.c") {
        StateId rb = 0;
        Lts joint = disjoint_union(build_lts(parse("a.(b.0 + c.0)")),
                                   build_lts(parse("a.b.0 + a.c.0")), rb);
        Partition part = strong_bisim_partition(joint);
        CHECK_FALSE(part.same_block(0, rb));
    }

    SECTION("agrees with the deletion oracle on random graphs") {
        TermGen gen(33);
        for (int i = 0; i < 150; ++i) {
            Lts l = random_lts(gen, 6, 12);
            Partition part = strong_bisim_partition(l);
            auto oracle = naive_gfp(l);
            for (StateId s = 0; s < l.num_states(); ++s)
                for (StateId t = 0; t < l.num_states(); ++t)
                    CHECK(part.same_block(s, t) == (oracle.count({s, t}) > 0));
        }
    }

    SECTION("the induced relation is a bisimulation and is maximal") {
        TermGen gen(34);
        for (int i = 0; i < 60; ++i) {
            Lts l = random_lts(gen, 5, 10);
            Partition part = strong_bisim_partition(l);
            Relation r = part.to_relation();
            CHECK(check_bisimulation(l, r));
            // adding any cross-block pair breaks it
            for (StateId s = 0; s < l.num_states(); ++s)
                for (StateId t = 0; t < l.num_states(); ++t) {
                    if (part.same_block(s, t)) continue;
                    auto pairs = r.pairs();
                    pairs.emplace_back(s, t);
                    CHECK_FALSE(check_bisimulation(l, Relation(std::move(pairs))));
                }
        }
    }
}

TEST_CASE("ccs::check_bisimulation") {
    Lts l = build_lts(parse("a.0"));
    SECTION("the empty relation is vacuously a bisimulation") {
        CHECK(check_bisimulation(l, Relation{}));
    }
    SECTION("the identity relation always works") {
        std::vector<std::pair<StateId, StateId>> pairs;
        for (const auto& s : l.states) pairs.emplace_back(s.id, s.id);
        CHECK(check_bisimulation(l, Relation(std::move(pairs))));
    }
    SECTION("an unmatched move is detected") {
        StateId rb = 0;
        Lts joint = disjoint_union(build_lts(parse("a.0")), build_lts(parse("b.0")), rb);
        CHECK_FALSE(check_bisimulation(joint, Relation({{joint.root, rb}})));
    }
}

TEST_CASE("ccs::strong_equiv") {
    SECTION("identical terms") {
        CHECK(strong_equiv(parse("a.0"), parse("a.0")).related);
    }
    SECTION("sum idempotence instance") {
        CHECK(strong_equiv(parse("a.0 + a.0"), parse("a.0")).related);
    }
    SECTION("order of prefixes matters") {
        EquivReport rep = strong_equiv(parse("a.b.0"), parse("b.a.0"));
        CHECK_FALSE(rep.related);
        REQUIRE(rep.distinguishing.has_value());
        CHECK((rep.distinguishing->state == rep.root_left ||
               rep.distinguishing->state == rep.root_right));
        CHECK(rep.distinguishing->action.is_visible());
    }
    SECTION("witness partition is reported when related") {
        EquivReport rep = strong_equiv(parse("a.0 + 0"), parse("a.0"));
        REQUIRE(rep.witness.has_value());
        CHECK(check_bisimulation(rep.joint, rep.witness->to_relation()));
    }
}

TEST_CASE("ccs::weak_equiv") {
    SECTION("tau.a.0 is weakly a.0, with a checkable witness") {
        EquivReport rep = weak_equiv(parse("tau.a.0"), parse("a.0"));
        CHECK(rep.related);
        REQUIRE(rep.witness.has_value());
        SaturatedLts sat = saturate(rep.joint);
        CHECK(check_weak_bisimulation(sat, rep.witness->to_relation()));
    }

    SECTION("every process is weakly itself") {
        TermGen gen(35, {3, {"a", "b"}, true});
        for (int i = 0; i < 40; ++i) {
            Process p = gen.process();
            CHECK(weak_equiv(p, p).related);
        }
    }

    SECTION("strongly related implies weakly related") {
        TermGen gen(36, {3, {"a", "b"}, true});
        for (int i = 0; i < 40; ++i) {
            Process p = gen.process();
            Process q = Process::sum(p, p); // ~ p by idempotence
            REQUIRE(strong_equiv(p, q).related);
            CHECK(weak_equiv(p, q).related);
        }
    }

    SECTION("the explicit witness from the derivation") {
        // {(tau.a.0, a.0), (a.0, a.0), (0, 0)} is a weak bisimulation
        StateId rb = 0;
        Lts joint = disjoint_union(build_lts(parse("tau.a.0")), build_lts(parse("a.0")), rb);
        // left states: 0 = tau.a.0, 1 = a.0, 2 = 0; right: rb = a.0, rb+1 = 0
        SaturatedLts sat = saturate(joint);
        Relation witness({{0, rb}, {1, rb}, {2, rb + 1}});
        CHECK(check_weak_bisimulation(sat, witness));
    }
}

TEST_CASE("ccs::rooted_weak_equiv") {
    SECTION("the initial tau is observable at the root") {
        EquivReport rep = rooted_weak_equiv(parse("tau.a.0"), parse("a.0"));
        CHECK_FALSE(rep.related);
        REQUIRE(rep.distinguishing.has_value());
        CHECK(rep.distinguishing->action == Action::tau());
    }
    SECTION("reflexive") {
        TermGen gen(37, {3, {"a", "b"}, true});
        for (int i = 0; i < 40; ++i) {
            Process p = gen.process();
            CHECK(rooted_weak_equiv(p, p).related);
        }
    }
    SECTION("inner taus are not observable") {
        CHECK(rooted_weak_equiv(parse("a.tau.b.0"), parse("a.b.0")).related);
    }
}

TEST_CASE("ccs::weak_trace_check") {
    SECTION("the empty trace always holds") {
        TermGen gen(38, {3, {"a", "b"}, true});
        for (int i = 0; i < 30; ++i) CHECK(weak_trace_check(gen.process(), {}));
    }
    CHECK(weak_trace_check(parse("tau.a.0"), {Label::in("a")}));
    CHECK_FALSE(weak_trace_check(parse("a.0"), {Label::in("b")}));
    CHECK(weak_trace_check(parse("a.tau.'b.0"), {Label::in("a"), Label::out("b")}));

    SECTION("weakly related roots have the same short traces") {
        std::vector<Label> alpha{Label::in("a"), Label::out("a"), Label::in("b")};
        TermGen gen(39, {3, {"a", "b"}, false});
        for (int i = 0; i < 25; ++i) {
            Process p = gen.process();
            Process q = Process::sum(p, p);
            REQUIRE(weak_equiv(p, q).related);
            std::vector<std::vector<Label>> traces{{}};
            for (const auto& l1 : alpha) {
                traces.push_back({l1});
                for (const auto& l2 : alpha) {
                    traces.push_back({l1, l2});
                    for (const auto& l3 : alpha) traces.push_back({l1, l2, l3});
                }
            }
            for (const auto& tr : traces)
                CHECK(weak_trace_check(p, tr) == weak_trace_check(q, tr));
        }
    }
}

TEST_CASE("ccs::equiv congruence properties") {
    TermGen gen(40, {2, {"a", "b"}, false});
    for (int i = 0; i < 25; ++i) {
        Process p = gen.process();
        Process q = Process::sum(p, Process::nil()); // ~ p
        Process r = gen.process();
        REQUIRE(strong_equiv(p, q).related);

        Action u = gen.action();
        CHECK(strong_equiv(Process::prefix(u, p), Process::prefix(u, q)).related);
        CHECK(strong_equiv(Process::sum(p, r), Process::sum(q, r)).related);
        CHECK(strong_equiv(Process::par(p, r), Process::par(q, r)).related);
        auto ls = gen.label_set();
        CHECK(strong_equiv(Process::restr(ls, p), Process::restr(ls, q)).related);
        auto rf = gen.relabeling();
        CHECK(strong_equiv(Process::relab(p, rf), Process::relab(q, rf)).related);
    }
}

TEST_CASE("ccs::equiv is an equivalence relation on roots") {
    TermGen gen(41, {2, {"a", "b"}, false});
    for (int i = 0; i < 20; ++i) {
        Process p = gen.process();
        Process q = Process::sum(Process::nil(), p);
        Process r = Process::sum(p, p);
        // symmetry
        CHECK(strong_equiv(p, q).related == strong_equiv(q, p).related);
        // transitivity over known-related chains
        REQUIRE(strong_equiv(p, q).related);
        REQUIRE(strong_equiv(q, r).related);
        CHECK(strong_equiv(p, r).related);
    }
}

TEST_CASE("ccs::equiv_report_json shape") {
    EquivReport rep = strong_equiv(parse("a.0"), parse("a.0 + 0"));
    std::string js = equiv_report_json(rep);
    CHECK(js.find("\"kind\":\"strong\"") != std::string::npos);
    CHECK(js.find("\"related\":true") != std::string::npos);
    CHECK(js.find("\"blocks\":[[") != std::string::npos);
    CHECK(js.find("\"distinguishing\":null") != std::string::npos);

    EquivReport bad = strong_equiv(parse("a.0"), parse("b.0"));
    std::string js2 = equiv_report_json(bad);
    CHECK(js2.find("\"related\":false") != std::string::npos);
    CHECK(js2.find("\"distinguishing\":{\"state\":") != std::string::npos);
}
