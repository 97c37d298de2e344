#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "ccs/gen.hpp"
#include "ccs/laws.hpp"

using namespace ccs;

namespace {

std::set<std::pair<std::string, std::string>> trans_set(const Process& p) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& t : transitions(p)) out.emplace(render_action(t.action), render(t.target));
    return out;
}

} // namespace

TEST_CASE("ccs::pref accessors") {
    CHECK(pref_act(parse("a.0")) == Action::in("a"));
    CHECK(pref_proc(parse("tau.b.0")) == parse("b.0"));
    CHECK(is_prefix(parse("a.0")));
    CHECK_FALSE(is_prefix(Process::nil()));
    CHECK_FALSE(is_prefix(parse("a.0 + b.0")));
    CHECK_THROWS_MATCHES(pref_act(Process::nil()), CcsError,
                         Catch::Matchers::Predicate<CcsError>([](const CcsError& e) {
                             return e.kind() == Errc::not_a_prefix;
                         }));
}

TEST_CASE("ccs::sigma") {
    Process p = parse("a.0"), q = parse("b.0"), r = parse("c.0");
    CHECK(sigma({p}) == p);
    CHECK(sigma({p, q}) == Process::sum(p, q));
    CHECK(sigma({p, q, r}) == Process::sum(Process::sum(p, q), r));
    CHECK_THROWS_MATCHES(sigma({}), CcsError,
                         Catch::Matchers::Predicate<CcsError>([](const CcsError& e) {
                             return e.kind() == Errc::empty_sum;
                         }));
}

TEST_CASE("ccs::sync") {
    Process P = parse("a.0"), Q = parse("b.0");
    PrefixedSummand in_b{Action::in("b"), Q};
    PrefixedSummand out_a{Action::out("a"), Q};

    CHECK(sync(Action::tau(), P, {in_b}) == Process::nil());
    CHECK(sync(Action::in("a"), P, {out_a}) ==
          Process::prefix(Action::tau(), Process::par(P, Q)));
    CHECK(sync(Action::in("a"), P, {in_b}) == Process::nil());

    SECTION("a tau summand never synchronizes") {
        CHECK(sync(Action::in("a"), P, {{Action::tau(), Q}}) == Process::nil());
    }

    SECTION("higher indices come first, padding only at the base") {
        // two firing summands: tau.(P|Q1) + tau.(P|Q0)
        PrefixedSummand s0{Action::out("a"), parse("0")};
        PrefixedSummand s1{Action::out("a"), parse("c.0")};
        Process got = sync(Action::in("a"), P, {s0, s1});
        Process want = Process::sum(Process::prefix(Action::tau(), Process::par(P, s1.body)),
                                    Process::prefix(Action::tau(), Process::par(P, s0.body)));
        CHECK(got == want);
    }
}

TEST_CASE("ccs::all_sync") {
    Process nil = Process::nil();
    SECTION("base clause delegates to sync") {
        CHECK(all_sync({{Action::in("a"), nil}}, {{Action::out("a"), nil}}) ==
              Process::prefix(Action::tau(), Process::par(nil, nil)));
        CHECK(all_sync({{Action::in("a"), nil}}, {{Action::in("b"), nil}}) == Process::nil());
    }

    SECTION("two complementary pairs leave two taus plus padding") {
        std::vector<PrefixedSummand> fs{{Action::in("a"), nil}, {Action::out("b"), nil}};
        std::vector<PrefixedSummand> gs{{Action::out("a"), nil}, {Action::in("b"), nil}};
        Process tau_nil = Process::prefix(Action::tau(), Process::par(nil, nil));
        Process want = Process::sum(tau_nil, Process::sum(tau_nil, Process::nil()));
        CHECK(all_sync(fs, gs) == want);
    }
}

TEST_CASE("ccs::sigma/sync/all_sync transition characterizations") {
    TermGen gen(51);
    for (int i = 0; i < 80; ++i) {
        // random prefixed summand lists, sizes 1..4
        auto mk = [&](std::size_t n) {
            std::vector<PrefixedSummand> out;
            for (std::size_t k = 0; k < n; ++k)
                out.push_back({gen.action(), gen.coin() ? Process::nil() : parse("a.0")});
            return out;
        };
        auto fs = mk(1 + gen.pick(4));
        auto gs = mk(1 + gen.pick(4));

        // sigma: moves are exactly the union of the summands' moves
        {
            std::vector<Process> terms;
            for (const auto& f : fs) terms.push_back(f.to_process());
            std::set<std::pair<std::string, std::string>> want;
            for (const auto& t : terms) {
                auto s = trans_set(t);
                want.insert(s.begin(), s.end());
            }
            CHECK(trans_set(sigma(terms)) == want);
        }

        // sync: exactly the tau moves to P | q_j over complementary labels
        {
            Action u = gen.action();
            Process P = gen.coin() ? Process::nil() : parse("b.0");
            std::set<std::pair<std::string, std::string>> want;
            if (u.is_visible()) {
                for (const auto& g : gs)
                    if (g.action.is_visible() && g.action.label() == compl_label(u.label()))
                        want.emplace("tau", render(Process::par(P, g.body)));
            }
            CHECK(trans_set(sync(u, P, gs)) == want);
        }

        // all_sync: tau moves to p_k | q_k' over complementary index pairs
        {
            std::set<std::pair<std::string, std::string>> want;
            for (const auto& f : fs)
                for (const auto& g : gs)
                    if (f.action.is_visible() && g.action.is_visible() &&
                        g.action.label() == compl_label(f.action.label()))
                        want.emplace("tau", render(Process::par(f.body, g.body)));
            CHECK(trans_set(all_sync(fs, gs)) == want);
        }
    }
}

TEST_CASE("ccs::expand") {
    SECTION("the handshake example") {
        Process got = expand(parse("a.0"), parse("'a.0"));
        CHECK(render(got) == "a.(0 | 'a.0) + 'a.(a.0 | 0) + tau.(0 | 0)");
    }

    SECTION("no synchronization leaves nil padding") {
        Process got = expand(parse("a.0"), parse("b.0"));
        CHECK(render(got) == "a.(0 | b.0) + b.(a.0 | 0) + 0");
        CHECK(strong_equiv(got, parse("a.0 | b.0")).related);
        CHECK(render(simplify_nil_summands(got)) == "a.(0 | b.0) + b.(a.0 | 0)");
    }

    SECTION("expansion is strongly bisimilar to the parallel composition") {
        TermGen gen(52);
        for (int i = 0; i < 60; ++i) {
            Process p = gen.prefixed_sum(4);
            Process q = gen.prefixed_sum(4);
            CAPTURE(render(p), render(q));
            CHECK(strong_equiv(expand(p, q), Process::par(p, q)).related);
        }
    }

    SECTION("non-prefixed sums are rejected") {
        CHECK_THROWS_MATCHES(expand(parse("a.0 + (b.0 | c.0)"), parse("a.0")), CcsError,
                             Catch::Matchers::Predicate<CcsError>([](const CcsError& e) {
                                 return e.kind() == Errc::not_prefixed_sum;
                             }));
    }
}

TEST_CASE("ccs::law_catalog contents") {
    const auto& laws = law_catalog();
    CHECK(laws.size() == 28);

    std::set<std::string> names;
    for (const auto& l : laws) names.insert(l.name);
    CHECK(names.size() == 28);

    // spot-check the five families
    for (const char* n :
         {"STRONG_SUM_IDENT_R", "STRONG_SUM_IDEMP", "STRONG_SUM_COMM", "STRONG_SUM_IDENT_L",
          "STRONG_SUM_ASSOC_R", "STRONG_SUM_ASSOC_L", "STRONG_SUM_MID_IDEMP",
          "STRONG_LEFT_SUM_MID_IDEMP", "STRONG_PAR_IDENT_R", "STRONG_PAR_COMM",
          "STRONG_PAR_IDENT_L", "STRONG_PAR_ASSOC", "STRONG_PAR_PREF_TAU",
          "STRONG_PAR_TAU_PREF", "STRONG_PAR_TAU_TAU", "STRONG_PAR_PREF_NO_SYNCR",
          "STRONG_PAR_PREF_SYNCR", "STRONG_RESTR_NIL", "STRONG_RESTR_SUM",
          "STRONG_RESTR_PREFIX_TAU", "STRONG_RESTR_PR_LAB_NIL", "STRONG_RESTR_PREFIX_LABEL",
          "STRONG_RELAB_NIL", "STRONG_RELAB_SUM", "STRONG_RELAB_PREFIX", "STRONG_UNFOLDING",
          "STRONG_PREF_REC_EQUIV", "STRONG_REC_ACT2"})
        CHECK(names.count(n) == 1);
}

TEST_CASE("ccs::verify_law examples") {
    SECTION("E + nil ~ E") {
        Bindings b{{"E", parse("a.0")}};
        LawInstance inst = verify_law("STRONG_SUM_IDENT_R", b);
        CHECK(inst.side_conditions_met);
        CHECK(inst.related);
        CHECK(inst.lhs == parse("a.0 + 0"));
    }

    SECTION("restricting a guarding label kills the process") {
        Bindings b{{"l", Label::in("a")},
                   {"L", std::vector<std::string>{"a"}},
                   {"E", parse("b.0")}};
        LawInstance inst = verify_law("STRONG_RESTR_PR_LAB_NIL", b);
        CHECK(inst.side_conditions_met);
        CHECK(inst.related);
    }

    SECTION("unfolding") {
        Identifier x("X");
        Bindings b{{"X", x}, {"E", Process::prefix(Action::in("a"), Process::var(x))}};
        LawInstance inst = verify_law("STRONG_UNFOLDING", b);
        CHECK(inst.side_conditions_met);
        CHECK(inst.related);
    }

    SECTION("violated side conditions are reported, not thrown") {
        Bindings b{{"l", Label::in("a")},
                   {"l'", Label::in("b")},
                   {"E", parse("0")},
                   {"E'", parse("0")}};
        LawInstance inst = verify_law("STRONG_PAR_PREF_SYNCR", b);
        CHECK_FALSE(inst.side_conditions_met);
    }

    SECTION("unknown laws are an error") {
        CHECK_THROWS_MATCHES(verify_law("STRONG_NONSENSE", {}), CcsError,
                             Catch::Matchers::Predicate<CcsError>([](const CcsError& e) {
                                 return e.kind() == Errc::unknown_law;
                             }));
    }
}

TEST_CASE("ccs::verify_law random instances across the catalog") {
    for (const auto& schema : law_catalog()) {
        TermGen gen(53);
        for (int i = 0; i < 10; ++i) {
            Bindings b = sample_bindings(schema, gen);
            LawInstance inst = verify_law(schema.name, b);
            CAPTURE(schema.name, render(inst.lhs), render(inst.rhs));
            REQUIRE(inst.side_conditions_met);
            CHECK(inst.related);
        }
    }
}
