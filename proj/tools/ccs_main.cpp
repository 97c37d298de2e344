// ccs — command-line front end: parse terms, enumerate transitions,
// build/export LTSs, check equivalences, run the law suite, expand
// parallel compositions, and step processes interactively.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ccs/ccs.hpp"

namespace {

struct CliConfig {
    std::size_t max_states = 10000;
    std::size_t max_edges = 100000;
    int max_depth = 64;
    std::string format = "text";

    ccs::LtsLimits limits() const { return {max_states, max_edges}; }
    ccs::SemanticsConfig semantics() const { return {max_depth}; }
};

/// A positional term argument; "@path" loads a .ccs file (definitions
/// followed by a final expression).
ccs::Process load_term(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::runtime_error("cannot open file '" + arg.substr(1) + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ccs::parse_file_text(ss.str());
    }
    return ccs::parse(arg);
}

int cmd_trans(const CliConfig& cfg, const std::string& term_text) {
    ccs::Process p = load_term(term_text);
    ccs::TransitionSet ts = ccs::transitions(p, cfg.semantics());
    if (cfg.format == "json") {
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (const auto& t : ts)
            pairs.push_back({ccs::render_action(t.action), ccs::render(t.target)});
        std::cout << pairs.dump() << "\n";
        return 0;
    }
    std::cout << ccs::render(p) << "\n";
    for (const auto& t : ts)
        std::cout << "  --" << ccs::render_action(t.action) << "--> " << ccs::render(t.target)
                  << "\n";
    std::cout << "and no other transitions\n";
    return 0;
}

int cmd_lts(const CliConfig& cfg, const std::string& term_text) {
    ccs::Lts lts = ccs::build_lts(load_term(term_text), cfg.limits(), cfg.semantics());
    if (cfg.format == "dot") {
        std::cout << ccs::export_dot(lts);
    } else if (cfg.format == "json") {
        std::cout << ccs::export_json(lts) << "\n";
    } else {
        std::cout << "states: " << lts.num_states() << "\n";
        for (const auto& s : lts.states)
            std::cout << "  " << s.id << ": " << s.text << (s.id == lts.root ? "   (root)" : "")
                      << "\n";
        std::cout << "edges: " << lts.edges.size() << "\n";
        for (const auto& e : lts.edges)
            std::cout << "  " << e.from << " --" << ccs::render_action(e.action) << "--> " << e.to
                      << "\n";
    }
    return 0;
}

int cmd_eq(const CliConfig& cfg, const std::string& kind, const std::string& t1,
           const std::string& t2) {
    ccs::Process p = load_term(t1);
    ccs::Process q = load_term(t2);
    ccs::EquivReport rep;
    if (kind == "weak")
        rep = ccs::weak_equiv(p, q, cfg.limits(), cfg.semantics());
    else if (kind == "rooted")
        rep = ccs::rooted_weak_equiv(p, q, cfg.limits(), cfg.semantics());
    else
        rep = ccs::strong_equiv(p, q, cfg.limits(), cfg.semantics());

    if (cfg.format == "json") {
        std::cout << ccs::equiv_report_json(rep) << "\n";
    } else {
        std::cout << ccs::equiv_kind_name(rep.kind) << ": "
                  << (rep.related ? "related" : "not related") << "\n";
        if (rep.witness) {
            std::cout << "witness blocks:";
            for (const auto& blk : rep.witness->blocks) {
                std::cout << " {";
                for (std::size_t i = 0; i < blk.size(); ++i)
                    std::cout << (i ? "," : "") << blk[i];
                std::cout << "}";
            }
            std::cout << "\n";
        }
        if (rep.distinguishing) {
            std::cout << "distinguishing: state " << rep.distinguishing->state << " ("
                      << rep.joint.states[rep.distinguishing->state].text << "), action "
                      << ccs::render_action(rep.distinguishing->action) << "\n";
        }
    }
    return rep.related ? 0 : 1;
}

int cmd_expand(const CliConfig& cfg, const std::string& term_text, bool check, bool simplify) {
    ccs::Process p = load_term(term_text);
    if (p.kind() != ccs::ProcKind::par)
        throw ccs::CcsError(ccs::Errc::not_prefixed_sum,
                            "expand needs a parallel composition of prefixed sums");
    ccs::Process lhs = p.left();
    ccs::Process rhs = p.right();
    ccs::Process expanded = ccs::expand(lhs, rhs);
    if (simplify) expanded = ccs::simplify_nil_summands(expanded);
    std::cout << ccs::render(expanded) << "\n";
    if (check) {
        auto rep = ccs::strong_equiv(expanded, p, cfg.limits(), cfg.semantics());
        std::cout << "check: " << (rep.related ? "strongly bisimilar" : "NOT bisimilar") << "\n";
        return rep.related ? 0 : 1;
    }
    return 0;
}

int cmd_laws(const CliConfig& cfg, const std::string& law, int samples, std::uint64_t seed) {
    std::vector<const ccs::LawSchema*> todo;
    if (law.empty() || law == "all") {
        for (const auto& s : ccs::law_catalog()) todo.push_back(&s);
    } else {
        todo.push_back(&ccs::find_law(law)); // throws UnknownLaw -> exit 2
    }
    bool all_ok = true;
    for (const ccs::LawSchema* schema : todo) {
        ccs::TermGen gen(seed);
        int pass = 0;
        for (int i = 0; i < samples; ++i) {
            ccs::Bindings b = ccs::sample_bindings(*schema, gen);
            ccs::LawInstance inst =
                ccs::verify_law(schema->name, b, cfg.limits(), cfg.semantics());
            if (inst.side_conditions_met && inst.related) ++pass;
        }
        bool ok = pass == samples;
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << schema->name << "  " << pass << "/"
                  << samples << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_traces(const CliConfig& cfg, const std::string& term_text, int len) {
    ccs::Lts lts = ccs::build_lts(load_term(term_text), cfg.limits(), cfg.semantics());

    // ambient alphabet: the visible labels of the LTS
    std::vector<ccs::Label> alphabet;
    for (const auto& e : lts.edges) {
        if (e.action.is_tau()) continue;
        if (std::find(alphabet.begin(), alphabet.end(), e.action.label()) == alphabet.end())
            alphabet.push_back(e.action.label());
    }
    std::sort(alphabet.begin(), alphabet.end());

    std::vector<std::vector<ccs::Label>> found;
    std::vector<ccs::Label> cur;
    std::function<void(int)> go = [&](int remaining) {
        if (ccs::weak_trace_check(lts, cur)) found.push_back(cur);
        if (remaining == 0) return;
        for (const auto& l : alphabet) {
            cur.push_back(l);
            go(remaining - 1);
            cur.pop_back();
        }
    };
    go(len);

    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& tr : found) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (const auto& l : tr) row.push_back(ccs::render_action(ccs::Action::visible(l)));
            arr.push_back(std::move(row));
        }
        std::cout << arr.dump() << "\n";
    } else {
        for (const auto& tr : found) {
            std::cout << "trace:";
            for (const auto& l : tr)
                std::cout << " " << ccs::render_action(ccs::Action::visible(l));
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_repl(const CliConfig& cfg, const std::string& term_text) {
    std::vector<ccs::Process> history{load_term(term_text)};
    for (;;) {
        const ccs::Process& cur = history.back();
        std::cout << "state: " << ccs::render(cur) << "\n";
        ccs::TransitionSet ts = ccs::transitions(cur, cfg.semantics());
        if (ts.empty()) {
            std::cout << "  (no transitions)\n";
        } else {
            std::size_t i = 0;
            for (const auto& t : ts)
                std::cout << "  [" << i++ << "] --" << ccs::render_action(t.action) << "--> "
                          << ccs::render(t.target) << "\n";
        }
        std::cout << "> " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) break;
        std::istringstream ss(line);
        std::string token;
        ss >> token;
        if (token.empty()) continue;
        if (token == "q" || token == "quit") break;
        if (token == "u" || token == "undo") {
            if (history.size() > 1)
                history.pop_back();
            else
                std::cout << "nothing to undo\n";
            continue;
        }
        try {
            std::size_t idx = std::stoul(token);
            if (idx >= ts.size()) {
                std::cout << "no such transition\n";
                continue;
            }
            history.push_back(ts.items()[idx].target);
        } catch (const std::exception&) {
            std::cout << "enter a transition index, 'u' to undo or 'q' to quit\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CCS toolkit: SOS transitions, LTS export, bisimilarity, laws"};
    app.require_subcommand(1);

    CliConfig cfg;
    app.add_option("--max-states", cfg.max_states, "state limit for LTS construction")
        ->envname("CCS_MAX_STATES")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-edges", cfg.max_edges, "edge limit for LTS construction")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-depth", cfg.max_depth, "recursion unfold limit")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format: text|json|dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    std::string term1, term2, law_name;
    bool eq_strong = false, eq_weak = false, eq_rooted = false;
    bool expand_check = false, expand_simplify = false, laws_all = false;
    int samples = 50, trace_len = 3;
    std::uint64_t seed = 7;

    auto* ctrans = app.add_subcommand("trans", "enumerate all one-step transitions");
    ctrans->add_option("term", term1, "CCS term (or @file.ccs)")->required();

    auto* clts = app.add_subcommand("lts", "build and export the reachable LTS");
    clts->add_option("term", term1)->required();

    auto* ceq = app.add_subcommand("eq", "decide bisimilarity of two terms");
    ceq->add_option("term1", term1)->required();
    ceq->add_option("term2", term2)->required();
    ceq->add_flag("--strong", eq_strong, "strong bisimilarity (default)");
    ceq->add_flag("--weak", eq_weak, "weak bisimilarity");
    ceq->add_flag("--rooted", eq_rooted, "rooted weak bisimilarity");

    auto* cexpand = app.add_subcommand("expand", "rewrite p | q by the expansion law");
    cexpand->add_option("term", term1)->required();
    cexpand->add_flag("--check", expand_check, "re-verify the result with the strong checker");
    cexpand->add_flag("--simplify", expand_simplify, "drop nil padding summands");

    auto* claws = app.add_subcommand("laws", "verify the algebraic-law catalog on random instances");
    claws->add_flag("--all", laws_all, "verify every law (default)");
    claws->add_option("--law", law_name, "verify a single law by name");
    claws->add_option("--samples", samples, "instances per law");
    claws->add_option("--seed", seed, "random seed");

    auto* ctraces = app.add_subcommand("traces", "list weak traces up to a length bound");
    ctraces->add_option("term", term1)->required();
    ctraces->add_option("--len", trace_len, "maximum trace length");

    auto* crepl = app.add_subcommand("repl", "step a process interactively");
    crepl->add_option("term", term1)->required();

    // global flags are accepted on either side of the subcommand
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ctrans->parsed()) return cmd_trans(cfg, term1);
        if (clts->parsed()) return cmd_lts(cfg, term1);
        if (ceq->parsed()) {
            if (eq_weak + eq_strong + eq_rooted > 1) {
                std::cerr << "error: pick one of --strong/--weak/--rooted\n";
                return 2;
            }
            std::string kind = eq_weak ? "weak" : eq_rooted ? "rooted" : "strong";
            return cmd_eq(cfg, kind, term1, term2);
        }
        if (cexpand->parsed()) return cmd_expand(cfg, term1, expand_check, expand_simplify);
        if (claws->parsed()) {
            if (laws_all) law_name.clear();
            return cmd_laws(cfg, law_name, samples, seed);
        }
        if (ctraces->parsed()) return cmd_traces(cfg, term1, trace_len);
        if (crepl->parsed()) return cmd_repl(cfg, term1);
    } catch (const ccs::CcsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
