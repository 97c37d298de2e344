#ifndef CCS_GEN_HPP
#define CCS_GEN_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ccs/laws.hpp"

namespace ccs {

struct TermGenOptions {
    int max_depth = 3;
    std::vector<std::string> alphabet = {"a", "b", "c"};
    bool allow_rec = true;
};

/// Seeded generator for random terms and law bindings. mt19937_64 with
/// plain modulo keeps the streams identical across platforms, which the
/// golden and law-sampling tests rely on.
class TermGen {
public:
    using Options = TermGenOptions;

    explicit TermGen(std::uint64_t seed, Options opts = {})
        : eng_(seed), opts_(std::move(opts)) {}

    std::uint64_t pick(std::uint64_t n) { return eng_() % n; }
    bool coin() { return pick(2) == 0; }

    const Options& options() const { return opts_; }

    std::string name() { return opts_.alphabet[pick(opts_.alphabet.size())]; }

    Label label() {
        return Label(coin() ? Polarity::input : Polarity::output, name());
    }

    Action action() {
        std::uint64_t r = pick(2 * opts_.alphabet.size() + 1);
        if (r == 0) return Action::tau();
        return Action::visible(
            Label(r % 2 ? Polarity::input : Polarity::output, opts_.alphabet[(r - 1) / 2]));
    }

    std::vector<std::string> label_set() {
        std::vector<std::string> out;
        for (const auto& n : opts_.alphabet)
            if (coin()) out.push_back(n);
        if (out.empty()) out.push_back(opts_.alphabet[pick(opts_.alphabet.size())]);
        return out;
    }

    Relabeling relabeling() {
        std::vector<std::pair<Label, Label>> pairs;
        for (const auto& old : opts_.alphabet)
            if (coin()) pairs.emplace_back(Label::in(name()), Label::in(old));
        if (pairs.empty()) pairs.emplace_back(Label::in(name()), Label::in(opts_.alphabet[0]));
        return Relabeling(pairs);
    }

    /// Closed, weakly guarded process. Recursion bodies stay in the
    /// prefix/sum fragment over the bound variable so the state space of
    /// every generated term is finite.
    Process process() { return process(opts_.max_depth); }

    Process process(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(opts_.allow_rec ? 12 : 11)) {
            case 0: return Process::nil();
            case 1:
            case 2:
            case 3:
            case 4: return Process::prefix(action(), process(depth - 1));
            case 5:
            case 6: return Process::sum(process(depth - 1), process(depth - 1));
            case 7:
            case 8: return Process::par(process(depth - 1), process(depth - 1));
            case 9: return Process::restr(label_set(), process(depth - 1));
            case 10: return Process::relab(process(depth - 1), relabeling());
            default: {
                Identifier x("X");
                return Process::rec(x, rec_body(x, depth - 1));
            }
        }
    }

    /// Body for `rec x. ...`: a sum of prefixed branches whose tails end
    /// in `var x` or nil; every variable occurrence sits under a prefix.
    Process rec_body(const Identifier& x, int depth) {
        Process branch = Process::prefix(action(), rec_tail(x, depth));
        if (depth > 0 && coin())
            return Process::sum(branch, Process::prefix(action(), rec_tail(x, depth - 1)));
        return branch;
    }

    Process prefixed_sum(std::size_t max_summands) {
        std::vector<Process> parts;
        std::size_t n = 1 + pick(max_summands);
        for (std::size_t i = 0; i < n; ++i)
            parts.push_back(Process::prefix(action(), coin() ? Process::nil()
                                                             : Process::prefix(action(),
                                                                               Process::nil())));
        return sigma(parts);
    }

private:
    Process leaf() { return Process::nil(); }

    Process rec_tail(const Identifier& x, int depth) {
        std::uint64_t r = pick(3);
        if (r == 0) return Process::var(x);
        if (r == 1 || depth <= 0) return Process::nil();
        return Process::prefix(action(), rec_tail(x, depth - 1));
    }

    std::mt19937_64 eng_;
    Options opts_;
};

/// Random bindings for a law schema with its side condition satisfied,
/// by rejection.
inline Bindings sample_bindings(const LawSchema& schema, TermGen& gen) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Bindings b;
        if (schema.name == "STRONG_UNFOLDING") {
            Identifier x("X");
            b.emplace("X", x);
            b.emplace("E", gen.rec_body(x, gen.options().max_depth));
        } else {
            for (const auto& [key, kind] : schema.metavars) {
                switch (kind) {
                    case BindKind::process: b.emplace(key, gen.process()); break;
                    case BindKind::action: b.emplace(key, gen.action()); break;
                    case BindKind::label: b.emplace(key, gen.label()); break;
                    case BindKind::label_set: b.emplace(key, gen.label_set()); break;
                    case BindKind::relabeling: b.emplace(key, gen.relabeling()); break;
                    case BindKind::identifier: b.emplace(key, Identifier("X")); break;
                }
            }
        }
        if (!schema.side_condition || schema.side_condition(b)) return b;
    }
    throw std::logic_error("could not satisfy side condition for " + schema.name);
}

} // namespace ccs

#endif // CCS_GEN_HPP
