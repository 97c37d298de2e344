#ifndef CCS_PARSER_HPP
#define CCS_PARSER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccs/syntax.hpp"

// Textual syntax, CWB-style ASCII:
//
//   P ::= "0" | act "." P | P "+" P | P "|" P
//       | P "\" "{" name ("," name)* "}"
//       | P "[" name "/" name ("," name "/" name)* "]"
//       | "rec" IDENT "." P | IDENT | "(" P ")"
//   act ::= "tau" | name | "'" name
//
// Precedence: prefix > restriction/relabeling postfix > "|" > "+",
// with "+" and "|" left-associative and a rec body extending as far
// right as possible. "#" starts a comment running to end of line.

namespace ccs {

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace detail {

// Binding tightness, used for minimal parenthesization.
enum Prec : int { prec_rec = 0, prec_sum = 1, prec_par = 2, prec_postfix = 3, prec_prefix = 4 };

inline int prec_of(const Process& p) {
    switch (p.kind()) {
        case ProcKind::nil:
        case ProcKind::var: return prec_prefix + 1;
        case ProcKind::prefix: return prec_prefix;
        case ProcKind::restr:
        case ProcKind::relab: return prec_postfix;
        case ProcKind::par: return prec_par;
        case ProcKind::sum: return prec_sum;
        case ProcKind::rec: return prec_rec;
    }
    return 0;
}

inline void render_into(const Process& p, int min_prec, std::string& out) {
    bool parens = prec_of(p) < min_prec;
    if (parens) out += '(';
    switch (p.kind()) {
        case ProcKind::nil:
            out += '0';
            break;
        case ProcKind::var:
            out += p.var_name();
            break;
        case ProcKind::prefix:
            out += render_action(p.action());
            out += '.';
            render_into(p.body(), prec_prefix, out);
            break;
        case ProcKind::restr: {
            render_into(p.body(), prec_postfix, out);
            out += " \\ {";
            bool first = true;
            for (const auto& n : p.restricted()) {
                if (!first) out += ", ";
                out += n;
                first = false;
            }
            out += '}';
            break;
        }
        case ProcKind::relab: {
            render_into(p.body(), prec_postfix, out);
            out += '[';
            bool first = true;
            for (const auto& [nw, old] : p.relabeling().pairs()) {
                if (!first) out += ", ";
                out += nw;
                out += '/';
                out += old;
                first = false;
            }
            out += ']';
            break;
        }
        case ProcKind::par:
            render_into(p.left(), prec_par, out);
            out += " | ";
            render_into(p.right(), prec_par + 1, out);
            break;
        case ProcKind::sum:
            render_into(p.left(), prec_sum, out);
            out += " + ";
            render_into(p.right(), prec_sum + 1, out);
            break;
        case ProcKind::rec:
            out += "rec ";
            out += p.var_name();
            out += ". ";
            render_into(p.body(), prec_rec, out);
            break;
    }
    if (parens) out += ')';
}

} // namespace detail

/// Emits text that parse() maps back to a structurally identical term.
inline std::string render(const Process& p) {
    std::string out;
    detail::render_into(p, 0, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Process parse_term() {
        Process p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input", {"end of input"});
        return p;
    }

    /// A file: zero or more "name = P ;" bindings, then a final expression.
    /// Bindings are inlined by substitution, in order.
    Process parse_file() {
        std::vector<std::pair<Identifier, Process>> defs;
        for (;;) {
            skip_ws();
            std::size_t save = pos_;
            if (peek_name()) {
                std::string name = lex_name();
                skip_ws();
                if (eat('=')) {
                    Process body = expr();
                    skip_ws();
                    if (!eat(';')) fail("expected ';' after definition", {";"});
                    Process inlined = substitute_defs(body, defs);
                    defs.emplace_back(Identifier(name), inlined);
                    continue;
                }
            }
            pos_ = save;
            break;
        }
        Process main = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input", {"end of input"});
        return substitute_defs(main, defs);
    }

private:
    static Process substitute_defs(Process p,
                                   const std::vector<std::pair<Identifier, Process>>& defs) {
        // Later definitions shadow earlier ones, so substitute backwards.
        for (auto it = defs.rbegin(); it != defs.rend(); ++it)
            p = ccs_subst(p, it->second, it->first);
        return p;
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
        std::size_t end = std::min(pos_ + 1, text_.size());
        throw ParseError(SourceSpan{pos_, end}, msg, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool peek_name() {
        return std::isalpha(static_cast<unsigned char>(peek()));
    }

    std::string lex_name() {
        skip_ws();
        std::size_t start = pos_;
        if (!peek_name()) fail("expected a name", {"name"});
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
                ++pos_;
            else
                break;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    /// A name token that must denote a label (tau rejected here).
    std::string lex_label_name() {
        std::size_t start = pos_;
        std::string n = lex_name();
        if (n == "tau")
            throw ParseError(SourceSpan{start, pos_}, "tau is not a label", {"label name"});
        if (n == "rec")
            throw ParseError(SourceSpan{start, pos_}, "'rec' is reserved", {"label name"});
        return n;
    }

    // expr := "rec" IDENT "." expr | sumExpr
    Process expr() {
        skip_ws();
        std::size_t save = pos_;
        if (peek_name()) {
            std::string kw = lex_name();
            if (kw == "rec") {
                std::string x = lex_label_name();
                if (!eat('.')) fail("expected '.' after rec binder", {"."});
                return Process::rec(Identifier(x), expr());
            }
            pos_ = save;
        }
        return sum_expr();
    }

    Process sum_expr() {
        Process p = par_expr();
        while (eat('+')) p = Process::sum(p, par_expr());
        return p;
    }

    Process par_expr() {
        Process p = postfix_expr();
        while (eat('|')) p = Process::par(p, postfix_expr());
        return p;
    }

    Process postfix_expr() {
        Process p = prefix_expr();
        for (;;) {
            skip_ws();
            if (eat('\\')) {
                if (!eat('{')) fail("expected '{' after '\\'", {"{"});
                std::vector<std::string> names;
                names.push_back(lex_label_name());
                while (eat(',')) names.push_back(lex_label_name());
                if (!eat('}')) fail("expected '}'", {"}", ","});
                p = Process::restr(std::move(names), p);
            } else if (eat('[')) {
                std::vector<std::pair<Label, Label>> pairs;
                do {
                    std::string nw = lex_label_name();
                    if (!eat('/')) fail("expected '/' in relabeling pair", {"/"});
                    std::string old = lex_label_name();
                    pairs.emplace_back(Label::in(nw), Label::in(old));
                } while (eat(','));
                if (!eat(']')) fail("expected ']'", {"]", ","});
                p = Process::relab(p, Relabeling(pairs));
            } else {
                return p;
            }
        }
    }

    // prefixExpr := act "." prefixExpr | primary
    Process prefix_expr() {
        skip_ws();
        if (peek() == '\'') {
            ++pos_;
            std::string n = lex_label_name();
            if (!eat('.')) fail("expected '.' after action", {"."});
            return Process::prefix(Action::out(n), prefix_expr());
        }
        if (peek_name()) {
            std::size_t save = pos_;
            std::string n = lex_name();
            if (n == "rec") {
                pos_ = save;
                fail("rec must be parenthesized here", {"(", "0", "action"});
            }
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                Action u = (n == "tau") ? Action::tau() : Action::in(n);
                return Process::prefix(u, prefix_expr());
            }
            if (n == "tau") {
                pos_ = save;
                fail("tau is an action, not a process", {"."});
            }
            return Process::var(Identifier(n)); // free or rec-bound variable
        }
        return primary();
    }

    Process primary() {
        skip_ws();
        if (eat('0')) return Process::nil();
        if (eat('(')) {
            Process p = expr();
            if (!eat(')')) fail("expected ')'", {")"});
            return p;
        }
        fail("expected a process", {"0", "(", "action", "identifier", "rec"});
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a single CCS term.
inline Process parse(std::string_view text) {
    return detail::Parser(text).parse_term();
}

/// Parses a .ccs file body: "name = P ;" bindings followed by a final
/// expression; bindings are inlined by substitution.
inline Process parse_file_text(std::string_view text) {
    return detail::Parser(text).parse_file();
}

} // namespace ccs

#endif // CCS_PARSER_HPP
