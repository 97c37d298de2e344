#ifndef CCS_ERRORS_HPP
#define CCS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccs {

/// Classifies every failure the library can raise. CLI maps any of these
/// to exit code 2; tests match on the kind rather than the message text.
enum class Errc {
    invalid_name,
    duplicate_relabeling,
    tau_has_no_label,
    capture_risk,
    free_variable,
    unguarded_recursion,
    depth_exceeded,
    state_space_exceeded,
    edge_space_exceeded,
    not_a_prefix,
    empty_sum,
    not_prefixed_sum,
    unknown_law,
    parse,
};

inline const char* errc_name(Errc e) {
    switch (e) {
        case Errc::invalid_name: return "InvalidName";
        case Errc::duplicate_relabeling: return "DuplicateRelabeling";
        case Errc::tau_has_no_label: return "TauHasNoLabel";
        case Errc::capture_risk: return "CaptureRisk";
        case Errc::free_variable: return "FreeVariable";
        case Errc::unguarded_recursion: return "UnguardedRecursion";
        case Errc::depth_exceeded: return "DepthExceeded";
        case Errc::state_space_exceeded: return "StateSpaceExceeded";
        case Errc::edge_space_exceeded: return "EdgeSpaceExceeded";
        case Errc::not_a_prefix: return "NotAPrefix";
        case Errc::empty_sum: return "EmptySum";
        case Errc::not_prefixed_sum: return "NotPrefixedSum";
        case Errc::unknown_law: return "UnknownLaw";
        case Errc::parse: return "ParseError";
    }
    return "?";
}

class CcsError : public std::runtime_error {
public:
    CcsError(Errc kind, const std::string& msg)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + msg), kind_(kind) {}

    Errc kind() const { return kind_; }

private:
    Errc kind_;
};

/// Byte range into the original source text.
struct SourceSpan {
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;
};

class ParseError : public CcsError {
public:
    ParseError(SourceSpan span, const std::string& msg, std::vector<std::string> expected = {})
        : CcsError(Errc::parse, msg + " at " + std::to_string(span.start_offset) + ".." +
                                    std::to_string(span.end_offset)),
          span_(span), message_(msg), expected_(std::move(expected)) {}

    SourceSpan span() const { return span_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    SourceSpan span_;
    std::string message_;
    std::vector<std::string> expected_;
};

} // namespace ccs

#endif // CCS_ERRORS_HPP
