#pragma once

#include <stdexcept>
#include <string>

namespace factorforge {

enum class Errc {
    structural,       // arity / dimension / wiring misuse
    domain,           // value outside an operation's mathematical domain
    capacity,         // desk-scale oracle limits exceeded
    parse,            // malformed SLP text
    verification,     // probabilistic identity check failed
    not_a_true_split, // lifted candidate failed verification (expected during recombination)
    not_a_pure_power, // extract_root verification failed
    normalization_failure,
    unsupported,      // e.g. characteristic too small for the requested degree
    internal,         // invariant that normalize() etc. should have made impossible
};

class Error : public std::runtime_error {
public:
    Error(Errc kind, const std::string& msg, int line = -1)
        : std::runtime_error(msg), kind_(kind), line_(line) {}

    Errc kind() const { return kind_; }
    /// 1-based source line for parse errors, -1 otherwise.
    int line() const { return line_; }

private:
    Errc kind_;
    int line_;
};

[[noreturn]] inline void fail(Errc kind, const std::string& msg, int line = -1) {
    throw Error(kind, msg, line);
}

} // namespace factorforge
