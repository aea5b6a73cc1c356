#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bresse/stepper.hpp"

namespace bresse {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& origin, std::size_t line, const std::string& what)
        : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnknownKey : public std::runtime_error {
public:
    UnknownKey(const std::string& origin, std::size_t line, const std::string& key)
        : std::runtime_error(origin + ":" + std::to_string(line) + ": unknown key '" + key +
                             "'"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class MissingKey : public std::runtime_error {
public:
    explicit MissingKey(const std::string& what) : std::runtime_error(what) {}
};

/// One term of an initial-profile expression: coef, coef*sin(k) or
/// coef*cos(k), where sin(k) stands for sin(k pi x / L).
struct InitialTerm {
    enum class Kind { constant, sine, cosine };
    Kind kind = Kind::constant;
    double coef = 0.0;
    int mode = 0;
};

struct InitialExpr {
    bool use_default = false;  // the literal word "default"
    std::vector<InitialTerm> terms;
};

/// Parses "default", "zero", or a sum like "0.5*cos(2) + sin(1) - 0.25".
InitialExpr parse_initial_expression(const std::string& text);

/// Evaluatable profile on [0, L] from parsed terms.
std::function<double(double)> build_initial_profile(const std::vector<InitialTerm>& terms,
                                                    double L);

/// Parses a sectioned key=value run description:
///   [params]  k1 k2 k3 rho1 rho2 l L        (all required)
///   [kernel]  family = exponential|power_law|none, a b (exponential),
///             a q (power_law)
///   [mesh]    s
///   [time]    dt T
///   [initial] phi0 phi1 psi0 psi1 w0 w1      (optional; expression grammar;
///             phi profiles must use sin terms only)
///   [flags]   include_m0 exponential_fastpath diagnostics_every
///             snapshots_every                 (optional)
/// Unknown sections or keys and malformed values are rejected with the
/// offending line number; parameter-domain violations surface the same way.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config(const std::string& path);

/// Built-in scenario presets ("equal-speed", "non-equal-speed").
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace bresse
