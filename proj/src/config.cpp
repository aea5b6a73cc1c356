#include "bresse/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bresse {

namespace {

const double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

[[noreturn]] void expr_fail(const std::string& text, std::size_t pos, const std::string& why) {
    throw std::invalid_argument("bad initial-data expression '" + text + "' (column " +
                                std::to_string(pos + 1) + "): " + why);
}

/// sin(3) / cos(12): name already matched, parses the "(k)" part.
InitialTerm parse_mode_call(const std::string& s, std::size_t& i, InitialTerm::Kind kind,
                            double coef) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '(') expr_fail(s, i, "expected '(' after sin/cos");
    ++i;
    skip_ws(s, i);
    char* end = nullptr;
    long mode = std::strtol(s.c_str() + i, &end, 10);
    if (end == s.c_str() + i) expr_fail(s, i, "expected a mode number inside sin(...)/cos(...)");
    if (mode < 1) expr_fail(s, i, "mode numbers start at 1");
    i = static_cast<std::size_t>(end - s.c_str());
    skip_ws(s, i);
    if (i >= s.size() || s[i] != ')') expr_fail(s, i, "expected ')' after the mode number");
    ++i;
    InitialTerm term;
    term.kind = kind;
    term.coef = coef;
    term.mode = static_cast<int>(mode);
    return term;
}

bool starts_with_word(const std::string& s, std::size_t i, const char* word) {
    std::size_t n = std::char_traits<char>::length(word);
    return s.compare(i, n, word) == 0;
}

InitialTerm parse_term(const std::string& s, std::size_t& i) {
    skip_ws(s, i);
    double sign = 1.0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        if (s[i] == '-') sign = -1.0;
        ++i;
        skip_ws(s, i);
    }
    if (starts_with_word(s, i, "sin")) {
        i += 3;
        return parse_mode_call(s, i, InitialTerm::Kind::sine, sign);
    }
    if (starts_with_word(s, i, "cos")) {
        i += 3;
        return parse_mode_call(s, i, InitialTerm::Kind::cosine, sign);
    }
    char* end = nullptr;
    double value = std::strtod(s.c_str() + i, &end);
    if (end == s.c_str() + i) expr_fail(s, i, "expected a number or sin(k)/cos(k)");
    if (!std::isfinite(value)) expr_fail(s, i, "coefficient is not finite");
    i = static_cast<std::size_t>(end - s.c_str());
    skip_ws(s, i);
    if (i < s.size() && s[i] == '*') {
        ++i;
        skip_ws(s, i);
        InitialTerm::Kind kind;
        if (starts_with_word(s, i, "sin")) {
            kind = InitialTerm::Kind::sine;
        } else if (starts_with_word(s, i, "cos")) {
            kind = InitialTerm::Kind::cosine;
        } else {
            expr_fail(s, i, "expected sin(k) or cos(k) after '*'");
        }
        i += 3;
        return parse_mode_call(s, i, kind, sign * value);
    }
    InitialTerm term;
    term.kind = InitialTerm::Kind::constant;
    term.coef = sign * value;
    return term;
}

}  // namespace

InitialExpr parse_initial_expression(const std::string& text) {
    const std::string body = trim(text);
    if (body.empty()) throw std::invalid_argument("empty initial-data expression");
    const std::string word = lower(body);
    InitialExpr expr;
    if (word == "default") {
        expr.use_default = true;
        return expr;
    }
    if (word == "zero") return expr;  // no terms: identically zero

    std::size_t i = 0;
    expr.terms.push_back(parse_term(body, i));
    for (;;) {
        skip_ws(body, i);
        if (i >= body.size()) break;
        if (body[i] != '+' && body[i] != '-') {
            expr_fail(body, i, "expected '+' or '-' between terms");
        }
        expr.terms.push_back(parse_term(body, i));
    }
    return expr;
}

std::function<double(double)> build_initial_profile(const std::vector<InitialTerm>& terms,
                                                    double L) {
    return [terms, L](double x) {
        double acc = 0.0;
        for (const InitialTerm& t : terms) {
            switch (t.kind) {
                case InitialTerm::Kind::constant:
                    acc += t.coef;
                    break;
                case InitialTerm::Kind::sine:
                    acc += t.coef * std::sin(t.mode * kPi * x / L);
                    break;
                case InitialTerm::Kind::cosine:
                    acc += t.coef * std::cos(t.mode * kPi * x / L);
                    break;
            }
        }
        return acc;
    };
}

namespace {

struct RawEntry {
    std::string value;
    std::size_t line = 0;
};

using RawConfig = std::map<std::string, RawEntry>;  // "section.key" -> entry

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> table = {
        {"params", {"k1", "k2", "k3", "rho1", "rho2", "l", "L"}},
        {"kernel", {"family", "a", "b", "q"}},
        {"mesh", {"s"}},
        {"time", {"dt", "T"}},
        {"initial", {"phi0", "phi1", "psi0", "psi1", "w0", "w1"}},
        {"flags",
         {"include_m0", "exponential_fastpath", "diagnostics_every", "snapshots_every"}},
    };
    return table;
}

RawConfig scan_lines(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ParseError(origin, lineno, "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (known_keys().count(section) == 0) {
                throw ParseError(origin, lineno, "unknown section '" + section + "'");
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin, lineno, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(origin, lineno, "empty key");
        if (value.empty()) throw ParseError(origin, lineno, "empty value for key '" + key + "'");
        if (section.empty()) {
            throw ParseError(origin, lineno, "key '" + key + "' appears outside any section");
        }
        if (known_keys().at(section).count(key) == 0) {
            throw UnknownKey(origin, lineno, section + "." + key);
        }
        const std::string full = section + "." + key;
        if (raw.count(full) != 0) {
            throw ParseError(origin, lineno,
                             "duplicate key '" + key + "' in section [" + section + "]");
        }
        raw[full] = RawEntry{value, lineno};
    }
    return raw;
}

const RawEntry& require(const RawConfig& raw, const std::string& origin,
                        const std::string& section, const std::string& key) {
    auto it = raw.find(section + "." + key);
    if (it == raw.end()) {
        throw MissingKey(origin + ": missing key '" + key + "' in section [" + section + "]");
    }
    return it->second;
}

const RawEntry* find(const RawConfig& raw, const std::string& section, const std::string& key) {
    auto it = raw.find(section + "." + key);
    return it == raw.end() ? nullptr : &it->second;
}

double parse_double(const RawEntry& e, const std::string& origin, const std::string& key) {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end != e.value.c_str() + e.value.size() || e.value.empty()) {
        throw ParseError(origin, e.line, "value for '" + key + "' is not a number: '" + e.value +
                                             "'");
    }
    if (!std::isfinite(v)) {
        throw ParseError(origin, e.line, "value for '" + key + "' is not finite");
    }
    return v;
}

double parse_positive(const RawEntry& e, const std::string& origin, const std::string& key) {
    const double v = parse_double(e, origin, key);
    if (v <= 0.0) {
        throw ParseError(origin, e.line,
                         "'" + key + "' must be positive (got " + e.value + ")");
    }
    return v;
}

std::size_t parse_count(const RawEntry& e, const std::string& origin, const std::string& key) {
    char* end = nullptr;
    const long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (end != e.value.c_str() + e.value.size() || e.value.empty()) {
        throw ParseError(origin, e.line,
                         "value for '" + key + "' is not an integer: '" + e.value + "'");
    }
    if (v < 0) {
        throw ParseError(origin, e.line, "'" + key + "' must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

bool parse_bool(const RawEntry& e, const std::string& origin, const std::string& key) {
    const std::string v = lower(e.value);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ParseError(origin, e.line,
                     "value for '" + key + "' must be true or false (got '" + e.value + "')");
}

void forbid(const RawConfig& raw, const std::string& origin, const std::string& section,
            const std::string& key, const std::string& why) {
    if (const RawEntry* e = find(raw, section, key)) {
        throw ParseError(origin, e->line, "key '" + key + "' " + why);
    }
}

Kernel parse_kernel(const RawConfig& raw, const std::string& origin) {
    const RawEntry& fam = require(raw, origin, "kernel", "family");
    const std::string family = lower(fam.value);
    if (family == "exponential") {
        forbid(raw, origin, "kernel", "q", "only applies to the power_law family");
        const double a = parse_positive(require(raw, origin, "kernel", "a"), origin, "a");
        const double b = parse_positive(require(raw, origin, "kernel", "b"), origin, "b");
        return Kernel::exponential(a, b);
    }
    if (family == "power_law") {
        forbid(raw, origin, "kernel", "b", "only applies to the exponential family");
        const double a = parse_positive(require(raw, origin, "kernel", "a"), origin, "a");
        const RawEntry& qe = require(raw, origin, "kernel", "q");
        const double q = parse_double(qe, origin, "q");
        if (q <= 1.0) {
            throw ParseError(origin, qe.line,
                             "power-law exponent q must exceed 1 (got " + qe.value + ")");
        }
        return Kernel::power_law(a, q);
    }
    if (family == "none") {
        forbid(raw, origin, "kernel", "a", "is not used by the none family");
        forbid(raw, origin, "kernel", "b", "is not used by the none family");
        forbid(raw, origin, "kernel", "q", "is not used by the none family");
        return Kernel::none();
    }
    throw ParseError(origin, fam.line,
                     "unknown kernel family '" + fam.value +
                         "' (expected exponential, power_law, or none)");
}

void apply_initial_key(const RawConfig& raw, const std::string& origin, const std::string& key,
                       double L, bool sine_only, std::function<double(double)>& slot) {
    const RawEntry* e = find(raw, "initial", key);
    if (!e) return;
    InitialExpr expr;
    try {
        expr = parse_initial_expression(e->value);
    } catch (const std::invalid_argument& err) {
        throw ParseError(origin, e->line, err.what());
    }
    if (expr.use_default) return;
    if (sine_only) {
        for (const InitialTerm& t : expr.terms) {
            if (t.kind != InitialTerm::Kind::sine) {
                throw ParseError(origin, e->line,
                                 "'" + key +
                                     "' must vanish at both ends: use sin terms only");
            }
        }
    }
    slot = build_initial_profile(expr.terms, L);
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    const RawConfig raw = scan_lines(text, origin);
    RunConfig cfg;

    cfg.params.k1 = parse_positive(require(raw, origin, "params", "k1"), origin, "k1");
    cfg.params.k2 = parse_positive(require(raw, origin, "params", "k2"), origin, "k2");
    cfg.params.k3 = parse_positive(require(raw, origin, "params", "k3"), origin, "k3");
    cfg.params.rho1 = parse_positive(require(raw, origin, "params", "rho1"), origin, "rho1");
    cfg.params.rho2 = parse_positive(require(raw, origin, "params", "rho2"), origin, "rho2");
    cfg.params.l = parse_positive(require(raw, origin, "params", "l"), origin, "l");
    cfg.params.L = parse_positive(require(raw, origin, "params", "L"), origin, "L");

    cfg.kernel = parse_kernel(raw, origin);

    const RawEntry& se = require(raw, origin, "mesh", "s");
    cfg.s = parse_count(se, origin, "s");
    if (cfg.s < 2) {
        throw ParseError(origin, se.line, "mesh needs at least 2 elements (got " + se.value + ")");
    }

    cfg.dt = parse_positive(require(raw, origin, "time", "dt"), origin, "dt");
    cfg.T = parse_positive(require(raw, origin, "time", "T"), origin, "T");

    cfg.initial = InitialData::first_modes(cfg.params.L);
    apply_initial_key(raw, origin, "phi0", cfg.params.L, true, cfg.initial.phi0);
    apply_initial_key(raw, origin, "phi1", cfg.params.L, true, cfg.initial.phi1);
    apply_initial_key(raw, origin, "psi0", cfg.params.L, false, cfg.initial.psi0);
    apply_initial_key(raw, origin, "psi1", cfg.params.L, false, cfg.initial.psi1);
    apply_initial_key(raw, origin, "w0", cfg.params.L, false, cfg.initial.w0);
    apply_initial_key(raw, origin, "w1", cfg.params.L, false, cfg.initial.w1);

    if (const RawEntry* e = find(raw, "flags", "include_m0")) {
        cfg.flags.include_m0 = parse_bool(*e, origin, "include_m0");
    }
    if (const RawEntry* e = find(raw, "flags", "exponential_fastpath")) {
        cfg.flags.exponential_fastpath = parse_bool(*e, origin, "exponential_fastpath");
    }
    if (const RawEntry* e = find(raw, "flags", "diagnostics_every")) {
        cfg.flags.diagnostics_every = parse_count(*e, origin, "diagnostics_every");
    }
    if (const RawEntry* e = find(raw, "flags", "snapshots_every")) {
        cfg.flags.snapshots_every = parse_count(*e, origin, "snapshots_every");
    }

    if (cfg.flags.exponential_fastpath && cfg.kernel.family != Kernel::Family::exponential) {
        const RawEntry* e = find(raw, "flags", "exponential_fastpath");
        throw ParseError(origin, e->line,
                         "exponential_fastpath requires the exponential kernel family");
    }

    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

RunConfig preset(const std::string& name) {
    RunConfig cfg;
    if (name == "equal-speed") {
        cfg.params = BresseParams{1.0, 1.0, 1.0, 0.1, 0.1, 0.05, 1.0};
        cfg.kernel = Kernel::exponential(1.0, 3.0);
        cfg.s = 42;
        cfg.dt = 0.012;
        cfg.T = 7.4;
        cfg.initial = InitialData::first_modes(cfg.params.L);
        return cfg;
    }
    if (name == "non-equal-speed") {
        cfg.params = BresseParams{5.0, 1.0, 1.0, 0.02, 0.1, 0.05, 1.0};
        cfg.kernel = Kernel::power_law(1.0, 2.0);
        cfg.s = 16;
        cfg.dt = 0.03125;
        cfg.T = 16.4;
        cfg.initial = InitialData::first_modes(cfg.params.L);
        return cfg;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (available: equal-speed, non-equal-speed)");
}

std::vector<std::string> preset_names() { return {"equal-speed", "non-equal-speed"}; }

}  // namespace bresse
