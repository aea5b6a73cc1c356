#include "bresse/model.hpp"

#include <cmath>
#include <sstream>

namespace bresse {

ParamReport validate_params(const BresseParams& p, double curvature_threshold) {
    const struct {
        const char* name;
        double value;
    } fields[] = {{"k1", p.k1},     {"k2", p.k2},     {"k3", p.k3}, {"rho1", p.rho1},
                  {"rho2", p.rho2}, {"l", p.l},       {"L", p.L}};
    for (const auto& f : fields) {
        if (!(f.value > 0.0) || !std::isfinite(f.value)) throw NonPositiveParameter(f.name);
    }
    ParamReport report{p, {}};
    if (p.l * p.L > curvature_threshold) {
        std::ostringstream msg;
        msg << "curvature-length product l*L = " << p.l * p.L << " exceeds "
            << curvature_threshold << "; the shallow-arch assumption is strained";
        report.warnings.push_back(msg.str());
    }
    return report;
}

SpeedReport wave_speeds(const BresseParams& p, double rel_tol) {
    SpeedReport r;
    r.tolerance = rel_tol;
    const double c1 = p.k1 / p.rho1;
    const double c2 = p.k2 / p.rho2;
    r.s1 = std::sqrt(c1);
    r.s2 = std::sqrt(c2);
    r.s3 = std::sqrt(p.k3 / p.rho1);
    r.equal_first_pair = std::abs(c1 - c2) <= rel_tol * std::max(c1, c2);
    r.k1_equals_k3 = std::abs(p.k1 - p.k3) <= rel_tol * std::max(p.k1, p.k3);
    return r;
}

Kernel Kernel::exponential(double a, double b) {
    if (!(a > 0.0)) throw NonPositiveParameter("kernel amplitude a");
    if (!(b > 0.0)) throw NonPositiveParameter("kernel rate b");
    Kernel k;
    k.family = Family::exponential;
    k.a = a;
    k.b = b;
    k.g0 = a / b;
    return k;
}

Kernel Kernel::power_law(double a, double q) {
    if (!(a > 0.0)) throw NonPositiveParameter("kernel amplitude a");
    if (!(q > 1.0)) throw NonPositiveParameter("kernel exponent margin q - 1");
    Kernel k;
    k.family = Family::power_law;
    k.a = a;
    k.q = q;
    k.g0 = a / (q - 1.0);
    return k;
}

Kernel Kernel::none() { return Kernel{}; }

double Kernel::eval(double t) const {
    if (t < 0.0) throw NegativeTime();
    switch (family) {
        case Family::exponential: return a * std::exp(-b * t);
        case Family::power_law: return a * std::pow(1.0 + t, -q);
        case Family::none: return 0.0;
    }
    return 0.0;
}

double Kernel::integral_to(double t) const {
    if (t < 0.0) throw NegativeTime();
    switch (family) {
        case Family::exponential: return a / b * (1.0 - std::exp(-b * t));
        case Family::power_law: return a / (q - 1.0) * (1.0 - std::pow(1.0 + t, 1.0 - q));
        case Family::none: return 0.0;
    }
    return 0.0;
}

double Kernel::xi() const noexcept {
    switch (family) {
        case Family::exponential: return b;
        case Family::power_law: return q * std::pow(a, -1.0 / q);
        case Family::none: return 0.0;
    }
    return 0.0;
}

double Kernel::p() const noexcept {
    switch (family) {
        case Family::exponential: return 1.0;
        case Family::power_law: return (q + 1.0) / q;
        case Family::none: return 1.0;
    }
    return 1.0;
}

AdmissibilityReport check_admissibility(const Kernel& g, const BresseParams& p) {
    AdmissibilityReport r;
    r.g_at_zero = g.is_memoryless() ? 0.0 : g.eval(0.0);
    r.g0_infinity = g.total_mass();
    r.residual_stiffness = p.k2 - r.g0_infinity;
    r.xi = g.xi();
    r.p = g.p();

    r.a1_satisfied = r.g_at_zero > 0.0 && r.residual_stiffness > 0.0;
    r.a2_satisfied = !g.is_memoryless() && r.p >= 1.0 && r.p < 1.5;

    if (g.is_memoryless()) {
        r.notes.push_back("memoryless kernel: damping comes only from the time discretization");
    }
    if (!g.is_memoryless() && !(r.residual_stiffness > 0.0)) {
        std::ostringstream msg;
        msg << "memory exhausts the bending stiffness: k2 - g0 = " << r.residual_stiffness;
        r.notes.push_back(msg.str());
    }
    if (g.family == Kernel::Family::power_law && !(r.p < 1.5)) {
        std::ostringstream msg;
        msg << "differential-bound exponent p = " << r.p
            << " sits at or above 3/2 (power-law q <= 2); the guaranteed decay "
               "rates do not apply";
        r.notes.push_back(msg.str());
    }
    return r;
}

}  // namespace bresse
