#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bresse {

/// A physical parameter that must be strictly positive was zero or negative.
class NonPositiveParameter : public std::invalid_argument {
public:
    explicit NonPositiveParameter(const std::string& name)
        : std::invalid_argument("parameter must be strictly positive: " + name), name_(name) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Kernel evaluation requested at a negative time.
class NegativeTime : public std::invalid_argument {
public:
    NegativeTime() : std::invalid_argument("kernel evaluated at negative time") {}
};

/// Material and geometry constants of the coupled beam system.
///
/// k1: shear stiffness, k2: bending stiffness, k3: longitudinal stiffness;
/// rho1: density of the transverse/longitudinal displacements, rho2:
/// rotational inertia density; l: initial curvature (inverse radius of the
/// undeformed centerline); L: beam length.
struct BresseParams {
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 1.0;
    double rho1 = 0.1;
    double rho2 = 0.1;
    double l = 0.05;
    double L = 1.0;
};

struct ParamReport {
    BresseParams params;
    std::vector<std::string> warnings;
};

/// Checks strict positivity of every field (throws NonPositiveParameter with
/// the offending name) and attaches a warning when the curvature-length
/// product l*L exceeds the smallness threshold the arch model assumes.
ParamReport validate_params(const BresseParams& p, double curvature_threshold = 0.5);

/// Propagation speeds of the three wave families and the equality flags the
/// decay regime depends on. Comparisons are relative, so the flags are
/// invariant under uniform scaling of all stiffnesses and densities.
struct SpeedReport {
    double s1 = 0.0;  // sqrt(k1/rho1)
    double s2 = 0.0;  // sqrt(k2/rho2)
    double s3 = 0.0;  // sqrt(k3/rho1)
    bool equal_first_pair = false;  // k1/rho1 == k2/rho2 within tolerance
    bool k1_equals_k3 = false;      // k1 == k3 within tolerance
    double tolerance = 1e-9;
};

SpeedReport wave_speeds(const BresseParams& p, double rel_tol = 1e-9);

/// Relaxation kernel g acting on the bending stiffness. Two analytic
/// families plus the memoryless limit g == 0 used by damping-off runs.
///
/// exponential: g(t) = a * exp(-b t)
/// power_law:   g(t) = a / (1 + t)^q with q > 1 so the total mass is finite
///
/// Both satisfy the differential bound g' = -xi * g^p exactly, with
/// (xi, p) = (b, 1) for the exponential family and
/// (xi, p) = (q / a^(1/q), (q+1)/q) for the power law.
struct Kernel {
    enum class Family { exponential, power_law, none };

    Family family = Family::none;
    double a = 0.0;  // amplitude, g(0)
    double b = 0.0;  // exponential decay rate
    double q = 0.0;  // power-law decay exponent
    double g0 = 0.0; // cached total mass of g over [0, infinity)

    static Kernel exponential(double a, double b);
    static Kernel power_law(double a, double q);
    static Kernel none();

    /// g(t); throws NegativeTime for t < 0.
    double eval(double t) const;

    /// Definite integral of g over [0, t] in closed form.
    double integral_to(double t) const;

    /// Total mass over [0, infinity), cached at construction.
    double total_mass() const noexcept { return g0; }

    /// Constant xi of the differential bound g' = -xi * g^p.
    double xi() const noexcept;

    /// Exponent p of the differential bound, in [1, 3/2] for these families.
    double p() const noexcept;

    bool is_memoryless() const noexcept { return family == Family::none; }
};

/// Structural conditions the decay theory rests on:
///   (a1) g(0) > 0 and the residual bending stiffness k2 - g0 stays positive;
///   (a2) the differential bound holds with exponent 1 <= p < 3/2.
/// Violations are reported, never thrown: runs proceed with warnings.
struct AdmissibilityReport {
    double g_at_zero = 0.0;
    double g0_infinity = 0.0;
    double residual_stiffness = 0.0;  // k2 - g0_infinity
    double xi = 0.0;
    double p = 1.0;
    bool a1_satisfied = false;
    bool a2_satisfied = false;
    std::vector<std::string> notes;
};

AdmissibilityReport check_admissibility(const Kernel& g, const BresseParams& p);

}  // namespace bresse
