#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bresse/energy.hpp"
#include "bresse/model.hpp"

namespace bresse {

class NonPositiveEnergy : public std::invalid_argument {
public:
    explicit NonPositiveEnergy(double t)
        : std::invalid_argument("energy trace is not strictly positive at t = " +
                                std::to_string(t)) {}
};

class WindowTooNarrow : public std::invalid_argument {
public:
    WindowTooNarrow() : std::invalid_argument("fit window holds fewer than three points") {}
};

struct FitWindow {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Least-squares decay fit in log coordinates.
///
/// fit_exponential regresses ln E on t:          E ~ C exp(-rate t)
/// fit_polynomial regresses -ln E on ln t:       E ~ C t^(-rate)
///
/// r_squared is 0 for a degenerate (constant) trace. max_residual is the
/// largest |log-residual| and log_drop the spread of the regressed log
/// energy over the window, so max_residual / log_drop measures fit quality
/// on the scale of the observed decay.
///
/// The polynomial fit silently drops rows at t <= 0 (ln t is undefined
/// there); if fewer than three points survive, WindowTooNarrow is thrown.
struct DecayFit {
    double C = 0.0;
    double rate = 0.0;
    double r_squared = 0.0;
    double max_residual = 0.0;
    double log_drop = 0.0;
    std::size_t n_points = 0;
    FitWindow window;
};

DecayFit fit_exponential(const EnergyTrace& trace, FitWindow window);
DecayFit fit_polynomial(const EnergyTrace& trace, FitWindow window);

enum class SpeedCase { equal, non_equal };

class InconsistentCase : public std::invalid_argument {
public:
    explicit InconsistentCase(const std::string& why) : std::invalid_argument(why) {}
};

/// Closed-form decay envelope E(t) <= C * shape(t - t0) for the constant-xi
/// kernel families, selected by the speed case and the kernel exponent p:
///
///   equal, p = 1:        C exp(-lambda xi (t - t0))
///   equal, 1 < p < 3/2:  C (1 + xi^p (t - t0))^(-1/(p-1))
///   non-equal, p <= 3/2: C (xi^(2p-1) (t - t0))^(-1/(2p-1))
///
/// The equal-speed forms require p < 3/2 (InconsistentCase otherwise); the
/// non-equal form accepts the boundary p = 3/2 with a note. lambda only
/// enters the exponential form.
struct Envelope {
    SpeedCase speed_case = SpeedCase::equal;
    double C = 1.0;
    double lambda = 1.0;
    double xi = 1.0;
    double p = 1.0;
    double t0 = 0.0;
    std::vector<std::string> notes;

    double operator()(double t) const;
};

Envelope theoretical_envelope(const AdmissibilityReport& report, SpeedCase speed_case,
                              double C, double lambda, double t0);

/// Calibrates env.C so the envelope touches the trace at the first point
/// with t >= t_touch, then reports the largest E / envelope over that same
/// region (> 1 means the trace escapes the envelope).
struct EnvelopeReport {
    double max_ratio = 0.0;
    double t_touch = 0.0;
    double C = 0.0;
};

EnvelopeReport check_envelope(const EnergyTrace& trace, Envelope env, double t_touch);

}  // namespace bresse
