#include "bresse/decay.hpp"

#include <algorithm>
#include <cmath>

namespace bresse {

namespace {

struct LogPoints {
    std::vector<double> x, y;
};

// Collects (x(t), y(E)) over the window; both extractors may reject points
// (polynomial fits need t > 0).
LogPoints collect(const EnergyTrace& trace, FitWindow window, bool log_time) {
    LogPoints pts;
    for (const EnergyRow& row : trace.rows) {
        if (row.t < window.t0 || row.t > window.t1) continue;
        if (log_time && !(row.t > 0.0)) continue;
        if (!(row.E > 0.0)) throw NonPositiveEnergy(row.t);
        pts.x.push_back(log_time ? std::log(row.t) : row.t);
        pts.y.push_back(std::log(row.E));
    }
    if (pts.x.size() < 3) throw WindowTooNarrow();
    return pts;
}

// Simple least squares y ~ a + b x with quality diagnostics in y units.
struct LineFit {
    double intercept = 0.0, slope = 0.0, r_squared = 0.0, max_residual = 0.0, spread = 0.0;
};

LineFit least_squares(const LogPoints& pts) {
    const std::size_t n = pts.x.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += pts.x[i];
        sy += pts.y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = pts.x[i] - mx;
        const double dy = pts.y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    LineFit fit;
    if (sxx == 0.0) throw WindowTooNarrow();  // coincident abscissae
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    double y_lo = pts.y[0], y_hi = pts.y[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double r = pts.y[i] - (fit.intercept + fit.slope * pts.x[i]);
        ss_res += r * r;
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
        y_lo = std::min(y_lo, pts.y[i]);
        y_hi = std::max(y_hi, pts.y[i]);
    }
    fit.spread = y_hi - y_lo;
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 0.0;
    return fit;
}

}  // namespace

DecayFit fit_exponential(const EnergyTrace& trace, FitWindow window) {
    const LogPoints pts = collect(trace, window, /*log_time=*/false);
    const LineFit line = least_squares(pts);
    DecayFit fit;
    fit.C = std::exp(line.intercept);
    fit.rate = -line.slope;
    fit.r_squared = line.r_squared;
    fit.max_residual = line.max_residual;
    fit.log_drop = line.spread;
    fit.n_points = pts.x.size();
    fit.window = window;
    return fit;
}

DecayFit fit_polynomial(const EnergyTrace& trace, FitWindow window) {
    LogPoints pts = collect(trace, window, /*log_time=*/true);
    for (double& y : pts.y) y = -y;  // regress -ln E on ln t
    const LineFit line = least_squares(pts);
    DecayFit fit;
    fit.C = std::exp(-line.intercept);
    fit.rate = line.slope;
    fit.r_squared = line.r_squared;
    fit.max_residual = line.max_residual;
    fit.log_drop = line.spread;
    fit.n_points = pts.x.size();
    fit.window = window;
    return fit;
}

double Envelope::operator()(double t) const {
    const double s = t - t0;
    if (speed_case == SpeedCase::equal) {
        if (p == 1.0) return C * std::exp(-lambda * xi * s);
        return C * std::pow(1.0 + std::pow(xi, p) * s, -1.0 / (p - 1.0));
    }
    const double arg = std::pow(xi, 2.0 * p - 1.0) * s;
    return C * std::pow(arg, -1.0 / (2.0 * p - 1.0));
}

Envelope theoretical_envelope(const AdmissibilityReport& report, SpeedCase speed_case,
                              double C, double lambda, double t0) {
    if (!(report.p >= 1.0)) throw InconsistentCase("kernel exponent p below 1");
    if (!(report.xi > 0.0)) {
        throw InconsistentCase("memoryless kernel admits no decay envelope");
    }
    Envelope env;
    env.speed_case = speed_case;
    env.C = C;
    env.lambda = lambda;
    env.xi = report.xi;
    env.p = report.p;
    env.t0 = t0;
    if (speed_case == SpeedCase::equal) {
        if (!(report.p < 1.5)) {
            throw InconsistentCase(
                "equal-speed envelopes require kernel exponent p < 3/2");
        }
        if (report.p > 1.0) {
            env.notes.push_back(
                "integrable envelope with improved rate 1/(p-1) (power-law order q)");
        }
    } else {
        if (report.p > 1.5) {
            throw InconsistentCase(
                "non-equal-speed envelope requires kernel exponent p <= 3/2");
        }
        if (report.p == 1.5) {
            env.notes.push_back(
                "kernel exponent sits on the p = 3/2 boundary; the guaranteed "
                "rate degenerates to the slowest admissible one");
        }
    }
    return env;
}

EnvelopeReport check_envelope(const EnergyTrace& trace, Envelope env, double t_touch) {
    // calibrate at the first logged point past t_touch
    const EnergyRow* anchor = nullptr;
    for (const EnergyRow& row : trace.rows) {
        if (row.t >= t_touch) {
            anchor = &row;
            break;
        }
    }
    if (anchor == nullptr) throw WindowTooNarrow();
    if (!(anchor->E > 0.0)) throw NonPositiveEnergy(anchor->t);

    env.C = 1.0;
    const double shape = env(anchor->t);
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw InconsistentCase("envelope undefined at the calibration point");
    }
    env.C = anchor->E / shape;

    EnvelopeReport report;
    report.t_touch = anchor->t;
    report.C = env.C;
    for (const EnergyRow& row : trace.rows) {
        if (row.t < anchor->t) continue;
        report.max_ratio = std::max(report.max_ratio, row.E / env(row.t));
    }
    return report;
}

}  // namespace bresse
