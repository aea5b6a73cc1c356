#pragma once

#include <cstddef>

#include "bresse/types.hpp"

namespace bresse {

/// Composite Simpson integral of equispaced samples with spacing h.
///
/// Requires at least two samples. An odd number of intervals is handled by
/// closing the last three with the 3/8 rule, so cubic polynomials are still
/// integrated exactly.
double simpson(const Vec& samples, double h);

/// Mean value (Simpson integral divided by the interval length).
double simpson_mean(const Vec& samples, double h);

/// Cumulative trapezoid antiderivative of equispaced samples; result[0] = 0.
Vec cumtrapz(const Vec& samples, double h);

/// Two-point Gauss-Legendre nodes on the reference element (0, 1).
/// Each carries weight 1/2; the pair is exact for cubics.
inline constexpr double kGaussLo = 0.21132486540518711775;  // 1/2 - 1/(2*sqrt 3)
inline constexpr double kGaussHi = 0.78867513459481288225;  // 1/2 + 1/(2*sqrt 3)

/// Value of the piecewise-linear interpolant of nodal values v on element e
/// at local coordinate xi in [0, 1].
inline double p1_value(const Vec& v, std::size_t e, double xi) {
    return v[e] * (1.0 - xi) + v[e + 1] * xi;
}

/// Constant derivative of the interpolant of v on element e (spacing h).
inline double p1_slope(const Vec& v, std::size_t e, double h) {
    return (v[e + 1] - v[e]) / h;
}

}  // namespace bresse
