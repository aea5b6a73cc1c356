#include "bresse/quadrature.hpp"

#include <stdexcept>

namespace bresse {

double simpson(const Vec& samples, double h) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("simpson: need at least two samples");
    if (n == 2) return 0.5 * h * (samples[0] + samples[1]);  // single interval: trapezoid

    const std::size_t intervals = n - 1;
    // Even interval count handled by plain Simpson; an odd count keeps Simpson
    // on the first intervals - 3 and closes with the 3/8 rule.
    std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
    double total = 0.0;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        total += h / 3.0 * (samples[i] + 4.0 * samples[i + 1] + samples[i + 2]);
    }
    if (intervals % 2 != 0) {
        if (intervals < 3) {
            // two intervals cannot happen here (that count is even); one was
            // handled above, so this branch only sees interval counts >= 3
            throw std::logic_error("simpson: unreachable interval count");
        }
        const std::size_t j = n - 4;
        total += 3.0 * h / 8.0 *
                 (samples[j] + 3.0 * samples[j + 1] + 3.0 * samples[j + 2] + samples[j + 3]);
    }
    return total;
}

double simpson_mean(const Vec& samples, double h) {
    const double length = h * static_cast<double>(samples.size() - 1);
    return simpson(samples, h) / length;
}

Vec cumtrapz(const Vec& samples, double h) {
    Vec out(samples.size(), 0.0);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * h * (samples[i - 1] + samples[i]);
    }
    return out;
}

}  // namespace bresse
