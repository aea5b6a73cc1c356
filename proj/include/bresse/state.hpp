#pragma once

#include <cstddef>

#include "bresse/types.hpp"

namespace bresse {

/// Discrete solution state after step n (time t = n * dt).
///
/// Velocities are the backward differences the scheme carries:
/// vphi * dt = phi^n - phi^{n-1} exactly, and likewise for psi and w.
struct SimState {
    std::size_t n = 0;
    double t = 0.0;
    Vec phi, psi, w;
    Vec vphi, vpsi, vw;
};

}  // namespace bresse
