#pragma once

#include <vector>

namespace bresse {

/// Nodal coefficient vector on a 1-D mesh.
using Vec = std::vector<double>;

}  // namespace bresse
