#pragma once

#include "tropmetz/rational.hpp"

#include <vector>

namespace tropmetz {

using RationalMatrix = std::vector<RationalVector>;

/// Solves A X = B exactly by Gaussian elimination with first-nonzero pivoting.
/// A is square, B has the same number of rows. Throws Error{SingularSystem}.
RationalMatrix solve_exact(RationalMatrix a, RationalMatrix b);

}  // namespace tropmetz
