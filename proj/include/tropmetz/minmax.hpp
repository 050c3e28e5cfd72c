#pragma once

#include "tropmetz/game_graph.hpp"
#include "tropmetz/linalg.hpp"

#include <string>
#include <vector>

namespace tropmetz {

/// F_k(x) = min_{i < M_k} max_{s in S_ki} (A^(s)_k x + b^(s)_k), with row
/// stochastic A^(s). Selection indices are 0-based into `matrices`.
struct MinMaxOperator {
    std::size_t n = 0;
    std::vector<RationalMatrix> matrices;
    std::vector<RationalVector> offsets;
    std::vector<std::vector<std::vector<std::size_t>>> selections;  // [k][i] -> subset of [p]
};

struct StochasticReport {
    bool shapes = true;
    bool nonnegative = true;
    bool row_sums = true;
    bool selections = true;
    std::vector<std::string> failures;

    bool ok() const noexcept { return shapes && nonnegative && row_sums && selections; }
};

StochasticReport check_stochastic(const MinMaxOperator& op);

/// Throws Error{DimensionMismatch}; the operator is assumed well formed.
RationalVector minmax_eval(const MinMaxOperator& op, const RationalVector& x);

/// Min vertices x1..xn, one Max vertex per (k, i), one Random vertex per
/// (k, i, s) whose out-edges follow the positive entries of row k of A^(s).
/// Throws Error{NonStochastic} when check_stochastic fails.
GameGraph graph_from_minmax(const MinMaxOperator& op);

}  // namespace tropmetz
