#pragma once

#include "tropmetz/game_graph.hpp"
#include "tropmetz/minmax.hpp"
#include "tropmetz/trop.hpp"

#include <cstdint>
#include <random>

namespace tropmetz {

/// Independent generator for sample `index` of the stream `seed`; a worker
/// can produce any sample without replaying the ones before it.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// p/q with q uniform in [1, denom] and |p/q| <= box.
Rational sample_rational(std::mt19937_64& rng, const Rational& box, long denom);
RationalVector sample_point(std::mt19937_64& rng, std::size_t n, const Rational& box, long denom);
/// Each coordinate is -inf with probability neg_inf_rate.
TropVector sample_trop_point(std::mt19937_64& rng, std::size_t n, const Rational& box, long denom,
                             double neg_inf_rate);

struct GraphLimits {
    std::size_t max_min = 6;
    std::size_t max_max = 6;
    std::size_t max_random = 8;
    long max_denominator = 12;
};

/// A graph satisfying validate_graph, with parallel edges, Random cycles and
/// arbitrary rational probabilities.
GameGraph random_valid_graph(std::mt19937_64& rng, const GraphLimits& limits = {});

/// A graph meeting the synthesis preconditions (see check_compliance).
GameGraph random_compliant_graph(std::mt19937_64& rng, const GraphLimits& limits = {});

/// Row-stochastic instance with p matrices in dimension n.
MinMaxOperator random_minmax(std::mt19937_64& rng, std::size_t n, std::size_t p, long max_denominator = 12);

}  // namespace tropmetz
