#include "tropmetz/sampling.hpp"

#include <algorithm>

namespace tropmetz {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Positive rationals with denominator d summing to one.
std::vector<Rational> distribution(std::mt19937_64& rng, std::size_t parts, long max_den) {
    const long d = std::max<long>(static_cast<long>(parts), static_cast<long>(uniform(rng, 2, max_den)));
    // cut points in 1..d-1
    std::vector<long> cuts;
    std::vector<long> pool(d - 1);
    for (long i = 0; i < d - 1; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    cuts.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(parts - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> out;
    long prev = 0;
    for (auto c : cuts) {
        out.push_back(make_rational(c - prev, d));
        prev = c;
    }
    out.push_back(make_rational(d - prev, d));
    return out;
}

Rational payoff(std::mt19937_64& rng, long max_den) { return sample_rational(rng, 5, max_den); }

}  // namespace

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
    std::seed_seq seq{splitmix(state), splitmix(state), splitmix(state), splitmix(state)};
    return std::mt19937_64(seq);
}

Rational sample_rational(std::mt19937_64& rng, const Rational& box, long denom) {
    const long q = std::uniform_int_distribution<long>(1, std::max(1L, denom))(rng);
    const Rational scaled = box * q;
    const mpz_class bound = scaled.get_num() / scaled.get_den();  // floor for box >= 0
    const long b = bound.get_si();
    const long p = std::uniform_int_distribution<long>(-b, b)(rng);
    return make_rational(p, q);
}

RationalVector sample_point(std::mt19937_64& rng, std::size_t n, const Rational& box, long denom) {
    RationalVector x(n);
    for (auto& v : x) v = sample_rational(rng, box, denom);
    return x;
}

TropVector sample_trop_point(std::mt19937_64& rng, std::size_t n, const Rational& box, long denom,
                             double neg_inf_rate) {
    TropVector x(n);
    std::bernoulli_distribution drop(neg_inf_rate);
    for (auto& v : x) {
        const auto r = sample_rational(rng, box, denom);
        if (!drop(rng)) v = r;
    }
    return x;
}

GameGraph random_valid_graph(std::mt19937_64& rng, const GraphLimits& limits) {
    GameGraph g;
    const auto n_min = uniform(rng, 1, limits.max_min);
    const auto n_max = uniform(rng, 1, limits.max_max);
    const auto n_rand = uniform(rng, 0, limits.max_random);
    const auto n_to_max = uniform(rng, 0, n_rand);

    std::vector<std::size_t> mins, maxs, to_max, to_min;
    for (std::size_t i = 0; i < n_min; ++i) mins.push_back(g.add_vertex(VertexKind::Min, "x" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < n_max; ++i) maxs.push_back(g.add_vertex(VertexKind::Max, "w" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < n_rand; ++i) {
        const auto v = g.add_vertex(VertexKind::Random, "r" + std::to_string(i + 1));
        (i < n_to_max ? to_max : to_min).push_back(v);
    }

    auto pick = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        const auto k = uniform(rng, 0, a.size() + b.size() - 1);
        return k < a.size() ? a[k] : b[k - a.size()];
    };
    // Min edges reach Max through the first Random group, Max edges reach Min
    // through the second.
    for (auto v : mins) {
        const auto deg = uniform(rng, 1, 3);
        for (std::size_t d = 0; d < deg; ++d) g.add_edge(v, pick(maxs, to_max), payoff(rng, limits.max_denominator));
    }
    for (auto w : maxs) {
        const auto deg = uniform(rng, 1, 3);
        for (std::size_t d = 0; d < deg; ++d) g.add_edge(w, pick(mins, to_min), payoff(rng, limits.max_denominator));
    }
    auto wire = [&](const std::vector<std::size_t>& group, const std::vector<std::size_t>& sinks) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            const auto deg = uniform(rng, 1, 4);
            const auto probs = distribution(rng, deg, limits.max_denominator);
            const std::vector<std::size_t> earlier(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(i));
            for (std::size_t d = 0; d < deg; ++d) {
                // the first edge descends, so every Random vertex is absorbed
                const auto head = d == 0 ? pick(sinks, earlier) : pick(sinks, group);
                g.add_edge(group[i], head, probs[d]);
            }
        }
    };
    wire(to_max, maxs);
    wire(to_min, mins);
    return g;
}

GameGraph random_compliant_graph(std::mt19937_64& rng, const GraphLimits& limits) {
    GameGraph g;
    const auto n_min = uniform(rng, 1, limits.max_min);
    const auto n_max = uniform(rng, 1, limits.max_max);
    const auto n_rand = uniform(rng, 0, limits.max_random);
    std::vector<std::size_t> mins, maxs, rands;
    for (std::size_t i = 0; i < n_min; ++i) mins.push_back(g.add_vertex(VertexKind::Min, "x" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < n_max; ++i) maxs.push_back(g.add_vertex(VertexKind::Max, "w" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < n_rand; ++i) rands.push_back(g.add_vertex(VertexKind::Random, "r" + std::to_string(i + 1)));
    const Rational half(1, 2);
    for (auto r : rands) {
        g.add_edge(r, maxs[uniform(rng, 0, n_max - 1)], half);
        g.add_edge(r, maxs[uniform(rng, 0, n_max - 1)], half);
    }
    for (auto v : mins) {
        const auto deg = uniform(rng, 1, 3);
        for (std::size_t d = 0; d < deg; ++d) {
            const auto k = uniform(rng, 0, n_max + n_rand - 1);
            g.add_edge(v, k < n_max ? maxs[k] : rands[k - n_max], payoff(rng, limits.max_denominator));
        }
    }
    for (auto w : maxs) {
        const auto deg = uniform(rng, 1, 3);
        for (std::size_t d = 0; d < deg; ++d) {
            g.add_edge(w, mins[uniform(rng, 0, n_min - 1)], payoff(rng, limits.max_denominator));
        }
    }
    return g;
}

MinMaxOperator random_minmax(std::mt19937_64& rng, std::size_t n, std::size_t p, long max_denominator) {
    MinMaxOperator op;
    op.n = n;
    for (std::size_t s = 0; s < p; ++s) {
        RationalMatrix a(n, RationalVector(n, Rational(0)));
        for (std::size_t k = 0; k < n; ++k) {
            const auto support = uniform(rng, 1, std::min<std::size_t>(n, 3));
            const auto probs = distribution(rng, support, max_denominator);
            for (std::size_t d = 0; d < support; ++d) a[k][uniform(rng, 0, n - 1)] += probs[d];
        }
        op.matrices.push_back(std::move(a));
        RationalVector b(n);
        for (auto& v : b) v = payoff(rng, max_denominator);
        op.offsets.push_back(std::move(b));
    }
    op.selections.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto m = uniform(rng, 1, 3);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<std::size_t> subset;
            for (std::size_t s = 0; s < p; ++s) {
                if (uniform(rng, 0, 1)) subset.push_back(s);
            }
            if (subset.empty()) subset.push_back(uniform(rng, 0, p - 1));
            op.selections[k].push_back(std::move(subset));
        }
    }
    return op;
}

}  // namespace tropmetz
