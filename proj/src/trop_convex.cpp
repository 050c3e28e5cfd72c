#include "tropmetz/trop_convex.hpp"

namespace tropmetz {

namespace {

void check_dim(const TropVector& y, const TropPointSet& g) {
    if (y.size() != g.dim) {
        throw Error(ErrorCode::DimensionMismatch, "point of dimension " + std::to_string(y.size()) +
                                                      " against generators of dimension " + std::to_string(g.dim));
    }
}

}  // namespace

TropPointSet::TropPointSet(std::size_t d, std::vector<TropVector> pts) : dim(d), points(std::move(pts)) {
    for (const auto& p : points) {
        if (p.size() != dim) throw Error(ErrorCode::DimensionMismatch, "generator of wrong dimension");
    }
}

std::vector<TropScalar> residuate(const TropVector& y, const TropPointSet& generators) {
    check_dim(y, generators);
    std::vector<TropScalar> lambda;
    lambda.reserve(generators.points.size());
    for (const auto& g : generators.points) {
        bool constrained = false;
        TropScalar best;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].is_neg_inf()) continue;
            // y_i - g_i, where y_i = -inf forces -inf
            TropScalar bound = y[i].is_finite() ? TropScalar(Rational(y[i].value() - g[i].value())) : TropScalar();
            if (!constrained || bound < best) best = bound;
            constrained = true;
        }
        lambda.push_back(constrained ? best : TropScalar());
    }
    return lambda;
}

TropVector cone_floor(const TropVector& y, const TropPointSet& generators) {
    const auto lambda = residuate(y, generators);
    TropVector out(generators.dim);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        if (lambda[k].is_neg_inf()) continue;
        out = tadd(out, tmul(lambda[k], generators.points[k]));
    }
    return out;
}

bool cone_member(const TropVector& y, const TropPointSet& generators) {
    return cone_floor(y, generators) == y;
}

TropPointSet homogenize_points(const TropPointSet& generators) {
    TropPointSet out;
    out.dim = generators.dim + 1;
    out.points.reserve(generators.points.size());
    for (const auto& g : generators.points) {
        TropVector h;
        h.reserve(g.size() + 1);
        h.emplace_back(Rational(0));
        h.insert(h.end(), g.begin(), g.end());
        out.points.push_back(std::move(h));
    }
    return out;
}

bool hull_member(const TropVector& y, const TropPointSet& generators) {
    check_dim(y, generators);
    TropVector h;
    h.reserve(y.size() + 1);
    h.emplace_back(Rational(0));
    h.insert(h.end(), y.begin(), y.end());
    return cone_member(h, homogenize_points(generators));
}

bool union_hull_member(const TropVector& y, const TropPointSet& first, const TropPointSet& second) {
    if (first.dim != second.dim) throw Error(ErrorCode::DimensionMismatch, "generator sets of different dimension");
    TropPointSet both = first;
    both.points.insert(both.points.end(), second.points.begin(), second.points.end());
    return hull_member(y, both);
}

}  // namespace tropmetz
