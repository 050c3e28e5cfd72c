#pragma once

#include "tropmetz/trop.hpp"

#include <vector>

namespace tropmetz {

/// Finite list of points of (R ∪ {-inf})^n, used as generators of a tropical
/// cone or of a tropical convex hull.
struct TropPointSet {
    std::size_t dim = 0;
    std::vector<TropVector> points;

    TropPointSet() = default;
    /// Throws Error{DimensionMismatch} when a point has the wrong length.
    TropPointSet(std::size_t dim, std::vector<TropVector> points);
};

/// Greatest scalars λ_k with λ_k ⊙ g_k <= y (residuation). A generator that
/// is entirely -inf gets λ = -inf since it contributes nothing.
std::vector<TropScalar> residuate(const TropVector& y, const TropPointSet& generators);

/// Greatest element of the tropical cone spanned by the generators that lies
/// below y: ⊕_k λ_k ⊙ g_k with λ from residuate().
TropVector cone_floor(const TropVector& y, const TropPointSet& generators);

/// y is a tropical combination ⊕ λ_k ⊙ g_k of the generators.
bool cone_member(const TropVector& y, const TropPointSet& generators);

/// {(0, g) : g in G} in dimension n + 1.
TropPointSet homogenize_points(const TropPointSet& generators);

/// y ∈ tconv(G), decided as (0, y) ∈ cone of the homogenized generators.
bool hull_member(const TropVector& y, const TropPointSet& generators);

/// y ∈ tconv(G1 ∪ G2).
bool union_hull_member(const TropVector& y, const TropPointSet& first, const TropPointSet& second);

}  // namespace tropmetz
