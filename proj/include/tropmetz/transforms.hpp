#pragma once

#include "tropmetz/game_graph.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tropmetz {

/// Lifts a point of the source subfixed set to a point of the target one.
/// Target coordinates are the source coordinates followed by `new_coords`
/// (ids of the Min vertices added by the transformation).
class WitnessMap {
public:
    using LiftFn = std::function<RationalVector(const RationalVector&)>;

    WitnessMap() = default;
    WitnessMap(std::string kind, std::size_t source_dim, std::vector<std::string> new_coords, LiftFn lift);

    static WitnessMap identity(std::size_t n, std::string kind = "zp");

    const std::string& kind() const noexcept { return kind_; }
    std::size_t source_dim() const noexcept { return source_dim_; }
    std::size_t target_dim() const noexcept { return source_dim_ + new_coords_.size(); }
    const std::vector<std::string>& new_coords() const noexcept { return new_coords_; }

    /// Throws Error{DimensionMismatch}.
    RationalVector lift(const RationalVector& x) const;
    /// The first source_dim coordinates.
    RationalVector project(const RationalVector& y) const;

    /// Apply this, then `next` (whose source must be this target).
    WitnessMap then(const WitnessMap& next, std::string kind) const;

private:
    std::string kind_ = "zp";
    std::size_t source_dim_ = 0;
    std::vector<std::string> new_coords_;
    LiftFn lift_;
};

struct TransformResult {
    GameGraph graph;
    WitnessMap witness;
};

/// Every Random vertex ends with exactly two out-edges of probability 1/2;
/// the encoded operator is unchanged. Throws Error{ValidationFailed}.
GameGraph zwick_paterson(const GameGraph& g);

/// Splits every Max out-edge with a new Min vertex and puts a new Max vertex
/// in front of every in-edge of an original Min vertex.
TransformResult first_transformation(const GameGraph& g);

/// Inserts a Max and a Min vertex on the Random -> Random edge `edge_id`.
/// Throws Error{PreconditionViolated} when the edge is not Random -> Random
/// or some Max out-edge does not head a Min vertex.
TransformResult second_transformation(const GameGraph& g, const std::string& edge_id);

/// zwick_paterson, first_transformation, then second_transformation on every
/// Random -> Random edge.
TransformResult pipeline(const GameGraph& g);

}  // namespace tropmetz
