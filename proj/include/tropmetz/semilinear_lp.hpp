#pragma once

#include "tropmetz/linalg.hpp"
#include "tropmetz/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropmetz {

/// {y : A y <= b}.
struct Polyhedron {
    RationalMatrix A;
    RationalVector b;
};

/// ∪_s {y : A^(s) y <= b^(s)} in R^n.
struct PolyhedralUnion {
    std::size_t n = 0;
    std::vector<Polyhedron> pieces;

    PolyhedralUnion() = default;
    /// Throws Error{DimensionMismatch} on inconsistent shapes and
    /// Error{Malformed} when there is no piece.
    PolyhedralUnion(std::size_t n, std::vector<Polyhedron> pieces);
};

enum class LpStatus { Optimal, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;        // optimum of y_k
    RationalVector point;  // an optimal basic point
};

/// max { y_k : A y <= b, y <= x } by exact two-phase simplex with Bland's rule.
LpResult lp_max(const RationalMatrix& A, const RationalVector& b, const RationalVector& x, std::size_t k);

bool polyhedron_contains(const Polyhedron& p, const RationalVector& x);
bool union_contains(const PolyhedralUnion& u, const RationalVector& x);

/// F_k(x) = sup { y_k : y in U, y <= x }. Throws Error{EmptyBelow} when no
/// piece meets {y <= x}.
RationalVector eval_F_from_polyhedra(const PolyhedralUnion& u, const RationalVector& x);

struct ConvexityCounterexample {
    RationalVector a;
    RationalVector b;
    Rational lambda;
    Rational mu;
    RationalVector combination;
};

struct FalsifierResult {
    std::size_t trials = 0;
    std::optional<ConvexityCounterexample> counterexample;
    bool passed() const noexcept { return !counterexample.has_value(); }
};

/// Samples members (LP optimal points below random x) and checks
/// (λ ⊙ a) ⊕ (μ ⊙ b) ∈ U for λ ⊕ μ = 0.
FalsifierResult tropical_convexity_falsifier(const PolyhedralUnion& u, std::size_t trials, std::uint64_t seed,
                                             const Rational& box = 10, long denom = 64);

}  // namespace tropmetz
