#pragma once

#include "tropmetz/game_graph.hpp"
#include "tropmetz/transforms.hpp"
#include "tropmetz/trop.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropmetz {

/// One entry Q_ij(X) = c ⊕ ⊕_k a_k ⊙ X_k of the pencil, as a sparse
/// degree-one signed polynomial.
struct PencilEntry {
    SignedTropScalar constant;
    std::map<std::size_t, SignedTropScalar> terms;

    /// (P+(x), P-(x)).
    std::pair<TropScalar, TropScalar> eval(const TropVector& x) const;
};

/// Symmetric pencil Q^(0) + ⊕_k Q^(k) X_k stored entrywise on the upper
/// triangle. Off-diagonal coefficients must be negative (Metzler pattern).
class MetzlerPencil {
public:
    MetzlerPencil() = default;
    MetzlerPencil(std::size_t rows, std::size_t vars) : rows_(rows), vars_(vars) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t vars() const noexcept { return vars_; }

    std::size_t add_rows(std::size_t count = 1);  // returns the first new index
    std::size_t add_vars(std::size_t count = 1);

    /// Adds coefficient ⊙ X_var (var = nullopt: the constant) to Q_ij.
    /// Same-sign coefficients merge by ⊕; opposite signs throw
    /// Error{SignCollision}; a nonnegative off-diagonal coefficient throws
    /// Error{PreconditionViolated}.
    void add(std::size_t i, std::size_t j, std::optional<std::size_t> var, const SignedTropScalar& coefficient);

    /// Entry (i, j) with i <= j, or nullptr when it is identically -inf.
    const PencilEntry* entry(std::size_t i, std::size_t j) const;
    const std::map<std::pair<std::size_t, std::size_t>, PencilEntry>& entries() const noexcept { return entries_; }

    /// Q^(k)_ij; k = 0 is the constant matrix, k >= 1 is variable k - 1.
    SignedTropScalar coefficient(std::size_t k, std::size_t i, std::size_t j) const;

    bool is_cone() const;
    bool is_metzler() const;

private:
    std::size_t rows_ = 0;
    std::size_t vars_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, PencilEntry> entries_;
};

/// Q_ii+(x) >= Q_ii-(x) for all i and Q_ii+(x) ⊙ Q_jj+(x) >= |Q_ij(x)|^2 for
/// i != j. Throws Error{DimensionMismatch}.
bool pencil_member(const MetzlerPencil& p, const TropVector& x);

/// Proof-carrying projection data. `lift` proposes a full point for a visible
/// point; the visible point is in the projection iff the proposal is a pencil
/// member (nullopt means no candidate). `floor`, when present, maps
/// z in T^(visible+1) to the greatest point of the closed homogenization of
/// the visible set lying below z (possibly all -inf).
struct PencilWitness {
    using Map = std::function<std::optional<TropVector>(const TropVector&)>;
    Map lift;
    Map floor;
    std::string descriptor;
};

struct ProjectedPencil {
    MetzlerPencil pencil;
    std::size_t visible = 0;
    std::optional<PencilWitness> witness;
};

/// Throws Error{NoWitness} without a witness, Error{DimensionMismatch}.
bool projected_member(const ProjectedPencil& pp, const TropVector& x);
/// Throws Error{NoWitness}.
std::optional<TropVector> projected_lift(const ProjectedPencil& pp, const TropVector& x);

struct ComplianceReport {
    std::vector<std::string> failures;
    bool ok() const noexcept { return failures.empty(); }
};

/// Synthesis preconditions: valid graph, Random vertices with two 1/2 edges
/// into Max vertices, Max edges into Min vertices, Min edges into Max or
/// Random vertices.
ComplianceReport check_compliance(const GameGraph& g);

/// Cone pencil over the Min coordinates whose members are exactly the
/// subfixed points. Throws Error{NotCompliant}.
MetzlerPencil synthesize_cone(const GameGraph& g);

/// Appends variables y and blocks forcing x_k + y_k >= 0 for every variable.
MetzlerPencil affine_envelope(const MetzlerPencil& cone);

/// The constant matrix becomes the coefficient of a new variable 0.
MetzlerPencil formal_homogenize(const MetzlerPencil& p);

/// Adds rows pinning variable 0 to 0.
MetzlerPencil dehomogenize(const MetzlerPencil& p);

/// pipeline + synthesize_cone + affine_envelope, with the graph witness as
/// lift (y = -x). Visible coordinates are the Min vertices of g.
ProjectedPencil realize_graph(const GameGraph& g);
/// synthesize_cone on a compliant graph with the identity lift.
ProjectedPencil realize_compliant(const GameGraph& g);

/// Pencil for S^h with visible coordinates (x0, x).
ProjectedPencil homogenize_projected(const ProjectedPencil& pp);

/// Pencil for tconv(S1 ∪ S2). Throws Error{DimensionMismatch}.
ProjectedPencil union_pencil(const ProjectedPencil& first, const ProjectedPencil& second);

ProjectedPencil singleton_pencil(const TropVector& g);
/// {-inf}^n.
ProjectedPencil neg_inf_pencil(std::size_t n);
/// The empty subset of T^n (a single row -inf >= 0).
ProjectedPencil empty_pencil(std::size_t n);
/// tconv(G) as a fold of singleton pencils; empty G gives the empty set.
ProjectedPencil tconv_pencil(std::size_t n, const std::vector<TropVector>& generators);

struct StratumPiece {
    std::vector<std::size_t> support;  // sorted coordinates K
    ProjectedPencil pencil;            // visible = |K|
};

/// tconv of the pieces embedded in T^n (coordinates outside K forced to
/// -inf), plus {-inf} when requested. Throws Error{SupportMismatch}.
ProjectedPencil assemble_strata(std::size_t n, std::vector<StratumPiece> pieces, bool include_neg_inf = false);

}  // namespace tropmetz
