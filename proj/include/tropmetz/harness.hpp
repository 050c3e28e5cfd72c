#pragma once

#include "tropmetz/game_graph.hpp"
#include "tropmetz/pencil.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropmetz {

struct SampleConfig {
    std::uint64_t seed = 0;
    std::size_t samples = 200;
    Rational box = 10;
    long denom = 64;
    /// Every other sample is pushed towards the subfixed set by a few rounds
    /// of x <- min(x, F(x)), so both directions get exercised.
    bool mix_subfixed = true;
};

struct Counterexample {
    std::size_t index = 0;
    RationalVector x;
    bool subfixed = false;
    bool member = false;
};

/// Forward: subfixed points whose lift is a member. Backward: member points
/// that are subfixed.
struct VerificationReport {
    std::string instance;
    std::size_t samples = 0;
    std::size_t forward_total = 0;
    std::size_t forward_agree = 0;
    std::size_t backward_total = 0;
    std::size_t backward_agree = 0;
    std::optional<Counterexample> counterexample;  // the one with the smallest index
    double seconds = 0;

    bool ok() const noexcept { return forward_agree == forward_total && backward_agree == backward_total; }
    /// Associative; keeps the earliest counterexample.
    void merge(const VerificationReport& other);
};

/// The point used as sample `index` (deterministic in (seed, index)).
RationalVector verification_point(const EncodedOperator& op, const SampleConfig& config, std::size_t index);

VerificationReport verify_projected(const EncodedOperator& op, const ProjectedPencil& pp, const SampleConfig& config);
/// OpenMP kernel; identical report (except timing) to the serial one.
VerificationReport verify_projected_parallel(const EncodedOperator& op, const ProjectedPencil& pp,
                                             const SampleConfig& config);

struct SectionConfig {
    std::map<std::size_t, Rational> fixed;  // 0-based coordinate -> value
    Rational lo = -10;
    Rational hi = 10;
    Rational step = 1;
};

/// Membership of x <= F(x) on the grid of the (at most two) free coordinates.
/// Rows run from the largest y value down.
struct SectionGrid {
    std::optional<std::size_t> x_axis;
    std::optional<std::size_t> y_axis;
    std::vector<Rational> xs;
    std::vector<Rational> ys;  // descending
    std::vector<std::vector<char>> cells;  // [row][column]
};

/// Throws Error{Malformed} for more than two free coordinates or a
/// nonpositive step.
SectionGrid section(const EncodedOperator& op, const SectionConfig& config);
SectionGrid section_parallel(const EncodedOperator& op, const SectionConfig& config);
std::string section_csv(const SectionGrid& grid);

}  // namespace tropmetz
