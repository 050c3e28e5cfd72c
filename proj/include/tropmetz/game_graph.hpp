#pragma once

#include "tropmetz/rational.hpp"
#include "tropmetz/trop.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tropmetz {

enum class VertexKind { Min, Max, Random };

const char* to_string(VertexKind kind) noexcept;

struct Vertex {
    std::string id;
    VertexKind kind;
};

/// An edge carries a payoff when its tail is a Min or Max vertex and a
/// probability when its tail is a Random vertex; `label` holds whichever
/// applies. Parallel edges are distinct entries.
struct Edge {
    std::string id;
    std::size_t tail;
    std::size_t head;
    Rational label;
};

/// Min/Random/Max game graph. The order of Min vertices fixes the coordinate
/// order of the encoded operator; vertices of each class keep insertion order.
class GameGraph {
public:
    /// An empty id asks for a fresh one. Throws Error{Malformed} on duplicates.
    std::size_t add_vertex(VertexKind kind, std::string id = {});
    std::size_t add_edge(std::size_t tail, std::size_t head, Rational label, std::string id = {});

    /// Removes the edge; indices of later edges shift down by one.
    void remove_edge(std::size_t e);
    /// Removes an isolated vertex (no incident edges); later indices shift down.
    void remove_vertex(std::size_t v);
    void set_head(std::size_t e, std::size_t head);
    void set_tail(std::size_t e, std::size_t tail);
    void set_label(std::size_t e, Rational label);

    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Vertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const Edge& edge(std::size_t e) const { return edges_.at(e); }
    VertexKind kind(std::size_t v) const { return vertices_.at(v).kind; }
    bool is_absorbing(std::size_t v) const { return kind(v) != VertexKind::Random; }

    std::vector<std::size_t> min_vertices() const { return of_kind(VertexKind::Min); }
    std::vector<std::size_t> max_vertices() const { return of_kind(VertexKind::Max); }
    std::vector<std::size_t> random_vertices() const { return of_kind(VertexKind::Random); }
    std::size_t dimension() const;

    /// Out/in edge indices in edge-list order.
    std::vector<std::size_t> out_edges(std::size_t v) const;
    std::vector<std::size_t> in_edges(std::size_t v) const;

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_edge(std::string_view id) const;
    /// Throws Error{Malformed} for unknown ids.
    std::size_t vertex_index(std::string_view id) const;
    std::size_t edge_index(std::string_view id) const;

    /// Deterministic ids from a monotone counter that travels with the graph.
    std::string fresh_vertex_id(std::string_view prefix = "v");
    std::string fresh_edge_id();

private:
    std::vector<std::size_t> of_kind(VertexKind kind) const;
    void reindex();

    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vertex_ids_;
    std::unordered_map<std::string, std::size_t> edge_ids_;
    std::size_t next_vertex_id_ = 0;
    std::size_t next_edge_id_ = 0;
};

struct ValidationReport {
    bool players_nonempty = true;
    bool out_degree = true;
    bool labels = true;
    bool probability_sums = true;
    /// Assumption items: (a) Min-to-Min paths meet a Max vertex, (b) Max-to-Max
    /// paths meet a Min vertex, (c) every Random vertex reaches Min or Max.
    bool min_paths = true;
    bool max_paths = true;
    bool random_reach = true;
    std::vector<std::string> failures;

    bool ok() const noexcept {
        return players_nonempty && out_degree && labels && probability_sums && min_paths && max_paths && random_reach;
    }
};

ValidationReport validate_graph(const GameGraph& g);

/// p^e_v: probability that the absorbing chain started at the head of e ends
/// in the Min or Max vertex v.
class AbsorptionTable {
public:
    using Distribution = std::vector<std::pair<std::size_t, Rational>>;

    AbsorptionTable() = default;
    explicit AbsorptionTable(std::vector<Distribution> per_edge) : per_edge_(std::move(per_edge)) {}

    /// Sparse distribution sorted by vertex index, zero entries omitted.
    const Distribution& of_edge(std::size_t e) const { return per_edge_.at(e); }
    Rational probability(std::size_t e, std::size_t v) const;
    std::size_t edge_count() const noexcept { return per_edge_.size(); }

private:
    std::vector<Distribution> per_edge_;
};

/// Exact solve of the absorbing chain, one linear system per connected block
/// of Random vertices. Throws Error{SingularSystem} when some Random vertex
/// cannot reach an absorbing one.
AbsorptionTable absorption(const GameGraph& g);

/// Absorption distribution from each vertex (unit mass for Min/Max vertices).
std::vector<AbsorptionTable::Distribution> vertex_absorption(const GameGraph& g);

/// The operator encoded by a validated graph, with its absorption table and
/// the two-level min/max structure compiled once. Immutable after construction.
class EncodedOperator {
public:
    /// Throws Error{ValidationFailed} when validate_graph fails.
    explicit EncodedOperator(GameGraph g);

    const GameGraph& graph() const noexcept { return graph_; }
    const AbsorptionTable& table() const noexcept { return table_; }
    std::size_t dimension() const noexcept { return min_rows_.size(); }

    RationalVector eval(const RationalVector& x) const;
    /// A single coordinate of F(x); only the Max values it depends on are computed.
    Rational eval_coordinate(std::size_t k, const RationalVector& x) const;
    /// The same min / expectation / max formula over (R ∪ {-inf})^n.
    TropVector eval(const TropVector& x) const;

    bool subfixed(const RationalVector& x) const;
    bool subfixed(const TropVector& x) const;

private:
    struct Choice {
        Rational payoff;
        std::vector<std::pair<std::size_t, Rational>> dist;  // absorbing class index -> probability
    };

    Rational max_value(std::size_t w, const RationalVector& x) const;
    void check_dim(std::size_t n) const;

    GameGraph graph_;
    AbsorptionTable table_;
    std::vector<std::vector<Choice>> min_rows_;  // per Min coordinate, over Max indices
    std::vector<std::vector<Choice>> max_rows_;  // per Max index, over Min coordinates
};

RationalVector eval_operator(const GameGraph& g, const RationalVector& x);
bool subfixed(const GameGraph& g, const RationalVector& x);

}  // namespace tropmetz
