#include "tropmetz/transforms.hpp"

#include "tropmetz/error.hpp"

#include <map>
#include <utility>

namespace tropmetz {

WitnessMap::WitnessMap(std::string kind, std::size_t source_dim, std::vector<std::string> new_coords, LiftFn lift)
    : kind_(std::move(kind)), source_dim_(source_dim), new_coords_(std::move(new_coords)), lift_(std::move(lift)) {}

WitnessMap WitnessMap::identity(std::size_t n, std::string kind) {
    return WitnessMap(std::move(kind), n, {}, [](const RationalVector& x) { return x; });
}

RationalVector WitnessMap::lift(const RationalVector& x) const {
    if (x.size() != source_dim_) throw Error(ErrorCode::DimensionMismatch, "witness expects a point of R^" + std::to_string(source_dim_));
    auto y = lift_ ? lift_(x) : x;
    if (y.size() != target_dim()) throw Error(ErrorCode::DimensionMismatch, "witness produced a point of wrong size");
    return y;
}

RationalVector WitnessMap::project(const RationalVector& y) const {
    if (y.size() != target_dim()) throw Error(ErrorCode::DimensionMismatch, "point does not live in the target space");
    return RationalVector(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(source_dim_));
}

WitnessMap WitnessMap::then(const WitnessMap& next, std::string kind) const {
    if (next.source_dim() != target_dim()) throw Error(ErrorCode::DimensionMismatch, "witnesses do not compose");
    auto coords = new_coords_;
    coords.insert(coords.end(), next.new_coords_.begin(), next.new_coords_.end());
    auto first = *this;
    auto second = next;
    return WitnessMap(std::move(kind), source_dim_, std::move(coords),
                      [first, second](const RationalVector& x) { return second.lift(first.lift(x)); });
}

namespace {

void require_valid(const GameGraph& g) {
    const auto report = validate_graph(g);
    if (report.ok()) return;
    std::string msg;
    for (const auto& f : report.failures) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::ValidationFailed, msg);
}

// Redirects the in-edges of Random vertices with a single out-edge to that
// edge's head. The redirected edges keep their own labels.
void contract_unit_randoms(GameGraph& g) {
    for (bool changed = true; changed;) {
        changed = false;
        for (auto v : g.random_vertices()) {
            const auto out = g.out_edges(v);
            if (out.size() != 1) continue;
            const auto head = g.edge(out[0]).head;
            if (head == v) continue;  // excluded by validation
            for (auto e : g.in_edges(v)) g.set_head(e, head);
            g.remove_edge(out[0]);
            g.remove_vertex(v);
            changed = true;
            break;
        }
    }
}

// v keeps its first edge and gets a new edge to u, which takes the rest.
void reduce_degrees(GameGraph& g) {
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        if (g.kind(v) != VertexKind::Random) continue;
        const auto out = g.out_edges(v);
        if (out.size() < 3) continue;
        const Rational rest = 1 - g.edge(out[0]).label;
        const auto u = g.add_vertex(VertexKind::Random, g.fresh_vertex_id("r"));
        for (std::size_t i = 1; i < out.size(); ++i) {
            g.set_tail(out[i], u);
            g.set_label(out[i], g.edge(out[i]).label / rest);
        }
        g.add_edge(v, u, rest, g.fresh_edge_id());
    }
}

std::vector<int> bits(const mpz_class& value, std::size_t count) {
    std::vector<int> out(count);
    for (std::size_t s = 0; s < count; ++s) out[s] = mpz_tstbit(value.get_mpz_t(), s);
    return out;
}

void binary_gadget(GameGraph& g, std::size_t v) {
    const auto out = g.out_edges(v);
    const Rational q = g.edge(out[0]).label;
    const auto w = g.edge(out[0]).head;
    const auto u = g.edge(out[1]).head;
    const mpz_class a = q.get_num();
    const mpz_class b = q.get_den();
    const std::size_t r = mpz_sizeinbase(b.get_mpz_t(), 2) - 1;  // 2^r <= b < 2^(r+1)
    const auto c = bits(a, r + 1);
    const auto d = bits(b - a, r + 1);

    const std::string e_w = g.edge(out[0]).id;
    const std::string e_u = g.edge(out[1]).id;
    g.remove_edge(g.edge_index(e_w));
    g.remove_edge(g.edge_index(e_u));

    const Rational half(1, 2);
    std::vector<std::size_t> top{v};
    for (std::size_t t = 1; t <= r; ++t) top.push_back(g.add_vertex(VertexKind::Random, g.fresh_vertex_id("r")));
    std::vector<std::size_t> bottom;
    for (std::size_t t = 0; t <= r; ++t) bottom.push_back(g.add_vertex(VertexKind::Random, g.fresh_vertex_id("r")));

    for (std::size_t t = 0; t <= r; ++t) {
        g.add_edge(top[t], t < r ? top[t + 1] : v, half, g.fresh_edge_id());
        g.add_edge(top[t], bottom[t], half, g.fresh_edge_id());
        const std::size_t s = r - t;
        g.add_edge(bottom[t], c[s] ? w : v, half, g.fresh_edge_id());
        g.add_edge(bottom[t], d[s] ? u : v, half, g.fresh_edge_id());
    }
}

}  // namespace

GameGraph zwick_paterson(const GameGraph& source) {
    require_valid(source);
    GameGraph g = source;
    contract_unit_randoms(g);
    reduce_degrees(g);
    const Rational half(1, 2);
    for (auto v : g.random_vertices()) {
        const auto out = g.out_edges(v);
        if (g.edge(out[0]).label != half) binary_gadget(g, v);
    }
    return g;
}

TransformResult first_transformation(const GameGraph& source) {
    const EncodedOperator op(source);
    GameGraph g = source;

    std::vector<std::size_t> coord(source.vertices().size(), 0);
    const auto mins = source.min_vertices();
    for (std::size_t i = 0; i < mins.size(); ++i) coord[mins[i]] = i;

    std::vector<std::string> new_coords;
    std::vector<AbsorptionTable::Distribution> lift_rows;
    for (std::size_t e = 0; e < source.edges().size(); ++e) {
        const auto& edge = source.edge(e);
        if (source.kind(edge.tail) != VertexKind::Max) continue;
        const auto node = g.add_vertex(VertexKind::Min, g.fresh_vertex_id("n"));
        g.set_head(e, node);
        g.add_edge(node, edge.head, 0, g.fresh_edge_id());
        new_coords.push_back(g.vertex(node).id);
        AbsorptionTable::Distribution row;
        for (const auto& [v, p] : op.table().of_edge(e)) row.emplace_back(coord[v], p);
        lift_rows.push_back(std::move(row));
    }
    for (auto v : mins) {
        for (auto e : g.in_edges(v)) {
            const auto gate = g.add_vertex(VertexKind::Max, g.fresh_vertex_id("m"));
            g.set_head(e, gate);
            g.add_edge(gate, v, 0, g.fresh_edge_id());
        }
    }

    const std::size_t n = mins.size();
    auto lift = [rows = std::move(lift_rows)](const RationalVector& x) {
        RationalVector y = x;
        for (const auto& row : rows) {
            Rational acc = 0;
            for (const auto& [i, p] : row) acc += p * x[i];
            y.push_back(acc);
        }
        return y;
    };
    return {std::move(g), WitnessMap("t1", n, std::move(new_coords), std::move(lift))};
}

TransformResult second_transformation(const GameGraph& source, const std::string& edge_id) {
    require_valid(source);
    const auto e = source.edge_index(edge_id);
    const auto& edge = source.edge(e);
    if (source.kind(edge.tail) != VertexKind::Random || source.kind(edge.head) != VertexKind::Random) {
        throw Error(ErrorCode::PreconditionViolated, "edge '" + edge_id + "' does not join two Random vertices");
    }
    for (const auto& f : source.edges()) {
        if (source.kind(f.tail) == VertexKind::Max && source.kind(f.head) != VertexKind::Min) {
            throw Error(ErrorCode::PreconditionViolated, "Max edge '" + f.id + "' does not head a Min vertex");
        }
    }

    GameGraph g = source;
    const auto head = edge.head;
    const auto gate = g.add_vertex(VertexKind::Max, g.fresh_vertex_id("m"));
    const auto node = g.add_vertex(VertexKind::Min, g.fresh_vertex_id("n"));
    g.set_head(e, gate);
    g.add_edge(gate, node, 0, g.fresh_edge_id());
    g.add_edge(node, head, 0, g.fresh_edge_id());

    const std::size_t n = source.dimension();
    auto target = std::make_shared<const EncodedOperator>(g);
    // F'(x, y)_{n+1} = c + p y with p < 1, where p is the chance of coming back
    // to the new Max vertex; the lift is the fixed point c / (1 - p).
    auto lift = [target, n](const RationalVector& x) {
        RationalVector y = x;
        y.push_back(0);
        const Rational c = target->eval_coordinate(n, y);
        y[n] = 1;
        const Rational p = target->eval_coordinate(n, y) - c;
        y[n] = c / (1 - p);
        return y;
    };
    std::vector<std::string> coords{g.vertex(node).id};
    return {std::move(g), WitnessMap("t2", n, std::move(coords), std::move(lift))};
}

TransformResult pipeline(const GameGraph& source) {
    const std::size_t n = source.dimension();
    auto current = first_transformation(zwick_paterson(source));
    auto witness = WitnessMap::identity(n, "pipeline").then(current.witness, "pipeline");

    std::vector<std::string> chords;
    for (const auto& e : current.graph.edges()) {
        if (current.graph.kind(e.tail) == VertexKind::Random && current.graph.kind(e.head) == VertexKind::Random) {
            chords.push_back(e.id);
        }
    }
    for (const auto& id : chords) {
        auto step = second_transformation(current.graph, id);
        witness = witness.then(step.witness, "pipeline");
        current.graph = std::move(step.graph);
    }
    return {std::move(current.graph), std::move(witness)};
}

}  // namespace tropmetz
