#include "tropmetz/game_graph.hpp"

#include "tropmetz/error.hpp"
#include "tropmetz/linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tropmetz {

const char* to_string(VertexKind kind) noexcept {
    switch (kind) {
        case VertexKind::Min: return "min";
        case VertexKind::Max: return "max";
        case VertexKind::Random: return "random";
    }
    return "?";
}

std::size_t GameGraph::add_vertex(VertexKind kind, std::string id) {
    if (id.empty()) id = fresh_vertex_id(kind == VertexKind::Min ? "n" : kind == VertexKind::Max ? "m" : "r");
    if (vertex_ids_.count(id)) throw Error(ErrorCode::Malformed, "duplicate vertex id '" + id + "'");
    vertex_ids_.emplace(id, vertices_.size());
    vertices_.push_back({std::move(id), kind});
    return vertices_.size() - 1;
}

std::size_t GameGraph::add_edge(std::size_t tail, std::size_t head, Rational label, std::string id) {
    if (tail >= vertices_.size() || head >= vertices_.size()) {
        throw Error(ErrorCode::Malformed, "edge endpoint out of range");
    }
    if (id.empty()) id = fresh_edge_id();
    if (edge_ids_.count(id)) throw Error(ErrorCode::Malformed, "duplicate edge id '" + id + "'");
    edge_ids_.emplace(id, edges_.size());
    label.canonicalize();
    edges_.push_back({std::move(id), tail, head, std::move(label)});
    return edges_.size() - 1;
}

void GameGraph::remove_edge(std::size_t e) {
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(e));
    reindex();
}

void GameGraph::remove_vertex(std::size_t v) {
    for (const auto& e : edges_) {
        if (e.tail == v || e.head == v) throw Error(ErrorCode::PreconditionViolated, "vertex still has edges");
    }
    vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(v));
    for (auto& e : edges_) {
        if (e.tail > v) --e.tail;
        if (e.head > v) --e.head;
    }
    reindex();
}

void GameGraph::set_head(std::size_t e, std::size_t head) {
    if (head >= vertices_.size()) throw Error(ErrorCode::Malformed, "edge endpoint out of range");
    edges_.at(e).head = head;
}

void GameGraph::set_tail(std::size_t e, std::size_t tail) {
    if (tail >= vertices_.size()) throw Error(ErrorCode::Malformed, "edge endpoint out of range");
    edges_.at(e).tail = tail;
}

void GameGraph::set_label(std::size_t e, Rational label) {
    label.canonicalize();
    edges_.at(e).label = std::move(label);
}

void GameGraph::reindex() {
    vertex_ids_.clear();
    edge_ids_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_ids_.emplace(vertices_[i].id, i);
    for (std::size_t i = 0; i < edges_.size(); ++i) edge_ids_.emplace(edges_[i].id, i);
}

std::vector<std::size_t> GameGraph::of_kind(VertexKind kind) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v].kind == kind) out.push_back(v);
    }
    return out;
}

std::size_t GameGraph::dimension() const {
    return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(),
                                                  [](const Vertex& v) { return v.kind == VertexKind::Min; }));
}

std::vector<std::size_t> GameGraph::out_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].tail == v) out.push_back(e);
    }
    return out;
}

std::vector<std::size_t> GameGraph::in_edges(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].head == v) out.push_back(e);
    }
    return out;
}

std::optional<std::size_t> GameGraph::find_vertex(std::string_view id) const {
    auto it = vertex_ids_.find(std::string(id));
    if (it == vertex_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> GameGraph::find_edge(std::string_view id) const {
    auto it = edge_ids_.find(std::string(id));
    if (it == edge_ids_.end()) return std::nullopt;
    return it->second;
}

std::size_t GameGraph::vertex_index(std::string_view id) const {
    if (auto v = find_vertex(id)) return *v;
    throw Error(ErrorCode::Malformed, "unknown vertex id '" + std::string(id) + "'");
}

std::size_t GameGraph::edge_index(std::string_view id) const {
    if (auto e = find_edge(id)) return *e;
    throw Error(ErrorCode::Malformed, "unknown edge id '" + std::string(id) + "'");
}

std::string GameGraph::fresh_vertex_id(std::string_view prefix) {
    std::string id;
    do {
        id = std::string(prefix) + std::to_string(next_vertex_id_++);
    } while (vertex_ids_.count(id));
    return id;
}

std::string GameGraph::fresh_edge_id() {
    std::string id;
    do {
        id = "e" + std::to_string(next_edge_id_++);
    } while (edge_ids_.count(id));
    return id;
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency out_adjacency(const GameGraph& g) {
    Adjacency out(g.vertices().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) out[g.edge(e).tail].push_back(e);
    return out;
}

// Searches from the heads of the out-edges of `start` through Random vertices
// only; returns the first vertex of kind `forbidden` that is hit.
std::optional<std::size_t> random_only_hit(const GameGraph& g, const Adjacency& out, std::size_t start,
                                           VertexKind forbidden) {
    std::vector<char> seen(g.vertices().size(), 0);
    std::vector<std::size_t> stack;
    for (auto e : out[start]) stack.push_back(g.edge(e).head);
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = 1;
        if (g.kind(v) == forbidden) return v;
        if (g.kind(v) != VertexKind::Random) continue;
        for (auto e : out[v]) stack.push_back(g.edge(e).head);
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_graph(const GameGraph& g) {
    ValidationReport report;
    const auto out = out_adjacency(g);

    if (g.min_vertices().empty() || g.max_vertices().empty()) {
        report.players_nonempty = false;
        report.failures.push_back("graph needs at least one Min and one Max vertex");
    }
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        const auto& id = g.vertex(v).id;
        if (out[v].empty()) {
            report.out_degree = false;
            report.failures.push_back("vertex '" + id + "' has no outgoing edge");
        }
        if (g.kind(v) != VertexKind::Random) continue;
        Rational total = 0;
        for (auto e : out[v]) {
            const auto& q = g.edge(e).label;
            if (sgn(q) <= 0) {
                report.labels = false;
                report.failures.push_back("edge '" + g.edge(e).id + "' has nonpositive probability");
            }
            total += q;
        }
        if (!out[v].empty() && total != 1) {
            report.probability_sums = false;
            report.failures.push_back("probabilities out of '" + id + "' sum to " + pretty_rational(total));
        }
    }

    for (auto u : g.min_vertices()) {
        if (auto hit = random_only_hit(g, out, u, VertexKind::Min)) {
            report.min_paths = false;
            report.failures.push_back("path from Min '" + g.vertex(u).id + "' to Min '" + g.vertex(*hit).id +
                                      "' avoids Max vertices");
        }
    }
    for (auto w : g.max_vertices()) {
        if (auto hit = random_only_hit(g, out, w, VertexKind::Max)) {
            report.max_paths = false;
            report.failures.push_back("path from Max '" + g.vertex(w).id + "' to Max '" + g.vertex(*hit).id +
                                      "' avoids Min vertices");
        }
    }

    // backward search from the absorbing vertices
    std::vector<char> reaches(g.vertices().size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        if (g.is_absorbing(v)) {
            reaches[v] = 1;
            stack.push_back(v);
        }
    }
    Adjacency in(g.vertices().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) in[g.edge(e).head].push_back(e);
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto e : in[v]) {
            const auto t = g.edge(e).tail;
            if (!reaches[t]) {
                reaches[t] = 1;
                stack.push_back(t);
            }
        }
    }
    for (auto r : g.random_vertices()) {
        if (!reaches[r]) {
            report.random_reach = false;
            report.failures.push_back("Random vertex '" + g.vertex(r).id + "' reaches no Min or Max vertex");
        }
    }
    return report;
}

Rational AbsorptionTable::probability(std::size_t e, std::size_t v) const {
    for (const auto& [w, p] : of_edge(e)) {
        if (w == v) return p;
    }
    return 0;
}

std::vector<AbsorptionTable::Distribution> vertex_absorption(const GameGraph& g) {
    const std::size_t nv = g.vertices().size();
    std::vector<AbsorptionTable::Distribution> result(nv);
    const auto out = out_adjacency(g);

    // connected blocks of the Random-only subgraph
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : g.edges()) {
        if (!g.is_absorbing(e.tail) && !g.is_absorbing(e.head)) parent[find(e.tail)] = find(e.head);
    }
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t v = 0; v < nv; ++v) {
        if (g.is_absorbing(v)) {
            result[v] = {{v, Rational(1)}};
        } else {
            blocks[find(v)].push_back(v);
        }
    }

    for (const auto& [root, members] : blocks) {
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
        std::map<std::size_t, std::size_t> targets;
        for (auto v : members) {
            for (auto e : out[v]) {
                const auto h = g.edge(e).head;
                if (g.is_absorbing(h)) targets.emplace(h, 0);
            }
        }
        std::size_t t = 0;
        for (auto& [v, idx] : targets) idx = t++;

        const std::size_t k = members.size();
        RationalMatrix a(k, RationalVector(k, Rational(0)));
        RationalMatrix b(k, RationalVector(targets.size(), Rational(0)));
        for (std::size_t i = 0; i < k; ++i) {
            a[i][i] += 1;
            for (auto e : out[members[i]]) {
                const auto& edge = g.edge(e);
                if (g.is_absorbing(edge.head)) {
                    b[i][targets[edge.head]] += edge.label;
                } else {
                    a[i][local.at(edge.head)] -= edge.label;
                }
            }
        }
        RationalMatrix x;
        try {
            x = solve_exact(std::move(a), std::move(b));
        } catch (const Error&) {
            throw Error(ErrorCode::SingularSystem, "absorbing chain is singular around Random vertex '" +
                                                       g.vertex(members.front()).id + "'");
        }
        for (std::size_t i = 0; i < k; ++i) {
            auto& dist = result[members[i]];
            for (const auto& [v, idx] : targets) {
                if (sgn(x[i][idx]) != 0) dist.emplace_back(v, x[i][idx]);
            }
        }
    }
    return result;
}

AbsorptionTable absorption(const GameGraph& g) {
    const auto per_vertex = vertex_absorption(g);
    std::vector<AbsorptionTable::Distribution> per_edge;
    per_edge.reserve(g.edges().size());
    for (const auto& e : g.edges()) per_edge.push_back(per_vertex[e.head]);
    return AbsorptionTable(std::move(per_edge));
}

EncodedOperator::EncodedOperator(GameGraph g) : graph_(std::move(g)) {
    const auto report = validate_graph(graph_);
    if (!report.ok()) {
        std::string msg;
        for (const auto& f : report.failures) msg += (msg.empty() ? "" : "; ") + f;
        throw Error(ErrorCode::ValidationFailed, msg);
    }
    table_ = absorption(graph_);

    const std::size_t nv = graph_.vertices().size();
    std::vector<std::size_t> class_index(nv, 0);
    const auto mins = graph_.min_vertices();
    const auto maxs = graph_.max_vertices();
    for (std::size_t i = 0; i < mins.size(); ++i) class_index[mins[i]] = i;
    for (std::size_t i = 0; i < maxs.size(); ++i) class_index[maxs[i]] = i;

    auto compile = [&](std::size_t v, VertexKind target) {
        std::vector<Choice> choices;
        for (auto e : graph_.out_edges(v)) {
            Choice c{graph_.edge(e).label, {}};
            for (const auto& [w, p] : table_.of_edge(e)) {
                if (graph_.kind(w) != target) {
                    throw Error(ErrorCode::ValidationFailed, "edge '" + graph_.edge(e).id +
                                                                 "' is absorbed by a vertex of its own class");
                }
                c.dist.emplace_back(class_index[w], p);
            }
            choices.push_back(std::move(c));
        }
        return choices;
    };
    for (auto v : mins) min_rows_.push_back(compile(v, VertexKind::Max));
    for (auto w : maxs) max_rows_.push_back(compile(w, VertexKind::Min));
}

void EncodedOperator::check_dim(std::size_t n) const {
    if (n != dimension()) {
        throw Error(ErrorCode::DimensionMismatch, "point of dimension " + std::to_string(n) + " for operator on R^" +
                                                      std::to_string(dimension()));
    }
}

Rational EncodedOperator::max_value(std::size_t w, const RationalVector& x) const {
    bool first = true;
    Rational best;
    for (const auto& c : max_rows_[w]) {
        Rational v = c.payoff;
        for (const auto& [u, p] : c.dist) v += p * x[u];
        if (first || v > best) best = v;
        first = false;
    }
    return best;
}

RationalVector EncodedOperator::eval(const RationalVector& x) const {
    check_dim(x.size());
    RationalVector m(max_rows_.size());
    for (std::size_t w = 0; w < max_rows_.size(); ++w) m[w] = max_value(w, x);
    RationalVector out(min_rows_.size());
    for (std::size_t v = 0; v < min_rows_.size(); ++v) {
        bool first = true;
        for (const auto& c : min_rows_[v]) {
            Rational val = c.payoff;
            for (const auto& [w, p] : c.dist) val += p * m[w];
            if (first || val < out[v]) out[v] = val;
            first = false;
        }
    }
    return out;
}

Rational EncodedOperator::eval_coordinate(std::size_t k, const RationalVector& x) const {
    check_dim(x.size());
    if (k >= min_rows_.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate out of range");
    bool first = true;
    Rational best;
    for (const auto& c : min_rows_[k]) {
        Rational val = c.payoff;
        for (const auto& [w, p] : c.dist) val += p * max_value(w, x);
        if (first || val < best) best = val;
        first = false;
    }
    return best;
}

TropVector EncodedOperator::eval(const TropVector& x) const {
    check_dim(x.size());
    auto affine = [](const Rational& payoff, const auto& dist, const TropVector& values) {
        Rational acc = payoff;
        for (const auto& [i, p] : dist) {
            if (values[i].is_neg_inf()) return TropScalar();
            acc += p * values[i].value();
        }
        return TropScalar(acc);
    };
    TropVector m(max_rows_.size());
    for (std::size_t w = 0; w < max_rows_.size(); ++w) {
        for (const auto& c : max_rows_[w]) m[w] = tadd(m[w], affine(c.payoff, c.dist, x));
    }
    TropVector out(min_rows_.size());
    for (std::size_t v = 0; v < min_rows_.size(); ++v) {
        bool first = true;
        for (const auto& c : min_rows_[v]) {
            const auto val = affine(c.payoff, c.dist, m);
            if (first || val < out[v]) out[v] = val;
            first = false;
        }
    }
    return out;
}

bool EncodedOperator::subfixed(const RationalVector& x) const {
    const auto f = eval(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > f[i]) return false;
    }
    return true;
}

bool EncodedOperator::subfixed(const TropVector& x) const {
    const auto f = eval(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > f[i]) return false;
    }
    return true;
}

RationalVector eval_operator(const GameGraph& g, const RationalVector& x) {
    return EncodedOperator(g).eval(x);
}

bool subfixed(const GameGraph& g, const RationalVector& x) {
    return EncodedOperator(g).subfixed(x);
}

}  // namespace tropmetz
