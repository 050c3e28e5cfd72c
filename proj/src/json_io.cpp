#include "tropmetz/json_io.hpp"

#include "tropmetz/error.hpp"

#include <fstream>
#include <sstream>

namespace tropmetz {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string id_from_json(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    malformed("ids must be strings or integers");
}

std::size_t index_from_json(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0) malformed("expected a nonnegative integer");
    return j.get<std::size_t>();
}

RationalVector rational_vector(const Json& j) {
    if (!j.is_array()) malformed("expected an array of rationals");
    RationalVector out;
    for (const auto& v : j) out.push_back(rational_from_json(v));
    return out;
}

RationalMatrix rational_matrix(const Json& j) {
    if (!j.is_array()) malformed("expected a matrix");
    RationalMatrix out;
    for (const auto& row : j) out.push_back(rational_vector(row));
    return out;
}

Json rational_array(const RationalVector& v) {
    Json out = Json::array();
    for (const auto& q : v) out.push_back(rational_to_json(q));
    return out;
}

}  // namespace

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    malformed("rationals must be \"p/q\" strings or integers");
}

Json trop_to_json(const TropScalar& a) { return format_trop(a); }

TropScalar trop_from_json(const Json& j) {
    if (j.is_string()) return parse_trop(j.get<std::string>());
    return rational_from_json(j);
}

Json signed_to_json(const SignedTropScalar& a) { return Json{{"sign", a.sign()}, {"abs", trop_to_json(a.modulus())}}; }

SignedTropScalar signed_from_json(const Json& j) {
    const auto& s = field(j, "sign");
    if (!s.is_number_integer()) malformed("sign must be -1, 0 or 1");
    const int sign = s.get<int>();
    if (sign < -1 || sign > 1) malformed("sign must be -1, 0 or 1");
    return SignedTropScalar(sign, trop_from_json(field(j, "abs")));
}

Json graph_to_json(const GameGraph& g) {
    Json out;
    for (auto kind : {VertexKind::Min, VertexKind::Max, VertexKind::Random}) {
        Json ids = Json::array();
        for (const auto& v : g.vertices()) {
            if (v.kind == kind) ids.push_back(v.id);
        }
        out[to_string(kind)] = std::move(ids);
    }
    Json edges = Json::array();
    for (const auto& e : g.edges()) {
        const bool random = g.kind(e.tail) == VertexKind::Random;
        edges.push_back(Json{{"id", e.id},
                             {"tail", g.vertex(e.tail).id},
                             {"head", g.vertex(e.head).id},
                             {"payoff", random ? Json(nullptr) : rational_to_json(e.label)},
                             {"prob", random ? rational_to_json(e.label) : Json(nullptr)}});
    }
    out["edges"] = std::move(edges);
    return out;
}

GameGraph graph_from_json(const Json& j) {
    GameGraph g;
    for (auto kind : {VertexKind::Min, VertexKind::Max, VertexKind::Random}) {
        const char* key = to_string(kind);
        if (!j.contains(key) && kind == VertexKind::Random) continue;
        const auto& ids = field(j, key);
        if (!ids.is_array()) malformed(std::string("'") + key + "' must be an array");
        for (const auto& id : ids) g.add_vertex(kind, id_from_json(id));
    }
    const auto& edges = field(j, "edges");
    if (!edges.is_array()) malformed("'edges' must be an array");
    for (const auto& e : edges) {
        const auto tail = g.vertex_index(id_from_json(field(e, "tail")));
        const auto head = g.vertex_index(id_from_json(field(e, "head")));
        const bool random = g.kind(tail) == VertexKind::Random;
        const char* key = random ? "prob" : "payoff";
        const char* other = random ? "payoff" : "prob";
        if (e.contains(other) && !e.at(other).is_null()) {
            malformed(std::string("edge out of a ") + to_string(g.kind(tail)) + " vertex must not carry '" + other + "'");
        }
        const auto& label = field(e, key);
        if (label.is_null()) malformed(std::string("edge lacks '") + key + "'");
        const std::string id = e.contains("id") ? id_from_json(e.at("id")) : std::string();
        g.add_edge(tail, head, rational_from_json(label), id);
    }
    return g;
}

Json minmax_to_json(const MinMaxOperator& op) {
    Json matrices = Json::array();
    for (const auto& a : op.matrices) {
        Json m = Json::array();
        for (const auto& row : a) m.push_back(rational_array(row));
        matrices.push_back(std::move(m));
    }
    Json offsets = Json::array();
    for (const auto& b : op.offsets) offsets.push_back(rational_array(b));
    return Json{{"n", op.n}, {"matrices", matrices}, {"offsets", offsets}, {"selections", op.selections}};
}

MinMaxOperator minmax_from_json(const Json& j) {
    MinMaxOperator op;
    op.n = index_from_json(field(j, "n"));
    for (const auto& a : field(j, "matrices")) op.matrices.push_back(rational_matrix(a));
    for (const auto& b : field(j, "offsets")) op.offsets.push_back(rational_vector(b));
    const auto& sel = field(j, "selections");
    if (!sel.is_array()) malformed("'selections' must be an array");
    for (const auto& per_k : sel) {
        std::vector<std::vector<std::size_t>> family;
        for (const auto& subset : per_k) {
            std::vector<std::size_t> s;
            for (const auto& idx : subset) s.push_back(index_from_json(idx));
            family.push_back(std::move(s));
        }
        op.selections.push_back(std::move(family));
    }
    return op;
}

Json pencil_to_json(const MetzlerPencil& p, std::size_t visible, const Json& witness, bool sparse) {
    Json out{{"m", p.rows()}, {"n", p.vars()}};
    if (sparse) {
        Json entries = Json::array();
        for (const auto& [ij, e] : p.entries()) {
            auto push = [&](std::size_t k, const SignedTropScalar& c) {
                if (!c.is_zero()) entries.push_back(Json{{"i", ij.first}, {"j", ij.second}, {"k", k}, {"coef", signed_to_json(c)}});
            };
            push(0, e.constant);
            for (const auto& [var, c] : e.terms) push(var + 1, c);
        }
        out["entries"] = std::move(entries);
    } else {
        Json matrices = Json::array();
        for (std::size_t k = 0; k <= p.vars(); ++k) {
            Json m = Json::array();
            for (std::size_t i = 0; i < p.rows(); ++i) {
                Json row = Json::array();
                for (std::size_t jj = 0; jj < p.rows(); ++jj) row.push_back(signed_to_json(p.coefficient(k, i, jj)));
                m.push_back(std::move(row));
            }
            matrices.push_back(std::move(m));
        }
        out["matrices"] = std::move(matrices);
    }
    out["visible"] = visible;
    out["witness"] = witness;
    return out;
}

ProjectedPencil pencil_from_json(const Json& j) {
    ProjectedPencil pp;
    const auto m = index_from_json(field(j, "m"));
    const auto n = index_from_json(field(j, "n"));
    pp.pencil = MetzlerPencil(m, n);
    pp.visible = j.contains("visible") ? index_from_json(j.at("visible")) : n;
    if (pp.visible > n) malformed("'visible' exceeds the variable count");
    auto put = [&](std::size_t k, std::size_t i, std::size_t jj, const SignedTropScalar& c) {
        if (k > n || i >= m || jj >= m) malformed("pencil entry out of range");
        pp.pencil.add(i, jj, k == 0 ? std::nullopt : std::optional<std::size_t>(k - 1), c);
    };
    if (j.contains("entries")) {
        for (const auto& e : j.at("entries")) {
            put(index_from_json(field(e, "k")), index_from_json(field(e, "i")), index_from_json(field(e, "j")),
                signed_from_json(field(e, "coef")));
        }
        return pp;
    }
    const auto& mats = field(j, "matrices");
    if (!mats.is_array() || mats.size() != n + 1) malformed("expected n + 1 matrices");
    for (std::size_t k = 0; k <= n; ++k) {
        const auto& mat = mats[k];
        if (!mat.is_array() || mat.size() != m) malformed("matrix has wrong row count");
        for (std::size_t i = 0; i < m; ++i) {
            if (!mat[i].is_array() || mat[i].size() != m) malformed("matrix row has wrong length");
            for (std::size_t jj = 0; jj < m; ++jj) {
                const auto c = signed_from_json(mat[i][jj]);
                if (c != signed_from_json(mat[jj][i])) malformed("pencil matrices must be symmetric");
                if (jj >= i) put(k, i, jj, c);
            }
        }
    }
    return pp;
}

Json union_to_json(const PolyhedralUnion& u) {
    Json pieces = Json::array();
    for (const auto& p : u.pieces) {
        Json a = Json::array();
        for (const auto& row : p.A) a.push_back(rational_array(row));
        pieces.push_back(Json{{"A", a}, {"b", rational_array(p.b)}});
    }
    return Json{{"n", u.n}, {"pieces", pieces}};
}

PolyhedralUnion union_from_json(const Json& j) {
    const auto n = index_from_json(field(j, "n"));
    std::vector<Polyhedron> pieces;
    for (const auto& p : field(j, "pieces")) pieces.push_back({rational_matrix(field(p, "A")), rational_vector(field(p, "b"))});
    try {
        return PolyhedralUnion(n, std::move(pieces));
    } catch (const Error& e) {
        malformed(e.what());
    }
}

Json witness_to_json(const WitnessMap& w) { return Json{{"kind", w.kind()}, {"new_coords", w.new_coords()}}; }

Json validation_to_json(const ValidationReport& r) {
    return Json{{"ok", r.ok()},
                {"players_nonempty", r.players_nonempty},
                {"out_degree", r.out_degree},
                {"labels", r.labels},
                {"probability_sums", r.probability_sums},
                {"min_paths", r.min_paths},
                {"max_paths", r.max_paths},
                {"random_reach", r.random_reach},
                {"failures", r.failures}};
}

TropVector parse_point(const std::string& text) {
    TropVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_trop(item));
    if (out.empty()) malformed("empty point");
    return out;
}

std::string format_point(const TropVector& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ",";
        out += format_trop(x[i]);
    }
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) malformed("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        malformed("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace tropmetz
