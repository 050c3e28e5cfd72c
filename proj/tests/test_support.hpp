#pragma once

// Independent oracles shared by the unit tests and the acceptance runner.
// Nothing here calls the library routine it is meant to check.

#include "tropmetz/game_graph.hpp"
#include "tropmetz/json_io.hpp"
#include "tropmetz/semilinear_lp.hpp"
#include "tropmetz/trop.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace testsupport {

using namespace tropmetz;

inline std::string data_path(const std::string& name) { return std::string(TROPMETZ_DATA_DIR) + "/" + name; }

inline GameGraph load_fixture(const std::string& name) { return graph_from_json(read_json_file(data_path(name))); }

inline RationalVector rv(std::initializer_list<long> values) {
    RationalVector out;
    for (auto v : values) out.emplace_back(v);
    return out;
}

/// The surrogate for 2π stored in the example fixture.
inline Rational r_hat() { return make_rational(710, 113); }

// ---------------------------------------------------------------------------
// Tropical Carathéodory by brute force: y = ⊕_{k∈T} λ_k ⊙ g_k with max λ = 0,
// |T| <= n + 1, every finite y_i attained by an explicitly chosen generator.

inline bool caratheodory_member(const TropVector& y, const std::vector<TropVector>& gens) {
    const std::size_t n = y.size();
    const std::size_t limit = std::min(gens.size(), n + 1);
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < n; ++i) {
        if (y[i].is_finite()) finite.push_back(i);
    }
    std::vector<std::size_t> subset;
    std::function<bool(std::size_t)> choose;

    auto try_subset = [&]() {
        const std::size_t t = subset.size();
        std::vector<std::size_t> assign(finite.size(), 0);
        for (;;) {
            // λ from the assignment
            std::vector<std::optional<Rational>> lambda(t);
            bool ok = true;
            for (std::size_t a = 0; a < finite.size() && ok; ++a) {
                const auto& g = gens[subset[assign[a]]];
                const auto i = finite[a];
                if (g[i].is_neg_inf()) {
                    ok = false;
                    break;
                }
                const Rational l = y[i].value() - g[i].value();
                auto& slot = lambda[assign[a]];
                if (slot && *slot != l) ok = false;
                slot = l;
            }
            if (ok) {
                for (std::size_t k = 0; k < t && ok; ++k) {
                    if (lambda[k]) continue;
                    // unassigned: as large as allowed, capped at 0
                    Rational bound = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const auto& gi = gens[subset[k]][i];
                        if (gi.is_neg_inf()) continue;
                        if (y[i].is_neg_inf()) {
                            ok = false;
                            break;
                        }
                        bound = std::min(bound, Rational(y[i].value() - gi.value()));
                    }
                    lambda[k] = bound;
                }
            }
            if (ok) {
                Rational top = *lambda[0];
                for (const auto& l : lambda) top = std::max(top, *l);
                if (top == 0) {
                    TropVector combo(n);
                    for (std::size_t k = 0; k < t; ++k) {
                        for (std::size_t i = 0; i < n; ++i) combo[i] = tadd(combo[i], tmul(TropScalar(*lambda[k]), gens[subset[k]][i]));
                    }
                    if (combo == y) return true;
                }
            }
            // next assignment
            std::size_t pos = 0;
            while (pos < assign.size() && ++assign[pos] == t) assign[pos++] = 0;
            if (pos == assign.size()) return false;
        }
    };

    choose = [&](std::size_t start) -> bool {
        if (!subset.empty() && try_subset()) return true;
        if (subset.size() == limit) return false;
        for (std::size_t k = start; k < gens.size(); ++k) {
            subset.push_back(k);
            if (choose(k + 1)) return true;
            subset.pop_back();
        }
        return false;
    };
    return choose(0);
}

// ---------------------------------------------------------------------------
// LP oracle: enumerate the basic points of {A y <= b, y <= x}.

inline std::optional<RationalVector> solve_square(RationalMatrix m, RationalVector rhs) {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            const Rational f = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
            rhs[r] -= f * rhs[c];
        }
    }
    RationalVector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rhs[i] / m[i][i];
    return out;
}

/// nullopt when infeasible.
inline std::optional<Rational> vertex_lp_max(const RationalMatrix& A, const RationalVector& b, const RationalVector& x,
                                             std::size_t k) {
    const std::size_t n = x.size();
    RationalMatrix rows = A;
    RationalVector rhs = b;
    for (std::size_t i = 0; i < n; ++i) {
        RationalVector e(n, Rational(0));
        e[i] = 1;
        rows.push_back(e);
        rhs.push_back(x[i]);
    }
    std::optional<Rational> best;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (pick.size() == n) {
            RationalMatrix m;
            RationalVector r;
            for (auto i : pick) {
                m.push_back(rows[i]);
                r.push_back(rhs[i]);
            }
            const auto y = solve_square(m, r);
            if (!y) return;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                Rational lhs = 0;
                for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * (*y)[j];
                if (lhs > rhs[i]) return;
            }
            if (!best || (*y)[k] > *best) best = (*y)[k];
            return;
        }
        for (std::size_t i = start; i < rows.size(); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

// ---------------------------------------------------------------------------
// Direct evaluation over T^n of
//   F(x)_v = min_e ( r_e + 1/2 (M_{w_e} + M_{w'_e}) ),  M_w = max_{e'} (r_e' + x_{u_e'})
// for a compliant graph, read straight off the edge list.

inline TropVector shapley_metzler(const GameGraph& g, const TropVector& x) {
    std::map<std::size_t, std::size_t> coord;
    const auto mins = g.min_vertices();
    for (std::size_t i = 0; i < mins.size(); ++i) coord[mins[i]] = i;
    auto max_value = [&](std::size_t w) {
        TropScalar best;
        for (const auto& e : g.edges()) {
            if (e.tail != w) continue;
            best = tadd(best, tmul(TropScalar(e.label), x[coord.at(e.head)]));
        }
        return best;
    };
    TropVector out(mins.size());
    for (std::size_t i = 0; i < mins.size(); ++i) {
        std::optional<TropScalar> best;
        for (const auto& e : g.edges()) {
            if (e.tail != mins[i]) continue;
            std::size_t w1 = e.head, w2 = e.head;
            if (g.kind(e.head) == VertexKind::Random) {
                std::vector<std::size_t> heads;
                for (const auto& f : g.edges()) {
                    if (f.tail == e.head) heads.push_back(f.head);
                }
                w1 = heads.at(0);
                w2 = heads.at(1);
            }
            const auto m1 = max_value(w1);
            const auto m2 = max_value(w2);
            TropScalar val;
            if (m1.is_finite() && m2.is_finite()) val = TropScalar(Rational(e.label + (m1.value() + m2.value()) / 2));
            if (!best || val < *best) best = val;
        }
        out[i] = *best;
    }
    return out;
}

inline bool leq(const TropVector& a, const TropVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Labeled isomorphism of game graphs (vertex kinds and edge labels must match,
// ids are ignored). Backtracking with degree signatures.

inline bool isomorphic(const GameGraph& a, const GameGraph& b) {
    const std::size_t n = a.vertices().size();
    if (n != b.vertices().size() || a.edges().size() != b.edges().size()) return false;
    using Pair = std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>>;
    auto pairs = [](const GameGraph& g) {
        Pair p;
        for (const auto& e : g.edges()) p[{e.tail, e.head}].push_back(e.label);
        for (auto& [k, v] : p) std::sort(v.begin(), v.end());
        return p;
    };
    const auto pa = pairs(a);
    const auto pb = pairs(b);
    auto signature = [](const GameGraph& g, std::size_t v) {
        std::vector<std::string> out{to_string(g.kind(v))};
        std::vector<std::string> outs, ins;
        for (const auto& e : g.edges()) {
            if (e.tail == v) outs.push_back(std::string(to_string(g.kind(e.head))) + format_rational(e.label));
            if (e.head == v) ins.push_back(std::string(to_string(g.kind(e.tail))) + format_rational(e.label));
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        out.insert(out.end(), outs.begin(), outs.end());
        out.push_back("|");
        out.insert(out.end(), ins.begin(), ins.end());
        return out;
    };
    std::vector<std::vector<std::string>> sa(n), sb(n);
    for (std::size_t v = 0; v < n; ++v) {
        sa[v] = signature(a, v);
        sb[v] = signature(b, v);
    }
    auto labels = [](const Pair& p, std::size_t u, std::size_t v) {
        auto it = p.find({u, v});
        return it == p.end() ? std::vector<Rational>{} : it->second;
    };
    std::vector<std::size_t> map(n, n);
    std::vector<char> used(n, 0);
    std::function<bool(std::size_t)> rec = [&](std::size_t v) -> bool {
        if (v == n) return true;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || sa[v] != sb[c]) continue;
            bool ok = true;
            map[v] = c;
            for (std::size_t u = 0; u <= v && ok; ++u) {
                ok = labels(pa, u, v) == labels(pb, map[u], c) && labels(pa, v, u) == labels(pb, c, map[u]);
            }
            if (!ok) continue;
            used[c] = 1;
            if (rec(v + 1)) return true;
            used[c] = 0;
        }
        map[v] = n;
        return false;
    };
    return rec(0);
}

// ---------------------------------------------------------------------------
// Hand-built closed real tropical cones as polyhedral unions (A y <= b form).

struct HandCone {
    std::string name;
    PolyhedralUnion u;
};

inline std::vector<HandCone> hand_cones() {
    auto q = [](long p, long d = 1) { return make_rational(p, d); };
    std::vector<HandCone> out;
    // x1 <= x2
    out.push_back({"halfplane", PolyhedralUnion(2, {Polyhedron{{{q(1), q(-1)}}, {q(0)}}})});
    // |x1 - x2| <= 1
    out.push_back({"band", PolyhedralUnion(2, {Polyhedron{{{q(1), q(-1)}, {q(-1), q(1)}}, {q(1), q(1)}}})});
    // x1 <= max(x2, x3)
    out.push_back({"max", PolyhedralUnion(3, {Polyhedron{{{q(1), q(-1), q(0)}}, {q(0)}},
                                              Polyhedron{{{q(1), q(0), q(-1)}}, {q(0)}}})});
    // x1 <= (x2 + x3)/2 + 1, x4 <= x1, x2 <= x4 + 2
    out.push_back({"averages", PolyhedralUnion(4, {Polyhedron{{{q(1), q(-1, 2), q(-1, 2), q(0)},
                                                               {q(-1), q(0), q(0), q(1)},
                                                               {q(0), q(1), q(0), q(-1)}},
                                                              {q(1), q(0), q(2)}}})});
    // x <= F(x) for the running example, one piece per choice of maximizing term
    const RationalVector first[3][2] = {{{q(1), q(0), q(-1)}, {q(1), q(-1, 3), q(-2, 3)}},
                                        {{q(-1, 4), q(1), q(-3, 4)}, {q(0), q(1), q(-1)}},
                                        {{q(-1), q(0), q(1)}, {q(0), q(-1), q(1)}}};
    const Rational rhs[3][2] = {{q(1), q(4, 3)}, {q(3, 4), r_hat()}, {q(0), q(0)}};
    std::vector<Polyhedron> pieces;
    for (int c = 0; c < 8; ++c) {
        Polyhedron p;
        for (int k = 0; k < 3; ++k) {
            const int pick = (c >> k) & 1;
            p.A.push_back(first[k][pick]);
            p.b.push_back(rhs[k][pick]);
        }
        pieces.push_back(std::move(p));
    }
    out.push_back({"example", PolyhedralUnion(3, std::move(pieces))});
    return out;
}

}  // namespace testsupport
