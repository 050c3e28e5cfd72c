#include "tropmetz/pencil.hpp"

#include "tropmetz/error.hpp"

#include <algorithm>
#include <memory>

namespace tropmetz {

namespace {

const SignedTropScalar pos0 = SignedTropScalar::positive(TropScalar(0));
const SignedTropScalar neg0 = SignedTropScalar::negative(TropScalar(0));

void accumulate(std::pair<TropScalar, TropScalar>& acc, const SignedTropScalar& term) {
    if (term.sign() > 0) acc.first = tadd(acc.first, term.modulus());
    if (term.sign() < 0) acc.second = tadd(acc.second, term.modulus());
}

SignedTropScalar merge(const SignedTropScalar& a, const SignedTropScalar& b) {
    if (a.sign() * b.sign() < 0) throw Error(ErrorCode::SignCollision, "a pencil entry needs both signs for one monomial");
    return sadd(a, b);
}

TropVector shift(TropVector x, const TropScalar& by) {
    for (auto& v : x) v = tmul(v, by);
    return x;
}

// Copies every entry of `src` into `dst`, rows shifted by `row_offset` and
// variables renamed through `var_map`.
void embed(MetzlerPencil& dst, const MetzlerPencil& src, std::size_t row_offset,
           const std::vector<std::size_t>& var_map) {
    for (const auto& [ij, entry] : src.entries()) {
        const auto i = ij.first + row_offset;
        const auto j = ij.second + row_offset;
        if (!entry.constant.is_zero()) dst.add(i, j, std::nullopt, entry.constant);
        for (const auto& [k, c] : entry.terms) dst.add(i, j, var_map.at(k), c);
    }
}

std::vector<std::size_t> offset_map(std::size_t count, std::size_t offset) {
    std::vector<std::size_t> m(count);
    for (std::size_t k = 0; k < count; ++k) m[k] = k + offset;
    return m;
}

// Rows forcing x_k = -inf: an entry with empty positive part.
void force_neg_inf(MetzlerPencil& p, std::size_t var) {
    const auto r = p.add_rows();
    p.add(r, r, var, neg0);
}

bool has_lift(const ProjectedPencil& pp) { return pp.witness && pp.witness->lift; }
bool has_floor(const ProjectedPencil& pp) { return pp.witness && pp.witness->floor; }

}  // namespace

std::pair<TropScalar, TropScalar> PencilEntry::eval(const TropVector& x) const {
    std::pair<TropScalar, TropScalar> acc;
    accumulate(acc, constant);
    for (const auto& [k, c] : terms) {
        if (c.is_zero() || x[k].is_neg_inf()) continue;
        accumulate(acc, SignedTropScalar(c.sign(), tmul(c.modulus(), x[k])));
    }
    return acc;
}

std::size_t MetzlerPencil::add_rows(std::size_t count) {
    const auto first = rows_;
    rows_ += count;
    return first;
}

std::size_t MetzlerPencil::add_vars(std::size_t count) {
    const auto first = vars_;
    vars_ += count;
    return first;
}

void MetzlerPencil::add(std::size_t i, std::size_t j, std::optional<std::size_t> var,
                        const SignedTropScalar& coefficient) {
    if (i > j) std::swap(i, j);
    if (j >= rows_) throw Error(ErrorCode::DimensionMismatch, "pencil row out of range");
    if (var && *var >= vars_) throw Error(ErrorCode::DimensionMismatch, "pencil variable out of range");
    if (coefficient.is_zero()) return;
    if (i != j && coefficient.sign() > 0) {
        throw Error(ErrorCode::PreconditionViolated, "off-diagonal coefficients must be tropically negative");
    }
    auto& entry = entries_[{i, j}];
    if (var) {
        auto& slot = entry.terms[*var];
        slot = merge(slot, coefficient);
    } else {
        entry.constant = merge(entry.constant, coefficient);
    }
}

const PencilEntry* MetzlerPencil::entry(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    auto it = entries_.find({i, j});
    return it == entries_.end() ? nullptr : &it->second;
}

SignedTropScalar MetzlerPencil::coefficient(std::size_t k, std::size_t i, std::size_t j) const {
    const auto* e = entry(i, j);
    if (!e) return {};
    if (k == 0) return e->constant;
    auto it = e->terms.find(k - 1);
    return it == e->terms.end() ? SignedTropScalar{} : it->second;
}

bool MetzlerPencil::is_cone() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second.constant.is_zero(); });
}

bool MetzlerPencil::is_metzler() const {
    for (const auto& [ij, e] : entries_) {
        if (ij.first == ij.second) continue;
        if (e.constant.sign() > 0) return false;
        for (const auto& [k, c] : e.terms) {
            if (c.sign() > 0) return false;
        }
    }
    return true;
}

bool pencil_member(const MetzlerPencil& p, const TropVector& x) {
    if (x.size() != p.vars()) {
        throw Error(ErrorCode::DimensionMismatch, "point of size " + std::to_string(x.size()) + " for a pencil in " +
                                                      std::to_string(p.vars()) + " variables");
    }
    std::vector<TropScalar> diag(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i) {
        if (const auto* e = p.entry(i, i)) {
            const auto [plus, minus] = e->eval(x);
            if (plus < minus) return false;
            diag[i] = plus;
        }
    }
    for (const auto& [ij, e] : p.entries()) {
        if (ij.first == ij.second) continue;
        const auto off = e.eval(x).second;
        if (tmul(diag[ij.first], diag[ij.second]) < tpow(off, 2)) return false;
    }
    return true;
}

std::optional<TropVector> projected_lift(const ProjectedPencil& pp, const TropVector& x) {
    if (!has_lift(pp)) throw Error(ErrorCode::NoWitness, "projected pencil carries no lift");
    if (x.size() != pp.visible) throw Error(ErrorCode::DimensionMismatch, "point has wrong visible dimension");
    return pp.witness->lift(x);
}

bool projected_member(const ProjectedPencil& pp, const TropVector& x) {
    const auto full = projected_lift(pp, x);
    return full && pencil_member(pp.pencil, *full);
}

ComplianceReport check_compliance(const GameGraph& g) {
    ComplianceReport report;
    report.failures = validate_graph(g).failures;
    const Rational half(1, 2);
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        const auto out = g.out_edges(v);
        const auto& id = g.vertex(v).id;
        switch (g.kind(v)) {
            case VertexKind::Random:
                if (out.size() != 2) report.failures.push_back("Random vertex '" + id + "' needs exactly two edges");
                for (auto e : out) {
                    if (g.edge(e).label != half) {
                        report.failures.push_back("edge '" + g.edge(e).id + "' has probability other than 1/2");
                    }
                    if (g.kind(g.edge(e).head) != VertexKind::Max) {
                        report.failures.push_back("edge '" + g.edge(e).id + "' leaves a Random vertex but not to Max");
                    }
                }
                break;
            case VertexKind::Max:
                for (auto e : out) {
                    if (g.kind(g.edge(e).head) != VertexKind::Min) {
                        report.failures.push_back("Max edge '" + g.edge(e).id + "' does not head a Min vertex");
                    }
                }
                break;
            case VertexKind::Min:
                for (auto e : out) {
                    if (g.kind(g.edge(e).head) == VertexKind::Min) {
                        report.failures.push_back("Min edge '" + g.edge(e).id + "' heads a Min vertex");
                    }
                }
                break;
        }
    }
    return report;
}

MetzlerPencil synthesize_cone(const GameGraph& g) {
    const auto report = check_compliance(g);
    if (!report.ok()) {
        std::string msg;
        for (const auto& f : report.failures) msg += (msg.empty() ? "" : "; ") + f;
        throw Error(ErrorCode::NotCompliant, msg);
    }
    std::vector<std::vector<std::size_t>> out(g.vertices().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) out[g.edge(e).tail].push_back(e);
    std::vector<std::size_t> coord(g.vertices().size(), 0);
    const auto mins = g.min_vertices();
    for (std::size_t i = 0; i < mins.size(); ++i) coord[mins[i]] = i;

    MetzlerPencil p(0, mins.size());
    auto max_row = [&](std::size_t row, std::size_t w) {
        for (auto e : out[w]) {
            const auto& edge = g.edge(e);
            p.add(row, row, coord[edge.head], SignedTropScalar::positive(edge.label));
        }
    };
    for (auto v : mins) {
        for (auto e : out[v]) {
            const auto& edge = g.edge(e);
            std::size_t w1 = edge.head;
            std::size_t w2 = edge.head;
            if (g.kind(edge.head) == VertexKind::Random) {
                w1 = g.edge(out[edge.head][0]).head;
                w2 = g.edge(out[edge.head][1]).head;
            }
            const auto i = p.add_rows(2);
            max_row(i, w1);
            max_row(i + 1, w2);
            p.add(i, i + 1, coord[v], SignedTropScalar::negative(TropScalar(Rational(-edge.label))));
        }
    }
    return p;
}

MetzlerPencil affine_envelope(const MetzlerPencil& cone) {
    MetzlerPencil p = cone;
    const std::size_t n = cone.vars();
    const auto y0 = p.add_vars(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto i = p.add_rows(2);
        p.add(i, i, k, pos0);
        p.add(i + 1, i + 1, y0 + k, pos0);
        p.add(i, i + 1, std::nullopt, neg0);
    }
    return p;
}

MetzlerPencil formal_homogenize(const MetzlerPencil& src) {
    MetzlerPencil p(src.rows(), src.vars() + 1);
    for (const auto& [ij, entry] : src.entries()) {
        p.add(ij.first, ij.second, 0, entry.constant);
        for (const auto& [k, c] : entry.terms) p.add(ij.first, ij.second, k + 1, c);
    }
    return p;
}

MetzlerPencil dehomogenize(const MetzlerPencil& src) {
    MetzlerPencil p = src;
    const auto r = p.add_rows(2);
    p.add(r, r, 0, pos0);
    p.add(r, r, std::nullopt, neg0);
    p.add(r + 1, r + 1, std::nullopt, pos0);
    p.add(r + 1, r + 1, 0, neg0);
    return p;
}

ProjectedPencil realize_compliant(const GameGraph& g) {
    ProjectedPencil pp;
    pp.pencil = synthesize_cone(g);
    pp.visible = pp.pencil.vars();
    pp.witness = PencilWitness{[](const TropVector& x) { return std::optional<TropVector>(x); }, {}, "identity"};
    return pp;
}

ProjectedPencil realize_graph(const GameGraph& g) {
    auto result = pipeline(g);
    const auto cone = synthesize_cone(result.graph);
    ProjectedPencil pp;
    pp.pencil = affine_envelope(cone);
    pp.visible = g.dimension();
    auto witness = std::move(result.witness);
    pp.witness = PencilWitness{[witness](const TropVector& x) -> std::optional<TropVector> {
                                   if (!all_finite(x)) return std::nullopt;
                                   auto full = to_trop(witness.lift(to_rational(x)));
                                   const auto n = full.size();
                                   for (std::size_t k = 0; k < n; ++k) full.push_back(TropScalar(Rational(-full[k].value())));
                                   return full;
                               },
                               {}, "pipeline+affine"};
    return pp;
}

ProjectedPencil homogenize_projected(const ProjectedPencil& pp) {
    const std::size_t vis = pp.visible;
    const std::size_t inner_vars = pp.pencil.vars();
    ProjectedPencil out;
    out.pencil = formal_homogenize(pp.pencil);
    const auto z0 = out.pencil.add_vars(vis);
    for (std::size_t k = 0; k < vis; ++k) {
        const auto i = out.pencil.add_rows(2);
        out.pencil.add(i, i, 0, pos0);
        out.pencil.add(i + 1, i + 1, z0 + k, pos0);
        out.pencil.add(i, i + 1, k + 1, neg0);
    }
    out.visible = vis + 1;
    if (!pp.witness) return out;

    PencilWitness w;
    w.descriptor = "homogenize(" + pp.witness->descriptor + ")";
    auto inner = std::make_shared<const ProjectedPencil>(pp);
    if (has_lift(pp)) {
        w.lift = [inner, vis, inner_vars](const TropVector& x) -> std::optional<TropVector> {
            const TropScalar& x0 = x[0];
            TropVector visible(x.begin() + 1, x.end());
            TropVector full{x0};
            if (x0.is_finite()) {
                auto lifted = inner->witness->lift(shift(visible, TropScalar(Rational(-x0.value()))));
                if (!lifted) return std::nullopt;
                for (auto& v : shift(std::move(*lifted), x0)) full.push_back(v);
            } else {
                full.insert(full.end(), visible.begin(), visible.end());
                full.resize(1 + inner_vars);
            }
            for (std::size_t k = 0; k < vis; ++k) {
                full.push_back(x0.is_finite() && visible[k].is_finite()
                                   ? TropScalar(Rational(2 * visible[k].value() - x0.value()))
                                   : TropScalar());
            }
            return full;
        };
    }
    if (has_floor(pp)) {
        w.floor = [inner](const TropVector& z) -> std::optional<TropVector> {
            auto rest = inner->witness->floor(TropVector(z.begin() + 1, z.end()));
            if (!rest) return std::nullopt;
            TropVector out{z[0]};
            out.insert(out.end(), rest->begin(), rest->end());
            return out;
        };
    }
    out.witness = std::move(w);
    return out;
}

ProjectedPencil union_pencil(const ProjectedPencil& first, const ProjectedPencil& second) {
    if (first.visible != second.visible) throw Error(ErrorCode::DimensionMismatch, "union of sets of different dimension");
    const std::size_t n = first.visible;
    const auto h1 = homogenize_projected(first);
    const auto h2 = homogenize_projected(second);
    const std::size_t off1 = n + 1;
    const std::size_t off2 = off1 + h1.pencil.vars();

    ProjectedPencil out;
    auto& p = out.pencil;
    p = MetzlerPencil(0, off2 + h2.pencil.vars());
    embed(p, h1.pencil, p.add_rows(h1.pencil.rows()), offset_map(h1.pencil.vars(), off1));
    embed(p, h2.pencil, p.add_rows(h2.pencil.rows()), offset_map(h2.pencil.vars(), off2));
    auto z = [n](std::size_t i) { return i == 0 ? n : i - 1; };
    for (std::size_t i = 0; i <= n; ++i) {
        const auto r = p.add_rows(3);
        p.add(r, r, z(i), pos0);
        p.add(r, r, off1 + i, neg0);
        p.add(r + 1, r + 1, z(i), pos0);
        p.add(r + 1, r + 1, off2 + i, neg0);
        p.add(r + 2, r + 2, off1 + i, pos0);
        p.add(r + 2, r + 2, off2 + i, pos0);
        p.add(r + 2, r + 2, z(i), neg0);
    }
    const auto r = p.add_rows(2);
    p.add(r, r, z(0), pos0);
    p.add(r, r, std::nullopt, neg0);
    p.add(r + 1, r + 1, std::nullopt, pos0);
    p.add(r + 1, r + 1, z(0), neg0);
    out.visible = n;

    if (!has_floor(first) || !has_floor(second)) return out;
    PencilWitness w;
    w.descriptor = "union(" + first.witness->descriptor + ", " + second.witness->descriptor + ")";
    auto s1 = std::make_shared<const ProjectedPencil>(first);
    auto s2 = std::make_shared<const ProjectedPencil>(second);
    auto a = std::make_shared<const ProjectedPencil>(h1);
    auto b = std::make_shared<const ProjectedPencil>(h2);
    if (has_lift(first) && has_lift(second)) {
        w.lift = [s1, s2, a, b](const TropVector& y) -> std::optional<TropVector> {
            TropVector zv{TropScalar(0)};
            zv.insert(zv.end(), y.begin(), y.end());
            const auto u = s1->witness->floor(zv);
            const auto v = s2->witness->floor(zv);
            if (!u || !v) return std::nullopt;
            const auto lu = a->witness->lift(*u);
            const auto lv = b->witness->lift(*v);
            if (!lu || !lv) return std::nullopt;
            TropVector full = y;
            full.push_back(TropScalar(0));
            full.insert(full.end(), lu->begin(), lu->end());
            full.insert(full.end(), lv->begin(), lv->end());
            return full;
        };
    }
    w.floor = [s1, s2](const TropVector& zv) -> std::optional<TropVector> {
        const auto u = s1->witness->floor(zv);
        const auto v = s2->witness->floor(zv);
        if (!u || !v) return std::nullopt;
        return tadd(*u, *v);
    };
    out.witness = std::move(w);
    return out;
}

ProjectedPencil singleton_pencil(const TropVector& g) {
    const std::size_t n = g.size();
    ProjectedPencil out;
    out.pencil = MetzlerPencil(0, n);
    out.visible = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (g[i].is_neg_inf()) {
            force_neg_inf(out.pencil, i);
            continue;
        }
        const auto r = out.pencil.add_rows(2);
        out.pencil.add(r, r, i, pos0);
        out.pencil.add(r, r, std::nullopt, SignedTropScalar::negative(g[i]));
        out.pencil.add(r + 1, r + 1, std::nullopt, SignedTropScalar::positive(g[i]));
        out.pencil.add(r + 1, r + 1, i, neg0);
    }
    PencilWitness w;
    w.descriptor = "point";
    w.lift = [](const TropVector& x) { return std::optional<TropVector>(x); };
    w.floor = [g](const TropVector& z) -> std::optional<TropVector> {
        // greatest t with (t, t + g) <= z
        TropScalar t = z[0];
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].is_neg_inf()) continue;
            const TropScalar bound = z[i + 1].is_finite() ? TropScalar(Rational(z[i + 1].value() - g[i].value())) : TropScalar();
            t = std::min(t, bound);
        }
        if (t.is_neg_inf()) return TropVector(g.size() + 1);
        TropVector out{t};
        for (const auto& v : g) out.push_back(tmul(t, v));
        return out;
    };
    out.witness = std::move(w);
    return out;
}

ProjectedPencil neg_inf_pencil(std::size_t n) { return singleton_pencil(TropVector(n)); }

ProjectedPencil empty_pencil(std::size_t n) {
    ProjectedPencil out;
    out.pencil = MetzlerPencil(1, n);
    out.pencil.add(0, 0, std::nullopt, neg0);  // -inf >= 0
    out.visible = n;
    PencilWitness w;
    w.descriptor = "empty";
    w.lift = [](const TropVector& x) { return std::optional<TropVector>(x); };
    w.floor = [n](const TropVector&) { return std::optional<TropVector>(TropVector(n + 1)); };
    out.witness = std::move(w);
    return out;
}

ProjectedPencil tconv_pencil(std::size_t n, const std::vector<TropVector>& generators) {
    if (generators.empty()) return empty_pencil(n);
    for (const auto& g : generators) {
        if (g.size() != n) throw Error(ErrorCode::DimensionMismatch, "generator has wrong dimension");
    }
    auto acc = singleton_pencil(generators.front());
    for (std::size_t k = 1; k < generators.size(); ++k) acc = union_pencil(acc, singleton_pencil(generators[k]));
    return acc;
}

namespace {

// S_K embedded in T^n: visible coordinates x, then the piece's hidden ones.
ProjectedPencil embed_stratum(std::size_t n, const StratumPiece& piece) {
    const auto& K = piece.support;
    const auto& src = piece.pencil;
    const std::size_t hidden = src.pencil.vars() - K.size();
    std::vector<std::size_t> var_map(src.pencil.vars());
    for (std::size_t j = 0; j < src.pencil.vars(); ++j) var_map[j] = j < K.size() ? K[j] : n + (j - K.size());

    ProjectedPencil out;
    out.pencil = MetzlerPencil(0, n + hidden);
    embed(out.pencil, src.pencil, out.pencil.add_rows(src.pencil.rows()), var_map);
    std::vector<char> inside(n, 0);
    for (auto k : K) inside[k] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (!inside[k]) force_neg_inf(out.pencil, k);
    }
    out.visible = n;
    if (!src.witness) return out;

    auto inner = std::make_shared<const ProjectedPencil>(src);
    PencilWitness w;
    w.descriptor = "stratum(" + src.witness->descriptor + ")";
    if (has_lift(src)) {
        w.lift = [inner, K, n](const TropVector& x) -> std::optional<TropVector> {
            TropVector xk;
            for (auto k : K) xk.push_back(x[k]);
            const auto lifted = inner->witness->lift(xk);
            if (!lifted) return std::nullopt;
            TropVector full = x;
            full.insert(full.end(), lifted->begin() + static_cast<std::ptrdiff_t>(K.size()), lifted->end());
            return full;
        };
    }
    if (has_floor(src)) {
        w.floor = [inner, K, n](const TropVector& z) -> std::optional<TropVector> {
            TropVector zk{z[0]};
            for (auto k : K) zk.push_back(z[k + 1]);
            const auto f = inner->witness->floor(zk);
            if (!f) return std::nullopt;
            TropVector out(n + 1);
            out[0] = (*f)[0];
            for (std::size_t j = 0; j < K.size(); ++j) out[K[j] + 1] = (*f)[j + 1];
            return out;
        };
    }
    out.witness = std::move(w);
    return out;
}

}  // namespace

ProjectedPencil assemble_strata(std::size_t n, std::vector<StratumPiece> pieces, bool include_neg_inf) {
    for (const auto& piece : pieces) {
        const auto& K = piece.support;
        const bool sorted = std::adjacent_find(K.begin(), K.end(), std::greater_equal<>()) == K.end();
        if (!sorted || (!K.empty() && K.back() >= n) || piece.pencil.visible != K.size() ||
            piece.pencil.pencil.vars() < K.size()) {
            throw Error(ErrorCode::SupportMismatch, "stratum piece does not match its support");
        }
    }
    std::stable_sort(pieces.begin(), pieces.end(),
                     [](const StratumPiece& a, const StratumPiece& b) { return a.support < b.support; });
    std::vector<ProjectedPencil> parts;
    for (const auto& piece : pieces) parts.push_back(embed_stratum(n, piece));
    if (include_neg_inf) parts.push_back(neg_inf_pencil(n));
    if (parts.empty()) return empty_pencil(n);
    auto acc = std::move(parts.front());
    for (std::size_t k = 1; k < parts.size(); ++k) acc = union_pencil(acc, parts[k]);
    return acc;
}

}  // namespace tropmetz
