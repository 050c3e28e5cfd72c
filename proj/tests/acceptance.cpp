// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "test_support.hpp"
#include "tropmetz/cli.hpp"
#include "tropmetz/harness.hpp"
#include "tropmetz/pencil.hpp"
#include "tropmetz/sampling.hpp"
#include "tropmetz/semilinear_lp.hpp"
#include "tropmetz/transforms.hpp"
#include "tropmetz/trop_convex.hpp"

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace tropmetz;
namespace ts = testsupport;

namespace {

// Pinned limits.
constexpr double kPreservationSeconds = 10.0;
constexpr double kEndToEndSeconds = 30.0;
constexpr std::size_t kRandomGraphs = 20;
constexpr std::size_t kPointsPerGraph = 200;
constexpr std::size_t kNegInfPoints = 50;
constexpr std::size_t kEndToEndPoints = 500;

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Rational q(long p, long d = 1) { return make_rational(p, d); }

// The running example's displayed formulas (with the fixture's surrogate for 2π).
bool example_subfixed(const RationalVector& x) {
    const Rational f1 = std::max<Rational>(x[2] + 1, x[1] / 3 + 2 * x[2] / 3 + q(4, 3));
    const Rational f2 = std::max<Rational>(x[0] / 4 + 3 * x[2] / 4 + q(3, 4), x[2] + ts::r_hat());
    const Rational f3 = std::max(x[0], x[1]);
    return x[0] <= f1 && x[1] <= f2 && x[2] <= f3;
}

std::vector<GameGraph> preservation_graphs() {
    std::vector<GameGraph> out{ts::load_fixture("example_graph.json")};
    for (std::size_t i = 0; i < kRandomGraphs; ++i) {
        auto rng = stream_rng(1001, i);
        out.push_back(random_valid_graph(rng, GraphLimits{6, 6, 8, 12}));
    }
    return out;
}

// ---------------------------------------------------------------------------

Outcome operator_preservation(const std::vector<GameGraph>& graphs, std::vector<GameGraph>& reduced) {
    const auto start = Clock::now();
    std::size_t points = 0, mismatches = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const EncodedOperator before(graphs[gi]);
        reduced.push_back(zwick_paterson(graphs[gi]));
        const EncodedOperator after(reduced.back());
        for (std::size_t i = 0; i < kPointsPerGraph; ++i) {
            auto rng = stream_rng(2000 + gi, i);
            const auto x = sample_point(rng, before.dimension(), 10, 64);
            if (before.eval(x) != after.eval(x)) ++mismatches;
            ++points;
        }
    }
    const double secs = since(start);
    Outcome o;
    o.pass = mismatches == 0 && secs < kPreservationSeconds;
    o.detail = std::to_string(graphs.size()) + " graphs, " + std::to_string(points) + " points, " +
               std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + " s";
    return o;
}

// Re-derive, inside the reduced graph, the distribution of the first original
// vertex reached from each original Random vertex (returns to the start are
// restarts) and compare with the original probabilities.
Outcome absorption_correctness(const std::vector<GameGraph>& graphs, const std::vector<GameGraph>& reduced) {
    std::size_t gadgets = 0, failures = 0, shape_failures = 0;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& g = graphs[gi];
        const auto& h = reduced[gi];
        // original vertices resolved through contracted unit Random vertices
        auto resolve = [&](std::size_t v) {
            std::set<std::size_t> seen;
            while (g.kind(v) == VertexKind::Random && g.out_edges(v).size() == 1 && seen.insert(v).second) {
                v = g.edge(g.out_edges(v)[0]).head;
            }
            return g.vertex(v).id;
        };
        std::set<std::string> original;
        // contracted vertices are gone, and their ids may be reused by gadgets
        for (std::size_t v = 0; v < g.vertices().size(); ++v) {
            if (g.kind(v) != VertexKind::Random || g.out_edges(v).size() > 1) original.insert(g.vertex(v).id);
        }
        for (auto v : h.random_vertices()) {
            const auto out = h.out_edges(v);
            if (out.size() != 2 || h.edge(out[0]).label != q(1, 2) || h.edge(out[1]).label != q(1, 2)) ++shape_failures;
        }
        for (auto v : g.random_vertices()) {
            const auto out = g.out_edges(v);
            if (out.size() < 2) continue;
            const auto& vid = g.vertex(v).id;
            ++gadgets;
            std::map<std::string, Rational> expected;
            Rational self = 0;
            for (auto e : out) {
                const auto target = resolve(g.edge(e).head);
                if (target == vid) {
                    self += g.edge(e).label;
                } else {
                    expected[target] += g.edge(e).label;
                }
            }
            for (auto& [id, p] : expected) p /= (1 - self);

            // transient states: the start and the new vertices reachable without
            // touching an original vertex
            const auto hv = h.vertex_index(vid);
            std::vector<std::size_t> states{hv};
            std::map<std::size_t, std::size_t> index{{hv, 0}};
            for (std::size_t s = 0; s < states.size(); ++s) {
                for (auto e : h.out_edges(states[s])) {
                    const auto w = h.edge(e).head;
                    if (original.count(h.vertex(w).id) || index.count(w)) continue;
                    index[w] = states.size();
                    states.push_back(w);
                }
            }
            std::set<std::string> targets;
            for (auto s : states) {
                for (auto e : h.out_edges(s)) {
                    const auto& id = h.vertex(h.edge(e).head).id;
                    if (original.count(id) && id != vid) targets.insert(id);
                }
            }
            const std::size_t m = states.size();
            std::map<std::string, Rational> derived;
            for (const auto& t : targets) {
                // (I - P) p = r, where the start row treats a return to v as a restart
                RationalMatrix a(m, RationalVector(m, Rational(0)));
                RationalVector rhs(m, Rational(0));
                for (std::size_t s = 0; s < m; ++s) {
                    a[s][s] += 1;
                    for (auto e : h.out_edges(states[s])) {
                        const auto w = h.edge(e).head;
                        const auto& p = h.edge(e).label;
                        if (w == hv) {
                            a[s][0] -= p;
                        } else if (index.count(w)) {
                            a[s][index[w]] -= p;
                        } else if (h.vertex(w).id == t) {
                            rhs[s] += p;
                        }
                    }
                }
                const auto sol = ts::solve_square(a, rhs);
                if (!sol) {
                    ++failures;
                    continue;
                }
                derived[t] = (*sol)[0];
            }
            if (derived != expected) {
                ++failures;
                if (std::getenv("ACCEPTANCE_DEBUG")) {
                    std::cerr << "graph " << gi << " vertex " << vid << "\n";
                    for (auto& [k, p] : expected) std::cerr << "  expected " << k << " " << p << "\n";
                    for (auto& [k, p] : derived) std::cerr << "  derived " << k << " " << p << "\n";
                }
            }
        }
    }
    Outcome o;
    o.pass = failures == 0 && shape_failures == 0 && gadgets > 0;
    o.detail = std::to_string(gadgets) + " Random vertices re-derived, " + std::to_string(failures) +
               " mismatches, " + std::to_string(shape_failures) + " non-fair coins";
    return o;
}

Outcome synthesis_equivalence() {
    std::size_t real_points = 0, inf_points = 0, disagreements = 0, members = 0;
    for (std::size_t gi = 0; gi < kRandomGraphs; ++gi) {
        auto rng = stream_rng(3001, gi);
        const auto g = random_compliant_graph(rng);
        if (!check_compliance(g).ok()) return {false, "generator produced a non-compliant graph"};
        const EncodedOperator op(g);
        const auto cone = synthesize_cone(g);
        SampleConfig config;
        config.seed = 3100 + gi;
        for (std::size_t i = 0; i < kPointsPerGraph; ++i) {
            const auto x = verification_point(op, config, i);
            const bool member = pencil_member(cone, to_trop(x));
            const bool oracle = ts::leq(to_trop(x), ts::shapley_metzler(g, to_trop(x)));
            if (member != subfixed(g, x) || member != oracle) ++disagreements;
            members += member;
            ++real_points;
        }
        for (std::size_t i = 0; i < kNegInfPoints; ++i) {
            auto prng = stream_rng(3200 + gi, i);
            auto x = sample_trop_point(prng, op.dimension(), 10, 64, 0.35);
            if (all_finite(x)) x[prng() % x.size()] = TropScalar();
            if (pencil_member(cone, x) != ts::leq(x, ts::shapley_metzler(g, x))) ++disagreements;
            ++inf_points;
        }
    }
    Outcome o;
    o.pass = disagreements == 0 && members > 0 && members < real_points;
    o.detail = std::to_string(real_points) + " real + " + std::to_string(inf_points) + " -inf points, " +
               std::to_string(members) + " real members, " + std::to_string(disagreements) + " disagreements";
    return o;
}

Outcome end_to_end() {
    const auto start = Clock::now();
    const auto g = ts::load_fixture("example_graph.json");
    const EncodedOperator op(g);
    const auto pp = realize_graph(g);
    SampleConfig config;
    config.seed = 4001;
    config.samples = kEndToEndPoints;
    const auto report = verify_projected_parallel(op, pp, config);
    std::size_t formula_mismatch = 0;
    for (std::size_t i = 0; i < kEndToEndPoints; ++i) {
        const auto x = verification_point(op, config, i);
        if (example_subfixed(x) != op.subfixed(x)) ++formula_mismatch;
    }
    const double secs = since(start);
    Outcome o;
    o.pass = report.ok() && report.samples == kEndToEndPoints && report.forward_total > 0 &&
             report.backward_total > 0 && report.forward_total < kEndToEndPoints && formula_mismatch == 0 &&
             secs < kEndToEndSeconds;
    o.detail = std::to_string(report.samples) + " points, forward " + std::to_string(report.forward_agree) + "/" +
               std::to_string(report.forward_total) + ", backward " + std::to_string(report.backward_agree) + "/" +
               std::to_string(report.backward_total) + ", formula mismatches " + std::to_string(formula_mismatch) +
               ", " + std::to_string(secs) + " s";
    return o;
}

TropVector combination(std::mt19937_64& rng, const std::vector<TropVector>& gens) {
    const auto& a = gens[rng() % gens.size()];
    const auto& b = gens[rng() % gens.size()];
    const Rational r = sample_rational(rng, 3, 4);
    const TropScalar lam(0), mu(Rational(-abs(r)));
    return rng() % 2 ? tadd(tmul(lam, a), tmul(mu, b)) : tadd(tmul(mu, a), tmul(lam, b));
}

std::vector<TropVector> random_generators(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    std::vector<TropVector> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(sample_trop_point(rng, n, 4, 2, 0.2));
    return out;
}

Outcome homogenization_union() {
    std::size_t points = 0, disagreements = 0, members = 0, inf_points = 0;
    for (std::size_t pair = 0; pair < 10; ++pair) {
        auto rng = stream_rng(5001, pair);
        const std::size_t n = 1 + pair % 3;
        const auto g1 = random_generators(rng, n, 1 + rng() % 3);
        const auto g2 = random_generators(rng, n, 1 + rng() % 3);
        const auto u = union_pencil(tconv_pencil(n, g1), tconv_pencil(n, g2));
        const TropPointSet first(n, g1), second(n, g2);
        auto all = g1;
        all.insert(all.end(), g2.begin(), g2.end());
        for (std::size_t i = 0; i < kPointsPerGraph; ++i) {
            auto prng = stream_rng(5100 + pair, i);
            const auto y = i % 2 ? combination(prng, all) : sample_trop_point(prng, n, 4, 2, 0.25);
            const bool expected = union_hull_member(y, first, second);
            if (projected_member(u, y) != expected) ++disagreements;
            members += expected;
            inf_points += !all_finite(y);
            ++points;
        }
    }
    Outcome o;
    o.pass = disagreements == 0 && members > 0 && members < points && inf_points > 0;
    o.detail = "10 pairs, " + std::to_string(points) + " points (" + std::to_string(inf_points) + " with -inf), " +
               std::to_string(members) + " members, " + std::to_string(disagreements) + " disagreements";
    return o;
}

Outcome caratheodory() {
    std::size_t points = 0, disagreements = 0, members = 0;
    for (std::size_t inst = 0; inst < 40; ++inst) {
        auto rng = stream_rng(6001, inst);
        const std::size_t n = 1 + inst % 3;
        const auto gens = random_generators(rng, n, 1 + rng() % 5);
        const TropPointSet set(n, gens);
        for (std::size_t i = 0; i < kPointsPerGraph; ++i) {
            auto prng = stream_rng(6100 + inst, i);
            const auto y = i % 2 ? combination(prng, gens) : sample_trop_point(prng, n, 4, 2, 0.2);
            const bool member = hull_member(y, set);
            if (member != ts::caratheodory_member(y, gens)) ++disagreements;
            members += member;
            ++points;
        }
    }
    Outcome o;
    o.pass = disagreements == 0 && members > 0 && members < points;
    o.detail = "40 instances, " + std::to_string(points) + " points, " + std::to_string(members) + " members, " +
               std::to_string(disagreements) + " disagreements";
    return o;
}

Outcome lp_frontend() {
    std::size_t points = 0, violations = 0, lp_checks = 0, lp_mismatch = 0;
    auto below = [](const RationalVector& a, const RationalVector& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] > b[i]) return false;
        }
        return true;
    };
    auto lp_agrees = [&](const Polyhedron& p, const RationalVector& x, std::size_t k) {
        const auto r = lp_max(p.A, p.b, x, k);
        const auto oracle = ts::vertex_lp_max(p.A, p.b, x, k);
        ++lp_checks;
        const bool same = (r.status == LpStatus::Optimal) == oracle.has_value() && (!oracle || r.value == *oracle);
        if (!same) ++lp_mismatch;
    };
    for (const auto& cone : ts::hand_cones()) {
        const auto n = cone.u.n;
        for (std::size_t i = 0; i < kPointsPerGraph; ++i) {
            auto rng = stream_rng(7001, i);
            const auto x = sample_point(rng, n, 8, 8);
            const auto f = eval_F_from_polyhedra(cone.u, x);
            bool ok = below(f, x) && union_contains(cone.u, x) == below(x, f);
            const auto lambda = sample_rational(rng, 5, 8);
            RationalVector xs = x, fs = f, bigger = x;
            for (auto& v : xs) v += lambda;
            for (auto& v : fs) v += lambda;
            ok = ok && eval_F_from_polyhedra(cone.u, xs) == fs;
            for (auto& v : bigger) v += abs(sample_rational(rng, 2, 8));
            ok = ok && below(f, eval_F_from_polyhedra(cone.u, bigger));
            if (!ok) ++violations;
            for (const auto& piece : cone.u.pieces) {
                for (std::size_t k = 0; k < n; ++k) lp_agrees(piece, x, k);
            }
            ++points;
        }
    }
    for (std::size_t inst = 0; inst < 200; ++inst) {
        auto rng = stream_rng(7100, inst);
        const std::size_t n = 1 + rng() % 4;
        Polyhedron p;
        for (std::size_t r = 0, m = rng() % 7; r < m; ++r) {
            RationalVector row(n);
            for (auto& a : row) a = static_cast<long>(rng() % 7) - 3;
            p.A.push_back(row);
            p.b.push_back(sample_rational(rng, 6, 3));
        }
        lp_agrees(p, sample_point(rng, n, 6, 3), rng() % n);
    }
    Outcome o;
    o.pass = violations == 0 && lp_mismatch == 0;
    o.detail = "5 cones, " + std::to_string(points) + " points, " + std::to_string(violations) + " violations; " +
               std::to_string(lp_checks) + " LPs vs vertex oracle, " + std::to_string(lp_mismatch) + " mismatches";
    return o;
}

Outcome section_check() {
    const std::vector<std::string> args{"section", ts::data_path("example_graph.json"), "--fix", "min3=0",
                                        "--lo=-9/2", "--hi=5/2", "--step=1/4"};
    std::ostringstream a, b, err;
    const int ca = run_cli(args, a, err);
    const int cb = run_cli(args, b, err);
    if (ca != 0 || cb != 0) return {false, "section command failed: " + err.str()};
    const bool stable = a.str() == b.str();

    // parse the CSV back
    std::istringstream in(a.str());
    std::string line;
    std::getline(in, line);
    std::vector<Rational> xs;
    {
        std::istringstream header(line);
        std::string cell;
        std::getline(header, cell, ',');
        while (std::getline(header, cell, ',')) xs.push_back(parse_rational(cell));
    }
    std::map<std::pair<Rational, Rational>, bool> cells;
    std::size_t mismatch = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        std::getline(row, cell, ',');
        const Rational y = parse_rational(cell);
        for (const auto& x : xs) {
            std::getline(row, cell, ',');
            const bool v = cell == "1";
            cells[{x, y}] = v;
            if (v != example_subfixed({x, y, Rational(0)})) ++mismatch;
        }
    }
    auto at = [&](long x, long y) {
        auto it = cells.find({Rational(x), Rational(y)});
        return it == cells.end() ? -1 : static_cast<int>(it->second);
    };
    Outcome o;
    o.pass = stable && at(0, 0) == 1 && at(-3, 0) == 1 && at(2, 0) == 0 && mismatch == 0 && cells.size() == 29 * 29;
    o.detail = std::to_string(cells.size()) + " cells, (0,0)=" + std::to_string(at(0, 0)) + " (-3,0)=" +
               std::to_string(at(-3, 0)) + " (2,0)=" + std::to_string(at(2, 0)) + ", formula mismatches " +
               std::to_string(mismatch) + (stable ? ", byte-stable" : ", NOT byte-stable");
    return o;
}

}  // namespace

int main() {
    const auto graphs = preservation_graphs();
    std::vector<GameGraph> reduced;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"operator preservation under Zwick-Paterson", [&] { return operator_preservation(graphs, reduced); }},
        {"gadget absorption probabilities", [&] { return absorption_correctness(graphs, reduced); }},
        {"synthesized cone equals the subfixed set", synthesis_equivalence},
        {"end-to-end projected pencil of the example", end_to_end},
        {"homogenization and union pencils", homogenization_union},
        {"hull membership vs Caratheodory search", caratheodory},
        {"polyhedral frontend consistency", lp_frontend},
        {"section of the example at x3 = 0", section_check},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail << "\n";
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << "\n";
    return failed ? 1 : 0;
}
