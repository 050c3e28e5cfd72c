#include "tropmetz/minmax.hpp"

#include "tropmetz/error.hpp"

namespace tropmetz {

StochasticReport check_stochastic(const MinMaxOperator& op) {
    StochasticReport r;
    const std::size_t p = op.matrices.size();
    if (op.offsets.size() != p) {
        r.shapes = false;
        r.failures.push_back("offsets and matrices differ in count");
    }
    for (std::size_t s = 0; s < p; ++s) {
        const auto& a = op.matrices[s];
        if (a.size() != op.n) {
            r.shapes = false;
            r.failures.push_back("matrix " + std::to_string(s) + " has wrong row count");
            continue;
        }
        for (std::size_t k = 0; k < op.n; ++k) {
            if (a[k].size() != op.n) {
                r.shapes = false;
                r.failures.push_back("matrix " + std::to_string(s) + " row " + std::to_string(k) + " has wrong length");
                continue;
            }
            Rational sum = 0;
            for (const auto& v : a[k]) {
                if (sgn(v) < 0) {
                    r.nonnegative = false;
                    r.failures.push_back("matrix " + std::to_string(s) + " row " + std::to_string(k) +
                                         " has a negative entry");
                }
                sum += v;
            }
            if (sum != 1) {
                r.row_sums = false;
                r.failures.push_back("matrix " + std::to_string(s) + " row " + std::to_string(k) + " sums to " +
                                     pretty_rational(sum));
            }
        }
        if (s < op.offsets.size() && op.offsets[s].size() != op.n) {
            r.shapes = false;
            r.failures.push_back("offset " + std::to_string(s) + " has wrong length");
        }
    }
    if (op.selections.size() != op.n) {
        r.selections = false;
        r.failures.push_back("need one selection family per coordinate");
    } else {
        for (std::size_t k = 0; k < op.n; ++k) {
            if (op.selections[k].empty()) {
                r.selections = false;
                r.failures.push_back("coordinate " + std::to_string(k) + " has M_k = 0");
            }
            for (const auto& subset : op.selections[k]) {
                if (subset.empty()) {
                    r.selections = false;
                    r.failures.push_back("empty selection for coordinate " + std::to_string(k));
                }
                for (auto s : subset) {
                    if (s >= p) {
                        r.selections = false;
                        r.failures.push_back("selection index " + std::to_string(s) + " out of range");
                    }
                }
            }
        }
    }
    return r;
}

RationalVector minmax_eval(const MinMaxOperator& op, const RationalVector& x) {
    if (x.size() != op.n) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
    RationalVector out(op.n);
    for (std::size_t k = 0; k < op.n; ++k) {
        bool first_min = true;
        for (const auto& subset : op.selections[k]) {
            bool first_max = true;
            Rational best;
            for (auto s : subset) {
                Rational v = op.offsets[s][k];
                for (std::size_t l = 0; l < op.n; ++l) v += op.matrices[s][k][l] * x[l];
                if (first_max || v > best) best = v;
                first_max = false;
            }
            if (first_min || best < out[k]) out[k] = best;
            first_min = false;
        }
    }
    return out;
}

GameGraph graph_from_minmax(const MinMaxOperator& op) {
    const auto report = check_stochastic(op);
    if (!report.ok()) {
        throw Error(ErrorCode::NonStochastic, report.failures.empty() ? "malformed operator" : report.failures.front());
    }
    GameGraph g;
    std::vector<std::size_t> mins;
    for (std::size_t k = 0; k < op.n; ++k) mins.push_back(g.add_vertex(VertexKind::Min, "x" + std::to_string(k + 1)));
    for (std::size_t k = 0; k < op.n; ++k) {
        for (std::size_t i = 0; i < op.selections[k].size(); ++i) {
            const auto tag = std::to_string(k + 1) + "_" + std::to_string(i + 1);
            const auto w = g.add_vertex(VertexKind::Max, "max" + tag);
            g.add_edge(mins[k], w, 0, "min" + tag);
            for (auto s : op.selections[k][i]) {
                const auto stag = tag + "_" + std::to_string(s + 1);
                const auto r = g.add_vertex(VertexKind::Random, "rnd" + stag);
                g.add_edge(w, r, op.offsets[s][k], "pay" + stag);
                for (std::size_t l = 0; l < op.n; ++l) {
                    const auto& q = op.matrices[s][k][l];
                    if (sgn(q) > 0) g.add_edge(r, mins[l], q, "prob" + stag + "_" + std::to_string(l + 1));
                }
            }
        }
    }
    return g;
}

}  // namespace tropmetz
