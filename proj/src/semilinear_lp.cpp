#include "tropmetz/semilinear_lp.hpp"

#include "tropmetz/error.hpp"
#include "tropmetz/sampling.hpp"

#include <algorithm>

namespace tropmetz {

PolyhedralUnion::PolyhedralUnion(std::size_t dim, std::vector<Polyhedron> ps) : n(dim), pieces(std::move(ps)) {
    if (pieces.empty()) throw Error(ErrorCode::Malformed, "a polyhedral union needs at least one piece");
    for (const auto& p : pieces) {
        if (p.A.size() != p.b.size()) throw Error(ErrorCode::DimensionMismatch, "A and b differ in row count");
        for (const auto& row : p.A) {
            if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint row has wrong length");
        }
    }
}

namespace {

// Dense tableau for min c·z, rows T z = rhs, z >= 0, with an explicit basis.
class Tableau {
public:
    Tableau(RationalMatrix rows, std::vector<std::size_t> basis) : t_(std::move(rows)), basis_(std::move(basis)) {}

    std::size_t cols() const { return t_.empty() ? 0 : t_.front().size() - 1; }

    // Bland's rule; columns with allowed[j] == false never enter.
    Rational minimize(const RationalVector& cost, const std::vector<char>& allowed) {
        const std::size_t nc = cols();
        RationalVector red = cost;
        Rational value = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j < nc; ++j) red[j] -= cb * t_[i][j];
            value += cb * t_[i][nc];
        }
        for (;;) {
            std::size_t enter = nc;
            for (std::size_t j = 0; j < nc; ++j) {
                if (allowed[j] && sgn(red[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == nc) return value;
            std::size_t leave = t_.size();
            Rational best;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (sgn(t_[i][enter]) <= 0) continue;
                const Rational ratio = t_[i][nc] / t_[i][enter];
                if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t_.size()) throw Error(ErrorCode::PreconditionViolated, "linear program is unbounded");
            pivot(leave, enter);
            const Rational f = red[enter];
            for (std::size_t j = 0; j < nc; ++j) red[j] -= f * t_[leave][j];
            value += f * t_[leave][nc];
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const std::size_t width = t_[row].size();
        const Rational inv = 1 / t_[row][col];
        for (auto& v : t_[row]) v *= inv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || sgn(t_[i][col]) == 0) continue;
            const Rational f = t_[i][col];
            for (std::size_t j = 0; j < width; ++j) t_[i][j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    // Pivots basic artificial columns (index >= first) out, dropping rows that
    // turn out to be redundant.
    void expel(std::size_t first) {
        for (std::size_t i = 0; i < t_.size();) {
            if (basis_[i] < first) {
                ++i;
                continue;
            }
            std::size_t col = first;
            for (std::size_t j = 0; j < first; ++j) {
                if (sgn(t_[i][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (col == first) {
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                pivot(i, col);
                ++i;
            }
        }
    }

    RationalVector solution(std::size_t count) const {
        RationalVector z(count, Rational(0));
        const std::size_t nc = cols();
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (basis_[i] < count) z[basis_[i]] = t_[i][nc];
        }
        return z;
    }

private:
    RationalMatrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult lp_max(const RationalMatrix& A, const RationalVector& b, const RationalVector& x, std::size_t k) {
    const std::size_t n = x.size();
    const std::size_t m = A.size();
    if (b.size() != m || k >= n) throw Error(ErrorCode::DimensionMismatch, "lp_max: inconsistent shapes");
    for (const auto& row : A) {
        if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "lp_max: row of wrong length");
    }

    // y = x - z with z >= 0; A y <= b becomes -A z <= b - A x.
    std::vector<std::size_t> negative;
    RationalVector d(m);
    for (std::size_t i = 0; i < m; ++i) {
        d[i] = b[i];
        for (std::size_t j = 0; j < n; ++j) d[i] -= A[i][j] * x[j];
        if (sgn(d[i]) < 0) negative.push_back(i);
    }
    const std::size_t first_art = n + m;
    const std::size_t nc = first_art + negative.size();
    RationalMatrix rows(m, RationalVector(nc + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    std::size_t art = first_art;
    for (std::size_t i = 0; i < m; ++i) {
        const int s = sgn(d[i]) < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = -s * A[i][j];
        rows[i][n + i] = s;
        rows[i][nc] = s * d[i];
        if (s < 0) {
            rows[i][art] = 1;
            basis[i] = art++;
        } else {
            basis[i] = n + i;
        }
    }
    Tableau tab(std::move(rows), std::move(basis));
    std::vector<char> allowed(nc, 1);
    if (!negative.empty()) {
        RationalVector cost(nc, Rational(0));
        for (std::size_t j = first_art; j < nc; ++j) cost[j] = 1;
        if (sgn(tab.minimize(cost, allowed)) > 0) return {};
        tab.expel(first_art);
        for (std::size_t j = first_art; j < nc; ++j) allowed[j] = 0;
    }
    RationalVector cost(nc, Rational(0));
    cost[k] = 1;
    tab.minimize(cost, allowed);
    const auto z = tab.solution(n);
    LpResult result;
    result.status = LpStatus::Optimal;
    result.point.resize(n);
    for (std::size_t j = 0; j < n; ++j) result.point[j] = x[j] - z[j];
    result.value = result.point[k];
    return result;
}

bool polyhedron_contains(const Polyhedron& p, const RationalVector& x) {
    for (std::size_t i = 0; i < p.A.size(); ++i) {
        if (p.A[i].size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
        Rational lhs = 0;
        for (std::size_t j = 0; j < x.size(); ++j) lhs += p.A[i][j] * x[j];
        if (lhs > p.b[i]) return false;
    }
    return true;
}

bool union_contains(const PolyhedralUnion& u, const RationalVector& x) {
    if (x.size() != u.n) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
    return std::any_of(u.pieces.begin(), u.pieces.end(), [&](const Polyhedron& p) { return polyhedron_contains(p, x); });
}

RationalVector eval_F_from_polyhedra(const PolyhedralUnion& u, const RationalVector& x) {
    if (x.size() != u.n) throw Error(ErrorCode::DimensionMismatch, "point has wrong dimension");
    RationalVector f(u.n);
    std::vector<char> seen(u.n, 0);
    for (const auto& piece : u.pieces) {
        for (std::size_t k = 0; k < u.n; ++k) {
            const auto r = lp_max(piece.A, piece.b, x, k);
            if (r.status == LpStatus::Infeasible) break;  // the same for every k
            if (!seen[k] || r.value > f[k]) f[k] = r.value;
            seen[k] = 1;
        }
    }
    if (!seen.empty() && !seen[0]) throw Error(ErrorCode::EmptyBelow, "no point of the set lies below x");
    return f;
}

FalsifierResult tropical_convexity_falsifier(const PolyhedralUnion& u, std::size_t trials, std::uint64_t seed,
                                             const Rational& box, long denom) {
    FalsifierResult result;
    std::vector<RationalVector> members;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = stream_rng(seed, t);
        const auto x = sample_point(rng, u.n, box, denom);
        const auto& piece = u.pieces[std::uniform_int_distribution<std::size_t>(0, u.pieces.size() - 1)(rng)];
        const auto k = std::uniform_int_distribution<std::size_t>(0, u.n - 1)(rng);
        const auto r = lp_max(piece.A, piece.b, x, k);
        if (r.status == LpStatus::Optimal) members.push_back(r.point);
        if (union_contains(u, x)) members.push_back(x);
        result.trials = t + 1;
        if (members.size() < 2) continue;

        const auto& a = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
        const auto& b = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(rng)];
        Rational lambda = 0;
        Rational mu = -abs(sample_rational(rng, box, denom));
        if (rng() % 2) std::swap(lambda, mu);
        RationalVector c(u.n);
        for (std::size_t j = 0; j < u.n; ++j) c[j] = std::max(Rational(lambda + a[j]), Rational(mu + b[j]));
        if (!union_contains(u, c)) {
            result.counterexample = ConvexityCounterexample{a, b, lambda, mu, c};
            return result;
        }
    }
    return result;
}

}  // namespace tropmetz
