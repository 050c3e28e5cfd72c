#include "tropmetz/trop.hpp"

#include <algorithm>

namespace tropmetz {

const Rational& TropScalar::value() const {
    if (!is_finite()) throw Error(ErrorCode::PreconditionViolated, "value() of -inf");
    return std::get<Rational>(value_);
}

std::strong_ordering operator<=>(const TropScalar& a, const TropScalar& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) {
        return a.is_finite() <=> b.is_finite();
    }
    const int c = cmp(a.value(), b.value());
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

bool operator==(const TropScalar& a, const TropScalar& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

TropScalar tadd(const TropScalar& a, const TropScalar& b) {
    return a < b ? b : a;
}

TropScalar tmul(const TropScalar& a, const TropScalar& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf;
    return Rational(a.value() + b.value());
}

TropScalar scale(const Rational& factor, const TropScalar& a) {
    if (sgn(factor) <= 0) throw Error(ErrorCode::PreconditionViolated, "scale factor must be positive");
    if (a.is_neg_inf()) return neg_inf;
    return Rational(factor * a.value());
}

TropScalar tpow(const TropScalar& a, std::uint32_t k) {
    if (k == 0) return Rational(0);
    if (a.is_neg_inf()) return neg_inf;
    return Rational(a.value() * k);
}

TropVector to_trop(const RationalVector& x) {
    return TropVector(x.begin(), x.end());
}

RationalVector to_rational(const TropVector& x) {
    RationalVector out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(v.value());
    return out;
}

bool all_finite(const TropVector& x) {
    return std::all_of(x.begin(), x.end(), [](const TropScalar& v) { return v.is_finite(); });
}

TropVector tadd(const TropVector& a, const TropVector& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "tadd of vectors of different length");
    TropVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = tadd(a[i], b[i]);
    return out;
}

TropVector tmul(const TropScalar& lambda, const TropVector& x) {
    TropVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = tmul(lambda, x[i]);
    return out;
}

std::string format_trop(const TropScalar& a) {
    return a.is_finite() ? format_rational(a.value()) : std::string("-inf");
}

TropScalar parse_trop(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "-inf") return neg_inf;
    return parse_rational(text);
}

SignedTropScalar::SignedTropScalar(int sign, TropScalar modulus) : sign_(sign), modulus_(std::move(modulus)) {
    if (sign < -1 || sign > 1 || ((sign == 0) != modulus_.is_neg_inf())) {
        throw Error(ErrorCode::Malformed, "signed tropical number needs sign 0 exactly when the modulus is -inf");
    }
}

SignedTropScalar SignedTropScalar::positive(TropScalar modulus) {
    if (modulus.is_neg_inf()) return {};
    return {1, std::move(modulus)};
}

SignedTropScalar SignedTropScalar::negative(TropScalar modulus) {
    if (modulus.is_neg_inf()) return {};
    return {-1, std::move(modulus)};
}

SignedTropScalar smul(const SignedTropScalar& a, const SignedTropScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.sign() * b.sign(), tmul(a.modulus(), b.modulus())};
}

SignedTropScalar sadd(const SignedTropScalar& a, const SignedTropScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.sign() != b.sign()) {
        throw Error(ErrorCode::MixedSigns, format_signed(a) + " (+) " + format_signed(b) + " is undefined");
    }
    return {a.sign(), tadd(a.modulus(), b.modulus())};
}

SignedTropScalar sneg(const SignedTropScalar& a) {
    if (a.is_zero()) return a;
    return {-a.sign(), a.modulus()};
}

std::string format_signed(const SignedTropScalar& a) {
    if (a.is_zero()) return "-inf";
    return (a.sign() < 0 ? "(-)" : "") + format_trop(a.modulus());
}

void TropPolynomial::add(const SignedTropScalar& coefficient, std::vector<std::uint32_t> exponents) {
    if (exponents.size() != arity_) {
        throw Error(ErrorCode::ArityMismatch, "monomial has " + std::to_string(exponents.size()) +
                                                  " exponents, polynomial arity is " + std::to_string(arity_));
    }
    if (coefficient.is_zero()) return;
    for (auto& m : monomials_) {
        if (m.exponents == exponents && m.coefficient.sign() == coefficient.sign()) {
            m.coefficient = sadd(m.coefficient, coefficient);
            return;
        }
    }
    monomials_.push_back({coefficient, std::move(exponents)});
}

void TropPolynomial::add_linear(const SignedTropScalar& coefficient, std::size_t var) {
    std::vector<std::uint32_t> e(arity_, 0);
    if (var >= arity_) throw Error(ErrorCode::ArityMismatch, "variable index out of range");
    e[var] = 1;
    add(coefficient, std::move(e));
}

void TropPolynomial::add_constant(const SignedTropScalar& coefficient) {
    add(coefficient, std::vector<std::uint32_t>(arity_, 0));
}

bool TropPolynomial::has_sign_collision() const {
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
        for (std::size_t j = i + 1; j < monomials_.size(); ++j) {
            if (monomials_[i].exponents == monomials_[j].exponents) return true;
        }
    }
    return false;
}

std::pair<TropScalar, TropScalar> poly_eval_pm(const TropPolynomial& p, const TropVector& x) {
    if (x.size() != p.arity()) {
        throw Error(ErrorCode::ArityMismatch, "point of dimension " + std::to_string(x.size()) +
                                                  " for polynomial of arity " + std::to_string(p.arity()));
    }
    TropScalar plus, minus;
    for (const auto& m : p.monomials()) {
        TropScalar term = m.coefficient.modulus();
        for (std::size_t i = 0; i < x.size() && term.is_finite(); ++i) {
            if (m.exponents[i] != 0) term = tmul(term, tpow(x[i], m.exponents[i]));
        }
        if (m.coefficient.sign() > 0) {
            plus = tadd(plus, term);
        } else {
            minus = tadd(minus, term);
        }
    }
    return {plus, minus};
}

}  // namespace tropmetz
