#pragma once

#include "tropmetz/error.hpp"
#include "tropmetz/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tropmetz {

/// The tropical zero. It is a separate alternative of TropScalar, never a
/// sentinel rational.
struct NegInfinity {
    friend bool operator==(NegInfinity, NegInfinity) = default;
};
inline constexpr NegInfinity neg_inf{};

/// Element of the max-plus semifield: a rational or -inf.
class TropScalar {
public:
    TropScalar() : value_(NegInfinity{}) {}
    TropScalar(NegInfinity) : value_(NegInfinity{}) {}
    TropScalar(Rational value) : value_(std::move(value)) {}
    TropScalar(long value) : value_(Rational(value)) {}

    bool is_finite() const noexcept { return std::holds_alternative<Rational>(value_); }
    bool is_neg_inf() const noexcept { return !is_finite(); }

    /// Precondition: is_finite().
    const Rational& value() const;

    friend std::strong_ordering operator<=>(const TropScalar& a, const TropScalar& b);
    friend bool operator==(const TropScalar& a, const TropScalar& b);

private:
    std::variant<NegInfinity, Rational> value_;
};

using TropVector = std::vector<TropScalar>;

/// a ⊕ b = max(a, b).
TropScalar tadd(const TropScalar& a, const TropScalar& b);
/// a ⊙ b = a + b, with -inf absorbing.
TropScalar tmul(const TropScalar& a, const TropScalar& b);
/// Ordinary product factor · a for factor > 0 (-inf stays -inf).
TropScalar scale(const Rational& factor, const TropScalar& a);
/// The tropical power a^{⊙k}.
TropScalar tpow(const TropScalar& a, std::uint32_t k);

TropVector to_trop(const RationalVector& x);
/// Throws Error{PreconditionViolated} when an entry is -inf.
RationalVector to_rational(const TropVector& x);
bool all_finite(const TropVector& x);

TropVector tadd(const TropVector& a, const TropVector& b);
/// λ ⊙ x, coordinatewise.
TropVector tmul(const TropScalar& lambda, const TropVector& x);

std::string format_trop(const TropScalar& a);
TropScalar parse_trop(std::string_view text);

/// A signed tropical number: (+1, a), (-1, a) or (0, -inf).
class SignedTropScalar {
public:
    SignedTropScalar() = default;
    /// Throws Error{Malformed} when the pair breaks sign = 0 <=> modulus = -inf.
    SignedTropScalar(int sign, TropScalar modulus);

    static SignedTropScalar positive(TropScalar modulus);
    static SignedTropScalar negative(TropScalar modulus);
    static SignedTropScalar zero() { return {}; }

    int sign() const noexcept { return sign_; }
    const TropScalar& modulus() const noexcept { return modulus_; }
    bool is_zero() const noexcept { return sign_ == 0; }

    friend bool operator==(const SignedTropScalar&, const SignedTropScalar&) = default;

private:
    int sign_ = 0;
    TropScalar modulus_;
};

/// Sign product, modulus tropical product.
SignedTropScalar smul(const SignedTropScalar& a, const SignedTropScalar& b);
/// Same-sign tropical sum; throws Error{MixedSigns} for opposite nonzero signs.
SignedTropScalar sadd(const SignedTropScalar& a, const SignedTropScalar& b);
/// ⊖a.
SignedTropScalar sneg(const SignedTropScalar& a);

std::string format_signed(const SignedTropScalar& a);

struct Monomial {
    SignedTropScalar coefficient;
    std::vector<std::uint32_t> exponents;
};

/// Tropical signed polynomial. Monomials are kept unique per
/// (exponent vector, sign); adding a same-sign duplicate merges by ⊕.
class TropPolynomial {
public:
    explicit TropPolynomial(std::size_t arity) : arity_(arity) {}

    std::size_t arity() const noexcept { return arity_; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }

    /// Zero coefficients are dropped. Throws Error{ArityMismatch}.
    void add(const SignedTropScalar& coefficient, std::vector<std::uint32_t> exponents);
    /// Convenience for the degree-one monomial coefficient ⊙ X_var.
    void add_linear(const SignedTropScalar& coefficient, std::size_t var);
    void add_constant(const SignedTropScalar& coefficient);

    /// True when some exponent vector carries coefficients of both signs.
    bool has_sign_collision() const;

private:
    std::size_t arity_;
    std::vector<Monomial> monomials_;
};

/// Returns (P+(x), P-(x)); an empty sign part evaluates to -inf.
std::pair<TropScalar, TropScalar> poly_eval_pm(const TropPolynomial& p, const TropVector& x);

}  // namespace tropmetz
