#include "tropmetz/rational.hpp"

#include "tropmetz/error.hpp"

#include <cctype>

namespace tropmetz {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::MixedSigns: return "MixedSigns";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NonStochastic: return "NonStochastic";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NotCompliant: return "NotCompliant";
        case ErrorCode::EmptyBelow: return "EmptyBelow";
        case ErrorCode::SupportMismatch: return "SupportMismatch";
        case ErrorCode::ValidationFailed: return "ValidationFailed";
        case ErrorCode::SignCollision: return "SignCollision";
        case ErrorCode::NoWitness: return "NoWitness";
        case ErrorCode::Malformed: return "Malformed";
    }
    return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    const auto slash = text.find('/');
    const auto num_text = trim(text.substr(0, slash));
    if (!is_integer_literal(num_text)) {
        throw Error(ErrorCode::Malformed, "not a rational: '" + std::string(text) + "'");
    }
    mpz_class den = 1;
    if (slash != std::string_view::npos) {
        const auto den_text = trim(text.substr(slash + 1));
        if (!is_integer_literal(den_text)) {
            throw Error(ErrorCode::Malformed, "not a rational: '" + std::string(text) + "'");
        }
        den = parse_integer(den_text);
        if (den == 0) throw Error(ErrorCode::Malformed, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(parse_integer(num_text), den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string pretty_rational(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return format_rational(value);
}

}  // namespace tropmetz
