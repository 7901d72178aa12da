#pragma once

// Exact rational scalar. Always kept in lowest terms with a positive
// denominator; mpq_class does the heavy lifting.

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace heisconvex {

using Integer = mpz_class;

class Rational {
public:
    Rational() : value_(0) {}
    Rational(int v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(long long v) : value_(Integer(std::to_string(v))) {}  // NOLINT
    explicit Rational(const Integer& v) : value_(v) {}

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }

    Rational(long long num, long long den)
        : Rational(Integer(std::to_string(num)), Integer(std::to_string(den))) {}

    /// Parses "p", "-p" or "p/q". Whitespace is not accepted.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("Rational: empty string");
        const auto slash = text.find('/');
        auto parse_int = [](std::string_view s) {
            if (s.empty()) throw std::invalid_argument("Rational: malformed integer");
            std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
            if (i == s.size()) throw std::invalid_argument("Rational: malformed integer");
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9')
                    throw std::invalid_argument("Rational: malformed integer '" + std::string(s) + "'");
            }
            std::string owned(s[0] == '+' ? s.substr(1) : s);
            return Integer(owned);
        };
        if (slash == std::string_view::npos) return Rational(parse_int(text));
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }

    [[nodiscard]] Integer numerator() const { return value_.get_num(); }
    [[nodiscard]] Integer denominator() const { return value_.get_den(); }

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] bool is_one() const { return value_ == 1; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(value_); }

    [[nodiscard]] Rational abs() const {
        Rational r;
        r.value_ = ::abs(value_);
        return r;
    }

    [[nodiscard]] Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        r.value_ = 1 / value_;
        return r;
    }

    [[nodiscard]] Rational pow(unsigned k) const {
        Rational r(1);
        for (unsigned i = 0; i < k; ++i) r *= *this;
        return r;
    }

    [[nodiscard]] double to_double() const { return value_.get_d(); }

    [[nodiscard]] std::string to_string() const {
        if (value_.get_den() == 1) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) {
        Rational r;
        r.value_ = -a.value_;
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

    [[nodiscard]] const mpq_class& raw() const { return value_; }

private:
    mpq_class value_;
};

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Scalar hooks used by the generic matrix code.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline std::string to_string(const Rational& r) { return r.to_string(); }

}  // namespace heisconvex

template <>
struct std::hash<heisconvex::Rational> {
    std::size_t operator()(const heisconvex::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.to_string());
    }
};
