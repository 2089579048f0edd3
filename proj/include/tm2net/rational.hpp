#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tm2net {

/// Exact rational number, always in lowest terms with a positive denominator.
/// Backed by GMP's mpq; the wrapper keeps canonicalization and the
/// "num/den" text form in one place.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by intent
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "n", "-n" or "n/d" (d != 0). Throws Error(MalformedDocument).
    static Rational parse(std::string_view text);

    /// Exact value of a finite double (dyadic rational).
    static Rational from_double(double value);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }

    /// Largest integer <= value.
    mpz_class floor() const;

    double to_double() const { return q_.get_d(); }

    /// "num/den" (den omitted never: integers print as "n/1").
    std::string to_string() const;

    const mpq_class& raw() const { return q_; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// base^exp for small non-negative exponents.
Rational pow(const Rational& base, unsigned exp);

}  // namespace tm2net
