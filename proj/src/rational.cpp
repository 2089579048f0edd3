#include "tm2net/rational.hpp"

#include <cmath>
#include <ostream>

#include "tm2net/error.hpp"

namespace tm2net {

Rational::Rational(std::int64_t num, std::int64_t den) : q_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw Error(ErrorCode::OutOfRange, "rational with zero denominator");
    q_.canonicalize();
}

namespace {

bool valid_integer(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-')
        throw Error(ErrorCode::MalformedDocument, "malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::MalformedDocument, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    return Rational(std::move(q));
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::OutOfRange, "non-finite double has no rational value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return Rational(std::move(q));
}

mpz_class Rational::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
}

std::string Rational::to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorCode::OutOfRange, "division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational pow(const Rational& base, unsigned exp) {
    Rational result(1);
    for (unsigned i = 0; i < exp; ++i) result *= base;
    return result;
}

}  // namespace tm2net
