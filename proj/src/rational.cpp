#include "leibniz/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace leibniz {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

namespace {
bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}
}  // namespace

Rational Rational::parse(std::string_view s) {
    auto bad = [&] { return std::invalid_argument("not an exact rational: '" + std::string(s) + "'"); };
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view ns = body.substr(0, slash);
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(ns) || !all_digits(ds)) throw bad();
    mpz_class n(std::string(ns), 10), d(std::string(ds), 10);
    if (d == 0) throw bad();
    Rational r;
    r.q_ = mpq_class(n, d);
    r.q_.canonicalize();
    if (neg) r.q_ = -r.q_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

std::size_t Rational::hash() const {
    // cheap mix of the low limbs; collisions only cost speed
    std::size_t h = mpz_get_ui(q_.get_num_mpz_t());
    h ^= mpz_get_ui(q_.get_den_mpz_t()) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::size_t>(sgn(q_) + 1) << 1;
    return h;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned e) {
    Rational acc(1);
    for (unsigned i = 0; i < e; ++i) acc *= base;
    return acc;
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(z);
}

}  // namespace leibniz
