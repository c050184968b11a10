#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace leibniz {

// Thin value wrapper over mpq_class. GMP keeps the value canonical after
// every arithmetic op; construction from num/den canonicalizes explicitly.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT: implicit from integers is intended
    Rational(int v) : q_(v) {}   // NOLINT
    Rational(long num, long den);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& z) : q_(z) {}

    // Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else
    // (including a zero denominator).
    static Rational parse(std::string_view s);

    std::string str() const { return q_.get_str(); }
    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r; r.q_ = -q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned e);

// Counting binomial; 0 whenever k<0, n<0 or k>n. The A/B tables rely on
// the n<0 case being 0 (e.g. binom(j-k-1, k-i) with k>=j).
Rational binomial(long n, long k);

}  // namespace leibniz

template <>
struct std::hash<leibniz::Rational> {
    std::size_t operator()(const leibniz::Rational& r) const noexcept { return r.hash(); }
};
