#pragma once

#include "leibniz/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace leibniz {

// "b2" < "b10" < "beta0": digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b);

struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const { return natural_less(a, b); }
};

using Exponents = std::vector<unsigned>;

// Graded lex, highest first: bigger total degree wins, then lex on the
// exponent vector (earlier indeterminate = more significant).
struct GrlexDesc {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Polynomial over Rational in named indeterminates. Each value carries its
// own sorted indeterminate list (only those that occur), and terms keyed by
// dense exponent vectors over that list.
class MultiPoly {
public:
    using Terms = std::map<Exponents, Rational, GrlexDesc>;

    MultiPoly() = default;
    MultiPoly(const Rational& c);  // NOLINT: constants promote implicitly
    MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT
    MultiPoly(int c) : MultiPoly(Rational(c)) {}   // NOLINT

    static MultiPoly var(const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool has_var(const std::string& name) const;

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Throws std::logic_error if not constant.
    Rational constant_value() const;
    Rational constant_term() const;
    std::size_t num_terms() const { return terms_.size(); }
    unsigned total_degree() const;
    Rational leading_coefficient() const;

    // If `name` occurs only as a single term c*name (c a nonzero constant),
    // returns c.
    std::optional<Rational> linear_coefficient(const std::string& name) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly operator-() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    // Total order used for deduplication and sorted containers.
    friend bool operator<(const MultiPoly& a, const MultiPoly& b);

    // Substitute every name in `values` by its constant; names not occurring
    // are ignored.
    MultiPoly evaluate(const std::map<std::string, Rational>& values) const;

    std::string str() const;

private:
    friend MultiPoly poly_substitute(const MultiPoly&, const std::string&, const MultiPoly&);
    void normalize();  // drop zero coefficients and unused indeterminates
    MultiPoly remapped(const std::vector<std::string>& target) const;

    std::vector<std::string> vars_;
    Terms terms_;
};

// Exact substitution var <- value; an indeterminate that does not occur is
// left alone (so constants come back unchanged). "Unknown indeterminate" is
// judged against a whole system, see ConstraintSystem::substitute.
// Throws std::invalid_argument on a malformed name.
MultiPoly poly_substitute(const MultiPoly& p, const std::string& var, const MultiPoly& value);

bool valid_var_name(const std::string& name);

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

std::set<std::string, NaturalLess> collect_vars(const std::vector<MultiPoly>& ps);

}  // namespace leibniz
