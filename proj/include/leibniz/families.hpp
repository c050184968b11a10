#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace leibniz {

struct FamilySpec {
    std::string id;
    long n = 0;
    std::map<std::string, Rational> params;  // missing entries default to 0

    FamilySpec() = default;
    FamilySpec(std::string id_, long n_, std::map<std::string, Rational> p = {})
        : id(std::move(id_)), n(n_), params(std::move(p)) {}
};

enum class Parity { Any, Odd, Even };

struct FamilyInfo {
    std::string id;
    std::string title;
    std::string params;       // parameter grammar, e.g. "alpha3..alphan, theta"
    std::string constraints;  // human-readable range/parity rules
    long min_n;
    Parity parity;
    bool lie;
    bool nilpotent;  // nilpotent (filiform) family vs solvable extension
};

// The 15 constructors, in a fixed order.
const std::vector<FamilyInfo>& family_catalog();
const FamilyInfo& family_info(const std::string& id);  // throws std::invalid_argument

// Throws std::invalid_argument on arity/range/parity violations and
// std::runtime_error (naming a failing triple) if the table is not Leibniz.
Algebra make_family(const FamilySpec& spec);
// Same table with the parity precondition waived (used to record what
// happens at the other parity; range and Leibniz checks still apply).
Algebra make_family(const FamilySpec& spec, bool enforce_parity);

// F1 with coefficients from the derivation-compatibility recursion.
Algebra make_F1s(long n, long s);

// alpha_3..alpha_n for F1^s (index k at position k-3).
std::vector<Rational> f1s_alphas(long n, long s);

// binom(p*m, m) / ((p-1)*m + 1); p=2 gives the Catalan numbers.
Rational fuss_catalan(long m, long p);

// The closed form printed with F1^s, read as signed Fuss-Catalan numbers:
// 0 unless k = s mod (s-2), else (-1)^t FC(t+1, s-1), t = (k-s)/(s-2).
Rational f1s_closed_form(long k, long s);

// t for families A and B.
long family_t(const std::string& id, long n, long r);

// First nonzero alpha tuple (alpha_1 = 1, later entries from a small integer
// grid, lexicographic) for which the A or B table is Leibniz; empty if none.
std::vector<Rational> find_valid_alphas(const std::string& id, long n, long r);

// Pack alpha_1..alpha_t as parameters "alpha1".. for A/B/SolvA/SolvB.
void put_alphas(std::map<std::string, Rational>& params, const std::vector<Rational>& alphas);

}  // namespace leibniz
