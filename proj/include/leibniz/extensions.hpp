#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/poly.hpp"
#include "leibniz/sampling.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace leibniz {

// R = N + <x>. Basis of R: e_0..e_n of N, then x at index dim(N).
// [e_i,x] comes from the template row i; [x,e_0] = sum beta{k} e_k,
// [x,e_1] = sum gamma{k} e_k, [x,e_i] = sum mu{i}_{k} e_k (i >= 2),
// [x,x] = sum delta{k} e_k.
struct ExtensionProblem {
    Algebra nilradical;
    PMatrix tmpl;  // tmpl(i,k): coefficient of e_k in [e_i,x]
    std::vector<std::string> template_params;
    std::vector<std::string> unknowns;
    Subspace annihilator;  // Ann_r(N)
    // table[(i*D + j)] = components of [b_i, b_j] in R, D = dim(N)+1
    std::vector<std::vector<MultiPoly>> table;

    std::size_t dim() const { return nilradical.dim() + 1; }
    std::size_t x() const { return nilradical.dim(); }
    const std::vector<MultiPoly>& product(std::size_t i, std::size_t j) const { return table[i * dim() + j]; }
    std::vector<std::string> labels() const;
};

// True when tmpl satisfies the derivation equation of N identically.
bool is_symbolic_derivation(const Algebra& n, const PMatrix& tmpl);

// Throws std::invalid_argument if tmpl is not symbolically a derivation.
ExtensionProblem build_extension_problem(const Algebra& n, const PMatrix& tmpl);

// The general derivation template of N: derivation_space(N).generic().
PMatrix general_template(const Algebra& n, std::vector<std::string>* params = nullptr);

struct Equation {
    MultiPoly poly;      // asserted == 0
    std::string origin;  // e.g. "(x,e1,e0)[2]": triple and component
};

struct Step {
    enum class Kind { Hypothesis, Assume, Solve };
    Kind kind;
    std::string var;     // Hypothesis/Solve: the indeterminate fixed
    MultiPoly value;     // its value
    Equation equation;   // Solve: equation used; Assume: equation added
};

struct ConstraintSystem {
    std::vector<Equation> equations;
    std::vector<Step> log;
    std::vector<std::string> indeterminates;  // every name the system may mention

    // Substitution into every equation. Throws std::invalid_argument if `var`
    // is not one of the system's indeterminates.
    ConstraintSystem substitute(const std::string& var, const MultiPoly& value) const;
};

// Leibniz identity on all ordered triples of R, one scalar equation per
// nonzero component; each normalized to leading coefficient 1 and
// deduplicated (first occurrence kept). Triples with a common first element
// are expanded concurrently.
ConstraintSystem generate_constraints(const ExtensionProblem& p);
namespace serial {
ConstraintSystem generate_constraints(const ExtensionProblem& p);
}

struct Hypothesis {
    enum class Kind { Fix, NonZero };
    Kind kind = Kind::Fix;
    std::string var;  // Fix: var = value
    Rational value;
    MultiPoly expr;   // NonZero: expr != 0, encoded as aux*expr - 1 = 0
    std::string aux;

    static Hypothesis fix(std::string v, Rational val) { return {Kind::Fix, std::move(v), std::move(val), {}, {}}; }
    static Hypothesis nonzero(MultiPoly e, std::string aux_name) {
        return {Kind::NonZero, {}, Rational(0), std::move(e), std::move(aux_name)};
    }
    std::string str() const;
};

struct SolveOutcome {
    enum class Kind { Contradiction, Family };
    Kind kind = Kind::Family;
    Equation witness;  // Contradiction: reduces to a nonzero constant
    std::vector<Step> log;
    std::vector<Equation> residuals;  // Family
    std::vector<std::string> free_vars;
    std::vector<Equation> original;  // the system before any step, for replay

    bool contradiction() const { return kind == Kind::Contradiction; }
};

// Hypotheses first (logged), then to fixpoint: drop zeros; a nonzero constant
// ends in Contradiction; otherwise solve an equation of the form c*v + rest
// (v absent from rest, c a nonzero constant) for v and substitute everywhere.
// Candidates are ranked by (degree, term count, variable in natural order).
SolveOutcome eliminate(const ConstraintSystem& s, const std::vector<Hypothesis>& hyps = {});

// Re-applies the log to the original equations. Returns true when a
// Contradiction reproduces its witness constant, or a Family reproduces
// exactly its residual set.
bool replay(const SolveOutcome& o);

// value of every assigned/free indeterminate; free ones taken from `given`
// or drawn from rng. Throws if a residual does not vanish.
std::map<std::string, Rational> solve_values(const SolveOutcome& o, const std::map<std::string, Rational>& given,
                                             Rng& rng, long height = 9);

// The numeric R of a Family outcome at the given values.
Algebra instantiate(const ExtensionProblem& p, const std::map<std::string, Rational>& values);

std::vector<std::string> transcript(const SolveOutcome& o);

// Rows are the new basis vectors in old coordinates.
struct BasisChange {
    QMatrix matrix;
    std::string description;

    BasisChange() = default;
    // Throws std::domain_error if singular.
    explicit BasisChange(QMatrix m, std::string desc = {});
    static BasisChange identity(std::size_t dim, std::string desc = {});
};

Algebra apply_basis_change(const Algebra& a, const BasisChange& t);

enum class Variant { A, B };

// A_i coefficients of (*) at index i (entries 0,1 unused).
std::vector<Rational> star_coefficients(long n, Variant v, const std::vector<Rational>& b);

// (*) on the basis (e_0..e_n, x). b = (b_2..b_n) for A, (b_2..b_{n-1}) for B.
// For B the sums stop at e_{n-1} and e_n is left alone.
BasisChange star_change(long n, Variant v, const std::vector<Rational>& b);

struct ConjectureResult {
    bool eliminated = false;
    std::vector<Rational> residual_b;  // b'_2..b'_n after (*)
    bool normal_form = false;          // table equals the b = 0 member
    std::vector<std::string> transcript;
};

ConjectureResult conjecture_check(long n, Variant v, long r, const std::vector<Rational>& alphas, const Rational& a1,
                                  const std::vector<Rational>& b);

// A valid (a_1, b) for SolvA/SolvB sampled through the derivation space of
// the nilradical: a_0 = 1, a_j = 0 (j >= 2), b_1 = 1 + r, free b_j random,
// b_n = 0 for B. a_1 is set to `a1` when free; when forced, the forced value
// is returned instead.
struct SolvableSample {
    Rational a1;
    std::vector<Rational> b;  // b_2..b_n (A) or b_2..b_{n-1} (B)
    bool a1_free = false;
};
SolvableSample sample_solvable(long n, Variant v, long r, const std::vector<Rational>& alphas, const Rational& a1,
                               Rng& rng, long height = 10);

}  // namespace leibniz
