#include "leibniz/extensions.hpp"

#include "leibniz/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace leibniz {

std::vector<std::string> ExtensionProblem::labels() const {
    auto l = nilradical.labels();
    l.push_back("x");
    return l;
}

bool is_symbolic_derivation(const Algebra& n, const PMatrix& tmpl) {
    const std::size_t m = n.dim();
    if (tmpl.rows() != m || tmpl.cols() != m) return false;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t k = 0; k < m; ++k) {
                MultiPoly s;
                for (const auto& [i, c] : n.product(a, b)) s += tmpl(i, k) * c;
                for (std::size_t j = 0; j < m; ++j) {
                    if (!n.c(j, b, k).is_zero()) s -= tmpl(a, j) * n.c(j, b, k);
                    if (!n.c(a, j, k).is_zero()) s -= tmpl(b, j) * n.c(a, j, k);
                }
                if (!s.is_zero()) return false;
            }
    return true;
}

PMatrix general_template(const Algebra& n, std::vector<std::string>* params) {
    auto ds = derivation_space(n);
    if (params) *params = ds.params;
    return ds.generic();
}

ExtensionProblem build_extension_problem(const Algebra& n, const PMatrix& tmpl) {
    if (!is_symbolic_derivation(n, tmpl))
        throw std::invalid_argument("build_extension_problem: template is not a derivation of the nilradical");
    const std::size_t m = n.dim(), D = m + 1, X = m;
    ExtensionProblem p;
    p.nilradical = n;
    p.tmpl = tmpl;
    std::set<std::string, NaturalLess> tp;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) tp.insert(tmpl(i, j).vars().begin(), tmpl(i, j).vars().end());
    p.template_params.assign(tp.begin(), tp.end());

    auto prefix = [](std::size_t i) {
        if (i == 0) return std::string("beta");
        if (i == 1) return std::string("gamma");
        return "mu" + std::to_string(i) + "_";
    };
    p.table.assign(D * D, std::vector<MultiPoly>(D));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (const auto& [k, c] : n.product(i, j)) p.table[i * D + j][k] = MultiPoly(c);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < m; ++k) p.table[i * D + X][k] = tmpl(i, k);
        for (std::size_t k = 0; k < m; ++k) {
            std::string name = prefix(i) + std::to_string(k);
            p.unknowns.push_back(name);
            p.table[X * D + i][k] = MultiPoly::var(name);
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::string name = "delta" + std::to_string(k);
        p.unknowns.push_back(name);
        p.table[X * D + X][k] = MultiPoly::var(name);
    }
    for (const auto& u : p.unknowns)
        if (tp.count(u)) throw std::invalid_argument("build_extension_problem: name clash on '" + u + "'");
    p.annihilator = right_annihilator(n);
    return p;
}

namespace {

using SPoly = std::vector<std::pair<std::size_t, MultiPoly>>;

struct SymTable {
    std::size_t D;
    std::vector<SPoly> sparse;
    explicit SymTable(const ExtensionProblem& p) : D(p.dim()), sparse(D * D) {
        for (std::size_t i = 0; i < D * D; ++i)
            for (std::size_t k = 0; k < D; ++k)
                if (!p.table[i][k].is_zero()) sparse[i].emplace_back(k, p.table[i][k]);
    }
    const SPoly& at(std::size_t i, std::size_t j) const { return sparse[i * D + j]; }
};

void triples_for(const ExtensionProblem& p, const SymTable& t, std::size_t a, std::vector<Equation>& out) {
    const std::size_t D = p.dim();
    const auto labels = p.labels();
    std::vector<MultiPoly> defect(D);
    for (std::size_t b = 0; b < D; ++b)
        for (std::size_t c = 0; c < D; ++c) {
            for (auto& d : defect) d = MultiPoly();
            for (const auto& [k, pk] : t.at(a, b))  // [[a,b],c]
                for (const auto& [m, q] : t.at(k, c)) defect[m] += pk * q;
            for (const auto& [k, pk] : t.at(a, c))  // -[[a,c],b]
                for (const auto& [m, q] : t.at(k, b)) defect[m] -= pk * q;
            for (const auto& [k, pk] : t.at(b, c))  // -[a,[b,c]]
                for (const auto& [m, q] : t.at(a, k)) defect[m] -= pk * q;
            for (std::size_t m = 0; m < D; ++m)
                if (!defect[m].is_zero())
                    out.push_back({defect[m], "(" + labels[a] + "," + labels[b] + "," + labels[c] + ")[" + labels[m] + "]"});
        }
}

MultiPoly monic(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.leading_coefficient());
}

ConstraintSystem finish_system(const ExtensionProblem& p, std::vector<std::vector<Equation>>& per) {
    ConstraintSystem s;
    std::set<MultiPoly> seen;
    for (auto& v : per)
        for (auto& e : v) {
            MultiPoly key = monic(e.poly);
            if (!seen.insert(key).second) continue;
            e.poly = std::move(key);
            s.equations.push_back(std::move(e));
        }
    s.indeterminates = p.template_params;
    s.indeterminates.insert(s.indeterminates.end(), p.unknowns.begin(), p.unknowns.end());
    return s;
}

}  // namespace

ConstraintSystem generate_constraints(const ExtensionProblem& p) {
    SymTable t(p);
    const long D = static_cast<long>(p.dim());
    std::vector<std::vector<Equation>> per(p.dim());
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a < D; ++a) triples_for(p, t, static_cast<std::size_t>(a), per[static_cast<std::size_t>(a)]);
    return finish_system(p, per);
}

ConstraintSystem serial::generate_constraints(const ExtensionProblem& p) {
    SymTable t(p);
    std::vector<std::vector<Equation>> per(p.dim());
    for (std::size_t a = 0; a < p.dim(); ++a) triples_for(p, t, a, per[a]);
    return finish_system(p, per);
}

ConstraintSystem ConstraintSystem::substitute(const std::string& var, const MultiPoly& value) const {
    if (std::find(indeterminates.begin(), indeterminates.end(), var) == indeterminates.end())
        throw std::invalid_argument("substitute: unknown indeterminate '" + var + "'");
    ConstraintSystem s = *this;
    for (auto& e : s.equations)
        if (e.poly.has_var(var)) e.poly = poly_substitute(e.poly, var, value);
    s.log.push_back({Step::Kind::Solve, var, value, {}});
    return s;
}

std::string Hypothesis::str() const {
    if (kind == Kind::Fix) return var + " = " + value.str();
    return expr.str() + " != 0";
}

namespace {

void substitute_all(std::vector<Equation>& eqs, const std::string& var, const MultiPoly& value) {
    for (auto& e : eqs)
        if (e.poly.has_var(var)) e.poly = poly_substitute(e.poly, var, value);
}

// drop zeros and scalar-multiple duplicates, keeping first occurrences
void tidy(std::vector<Equation>& eqs) {
    std::set<MultiPoly> seen;
    std::vector<Equation> out;
    out.reserve(eqs.size());
    for (auto& e : eqs) {
        if (e.poly.is_zero()) continue;
        if (!seen.insert(monic(e.poly)).second) continue;
        out.push_back(std::move(e));
    }
    eqs = std::move(out);
}

}  // namespace

SolveOutcome eliminate(const ConstraintSystem& s, const std::vector<Hypothesis>& hyps) {
    SolveOutcome o;
    o.original = s.equations;
    std::vector<Equation> eqs = s.equations;
    std::set<std::string, NaturalLess> known(s.indeterminates.begin(), s.indeterminates.end());
    std::set<std::string, NaturalLess> assigned;
    for (const auto& v : collect_vars([&] {
             std::vector<MultiPoly> ps;
             for (const auto& e : eqs) ps.push_back(e.poly);
             return ps;
         }()))
        known.insert(v);

    for (const auto& h : hyps) {
        if (h.kind == Hypothesis::Kind::Fix) {
            if (!known.count(h.var)) throw std::invalid_argument("hypothesis on unknown indeterminate '" + h.var + "'");
            o.log.push_back({Step::Kind::Hypothesis, h.var, MultiPoly(h.value), {}});
            assigned.insert(h.var);
            substitute_all(eqs, h.var, MultiPoly(h.value));
        } else {
            if (known.count(h.aux)) throw std::invalid_argument("auxiliary name '" + h.aux + "' already in use");
            known.insert(h.aux);
            MultiPoly e = MultiPoly::var(h.aux) * h.expr - MultiPoly(1);
            // earlier Fix hypotheses apply to the added equation too
            for (const auto& st : o.log)
                if (st.kind == Step::Kind::Hypothesis) e = poly_substitute(e, st.var, st.value);
            Equation eq{e, "assume " + h.str()};
            o.log.push_back({Step::Kind::Assume, h.aux, MultiPoly(), eq});
            eqs.push_back(eq);
        }
    }

    for (;;) {
        tidy(eqs);
        for (const auto& e : eqs)
            if (e.poly.is_constant()) {
                o.kind = SolveOutcome::Kind::Contradiction;
                o.witness = e;
                return o;
            }
        // (degree, terms, var, index)
        std::optional<std::tuple<unsigned, std::size_t, std::string, std::size_t, Rational>> best;
        for (std::size_t idx = 0; idx < eqs.size(); ++idx) {
            const MultiPoly& q = eqs[idx].poly;
            const unsigned deg = q.total_degree();
            const std::size_t nt = q.num_terms();
            if (best && (deg > std::get<0>(*best) || (deg == std::get<0>(*best) && nt > std::get<1>(*best))))
                continue;
            for (const auto& v : q.vars()) {
                auto c = q.linear_coefficient(v);
                if (!c) continue;
                bool better = !best || deg < std::get<0>(*best) ||
                              (deg == std::get<0>(*best) &&
                               (nt < std::get<1>(*best) ||
                                (nt == std::get<1>(*best) && natural_less(v, std::get<2>(*best)))));
                if (better) best = std::make_tuple(deg, nt, v, idx, *c);
            }
        }
        if (!best) break;
        const auto& [deg, nt, v, idx, c] = *best;
        Equation used = eqs[idx];
        MultiPoly rest = used.poly - MultiPoly::var(v) * c;
        MultiPoly value = rest * (Rational(-1) / c);
        o.log.push_back({Step::Kind::Solve, v, value, used});
        assigned.insert(v);
        substitute_all(eqs, v, value);
    }

    o.kind = SolveOutcome::Kind::Family;
    o.residuals = eqs;
    for (const auto& v : known)
        if (!assigned.count(v)) o.free_vars.push_back(v);
    return o;
}

bool replay(const SolveOutcome& o) {
    std::vector<Equation> eqs = o.original;
    for (const auto& st : o.log) {
        if (st.kind == Step::Kind::Assume)
            eqs.push_back(st.equation);
        else
            substitute_all(eqs, st.var, st.value);
    }
    if (o.contradiction()) {
        if (!o.witness.poly.is_constant() || o.witness.poly.is_zero()) return false;
        for (const auto& e : eqs)
            if (e.origin == o.witness.origin && e.poly == o.witness.poly) return true;
        return false;
    }
    tidy(eqs);
    std::set<MultiPoly> a, b;
    for (const auto& e : eqs) a.insert(monic(e.poly));
    for (const auto& e : o.residuals) b.insert(monic(e.poly));
    return a == b;
}

std::map<std::string, Rational> solve_values(const SolveOutcome& o, const std::map<std::string, Rational>& given,
                                             Rng& rng, long height) {
    if (o.contradiction()) throw std::logic_error("solve_values: outcome is a contradiction");
    std::map<std::string, Rational> vals;
    for (const auto& v : o.free_vars) {
        auto it = given.find(v);
        vals[v] = it != given.end() ? it->second : random_rational(rng, height);
    }
    for (auto it = o.log.rbegin(); it != o.log.rend(); ++it) {
        if (it->kind == Step::Kind::Assume) continue;
        MultiPoly p = it->value.evaluate(vals);
        if (!p.is_constant())
            throw std::logic_error("solve_values: " + it->var + " depends on unresolved " + p.str());
        vals[it->var] = p.constant_value();
    }
    for (const auto& e : o.residuals) {
        MultiPoly p = e.poly.evaluate(vals);
        if (!p.is_zero()) throw std::runtime_error("solve_values: residual " + e.poly.str() + " does not vanish");
    }
    return vals;
}

Algebra instantiate(const ExtensionProblem& p, const std::map<std::string, Rational>& values) {
    const std::size_t D = p.dim();
    Tensor t(D);
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t k = 0; k < D; ++k) {
                const MultiPoly& q = p.product(i, j)[k];
                if (q.is_zero()) continue;
                MultiPoly e = q.evaluate(values);
                if (!e.is_constant()) throw std::invalid_argument("instantiate: no value for some of " + e.str());
                t.at(i, j, k) = e.constant_value();
            }
    return Algebra(std::move(t), p.labels());
}

std::vector<std::string> transcript(const SolveOutcome& o) {
    std::vector<std::string> out;
    for (const auto& st : o.log) {
        switch (st.kind) {
            case Step::Kind::Hypothesis:
                out.push_back("hypothesis " + st.var + " = " + st.value.str());
                break;
            case Step::Kind::Assume:
                out.push_back("assume " + st.equation.poly.str() + " = 0  (" + st.equation.origin + ")");
                break;
            case Step::Kind::Solve:
                out.push_back("solve " + st.equation.origin + ": " + st.equation.poly.str() + " = 0  =>  " + st.var +
                              " = " + st.value.str());
                break;
        }
    }
    if (o.contradiction()) {
        out.push_back("contradiction " + o.witness.origin + ": reduces to " + o.witness.poly.str() + " = 0");
    } else {
        out.push_back("family: " + std::to_string(o.residuals.size()) + " residual equation(s)");
        for (const auto& e : o.residuals) out.push_back("residual " + e.origin + ": " + e.poly.str() + " = 0");
        std::string fv;
        for (const auto& v : o.free_vars) fv += (fv.empty() ? "" : " ") + v;
        out.push_back("free: " + (fv.empty() ? std::string("(none)") : fv));
    }
    return out;
}

BasisChange::BasisChange(QMatrix m, std::string desc) : matrix(std::move(m)), description(std::move(desc)) {
    if (!matrix.square() || rank(matrix) != matrix.rows())
        throw std::domain_error("BasisChange: matrix is singular" + (description.empty() ? "" : " (" + description + ")"));
}

BasisChange BasisChange::identity(std::size_t dim, std::string desc) {
    return BasisChange(QMatrix::identity(dim), std::move(desc));
}

Algebra apply_basis_change(const Algebra& a, const BasisChange& t) {
    const std::size_t d = a.dim();
    if (t.matrix.rows() != d) throw std::invalid_argument("apply_basis_change: dimension mismatch");
    QMatrix inv = inverse(t.matrix);
    Tensor out(d);
    std::vector<Vec> rows(d);
    for (std::size_t p = 0; p < d; ++p) rows[p] = t.matrix.row(p);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) out.set_product(p, q, vec_mat(bracket(a, rows[p], rows[q]), inv));
    Algebra b(std::move(out), a.labels());
    if (leibniz_check(a).pass() != leibniz_check(b).pass())
        throw std::logic_error("apply_basis_change: Leibniz verdict changed");
    return b;
}

std::vector<Rational> star_coefficients(long n, Variant v, const std::vector<Rational>& b) {
    const long top = v == Variant::A ? n : n - 1;
    if (static_cast<long>(b.size()) != top - 1)
        throw std::invalid_argument("star: expected " + std::to_string(top - 1) + " b-parameters, got " +
                                    std::to_string(b.size()));
    auto B = [&](long i) { return (i >= 2 && i <= top) ? b[static_cast<std::size_t>(i - 2)] : Rational(0); };
    std::vector<Rational> A(static_cast<std::size_t>(n + 1), Rational(0));
    auto at = [&](long i) -> Rational& { return A[static_cast<std::size_t>(i)]; };
    if (n < 2) return A;
    at(2) = -B(2);
    if (v == Variant::A) {
        for (long i = 3; i <= n; ++i) {
            Rational s = B(i);
            for (long j = 2; j <= i - 1; ++j) s += at(j) * B(i - j + 1);
            at(i) = s / Rational(1 - i);
        }
    } else {
        if (n >= 3) at(3) = B(2) * B(2) / Rational(2);
        for (long k = 2; 2 * k <= n; ++k) {
            if (k <= (n - 1) / 2) {
                Rational s = B(2 * k);
                for (long j = 2; j <= k; ++j) s += at(2 * j - 1) * B(2 * k - 2 * j + 2);
                at(2 * k) = s / Rational(1 - 2 * k);
            }
            if (2 * k + 1 <= n && k <= (n - 3) / 2) {
                Rational s(0);
                for (long j = 1; j <= k; ++j) s += at(2 * j) * B(2 * k - 2 * j + 2);
                at(2 * k + 1) = -s / Rational(2 * k);
            }
        }
    }
    return A;
}

BasisChange star_change(long n, Variant v, const std::vector<Rational>& b) {
    auto A = star_coefficients(n, v, b);
    const std::size_t d = static_cast<std::size_t>(n + 2);
    QMatrix t = QMatrix::identity(d);
    // e'_1 = e_1 + sum_{i=2}^{top} A_i e_i. A: top = n (the printed n-1 leaves
    // b'_n). B: e_n is not on the e_0-chain, so the chain stops at e_{n-1}.
    const long top = v == Variant::A ? n : n - 1;
    for (long i = 2; i <= top; ++i) t(1, static_cast<std::size_t>(i)) = A[static_cast<std::size_t>(i)];
    for (long i = 2; i <= top; ++i)
        for (long j = i + 1; j <= top; ++j)
            t(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = A[static_cast<std::size_t>(j - i + 1)];
    return BasisChange(std::move(t), std::string("(*) variant ") + (v == Variant::A ? "A" : "B"));
}

namespace {

FamilySpec solvable_spec(long n, Variant v, long r, const std::vector<Rational>& alphas, const Rational& a1,
                         const std::vector<Rational>& b) {
    FamilySpec s(v == Variant::A ? "SolvA" : "SolvB", n, {{"r", Rational(r)}});
    put_alphas(s.params, alphas);
    if (v == Variant::A)
        s.params["a1"] = a1;
    else if (!a1.is_zero())
        throw std::invalid_argument("variant B has no a1 parameter");
    for (std::size_t i = 0; i < b.size(); ++i) s.params["b" + std::to_string(i + 2)] = b[i];
    return s;
}

std::string join(const std::vector<Rational>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x.str();
    return "(" + s + ")";
}

}  // namespace

ConjectureResult conjecture_check(long n, Variant v, long r, const std::vector<Rational>& alphas, const Rational& a1,
                                  const std::vector<Rational>& b) {
    ConjectureResult res;
    Algebra R = make_family(solvable_spec(n, v, r, alphas, a1, b));
    BasisChange T = star_change(n, v, b);
    Algebra S = apply_basis_change(R, T);
    const std::size_t X = static_cast<std::size_t>(n + 1);
    for (long i = 2; i <= n; ++i) res.residual_b.push_back(S.c(1, X, static_cast<std::size_t>(i)));
    res.eliminated = std::all_of(res.residual_b.begin(), res.residual_b.end(), [](const Rational& q) { return q.is_zero(); });
    std::vector<Rational> zeros(b.size(), Rational(0));
    res.normal_form = S.same_table(make_family(solvable_spec(n, v, r, alphas, a1, zeros)));
    auto A = star_coefficients(n, v, b);
    res.transcript.push_back(std::string("variant ") + (v == Variant::A ? "A" : "B") + " n=" + std::to_string(n) +
                             " r=" + std::to_string(r) + " alpha=" + join(alphas) + " a1=" + a1.str() + " b=" + join(b));
    res.transcript.push_back("A_2..A_n = " + join(std::vector<Rational>(A.begin() + 2, A.end())));
    res.transcript.push_back("b' = " + join(res.residual_b));
    res.transcript.push_back(std::string("eliminated=") + (res.eliminated ? "true" : "false") +
                             " normal_form=" + (res.normal_form ? "true" : "false"));
    return res;
}

SolvableSample sample_solvable(long n, Variant v, long r, const std::vector<Rational>& alphas, const Rational& a1,
                               Rng& rng, long height) {
    FamilySpec spec(v == Variant::A ? "A" : "B", n, {{"r", Rational(r)}});
    put_alphas(spec.params, alphas);
    Algebra N = make_family(spec);
    DerivationSpace ds = derivation_space(N);
    SolvableSample out;
    std::map<std::string, Rational> vals;
    for (const auto& p : ds.params) {
        if (p == "a0")
            vals[p] = 1;
        else if (p == "a1") {
            out.a1_free = true;
            vals[p] = v == Variant::A ? a1 : Rational(0);
        } else if (p[0] == 'a')
            vals[p] = 0;
        else if (p == "b1")
            vals[p] = Rational(1 + r);
        else if (p == "b0")
            vals[p] = 0;
        else if (p[0] == 'b')
            vals[p] = (v == Variant::B && p == "b" + std::to_string(n)) ? Rational(0) : random_rational(rng, height);
        else
            vals[p] = 0;
    }
    QMatrix M = evaluate(ds.generic(), vals);
    const std::size_t nn = static_cast<std::size_t>(n);
    if (M(0, 0) != Rational(1) || M(1, 1) != Rational(1 + r) || !M(1, 0).is_zero())
        throw std::logic_error("sample_solvable: unexpected derivation shape");
    for (std::size_t j = 2; j <= nn; ++j)
        if (!M(0, j).is_zero()) throw std::logic_error("sample_solvable: a_j not eliminated");
    out.a1 = M(0, 1);
    const std::size_t top = v == Variant::A ? nn : nn - 1;
    for (std::size_t j = 2; j <= top; ++j) out.b.push_back(M(1, j));
    if (v == Variant::B && !M(1, nn).is_zero()) throw std::logic_error("sample_solvable: b_n nonzero for B");
    return out;
}

}  // namespace leibniz
