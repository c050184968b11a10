#include "leibniz/normal_forms.hpp"

#include <stdexcept>

namespace leibniz {

namespace {

std::size_t u(long i) { return static_cast<std::size_t>(i); }

struct Script {
    Normalized state;
    explicit Script(const Algebra& r) : state{r, {}} {}
    const Algebra& R() const { return state.algebra; }
    const Rational& c(long i, long j, long k) const { return R().c(u(i), u(j), u(k)); }
    void apply(QMatrix t, const std::string& what) {
        BasisChange bc(std::move(t), what);
        state.algebra = apply_basis_change(state.algebra, bc);
        state.changes.push_back(std::move(bc));
    }
    QMatrix id() const { return QMatrix::identity(R().dim()); }
};

}  // namespace

Normalized normalize_f2_extension(const Algebra& r, long n) {
    Script s(r);
    const long X = n + 1;
    if (r.dim() != u(n + 2)) throw std::invalid_argument("normalize_f2_extension: dimension is not n+2");

    // [e_0,x] = a_0 e_0 + a_1 e_1 + ...: remove the e_1 part, then rebuild
    // the adapted basis e_2 = [e_0,e_0], e_{i+1} = [e_i,e_0].
    Rational a1 = s.c(0, X, 1);
    if (!a1.is_zero()) {
        Rational b1 = s.c(1, X, 1);
        if (b1 == Rational(1)) throw std::domain_error("normalize_f2_extension: b_1 = a_0, cannot remove a_1");
        QMatrix t = s.id();
        t(0, 1) = -a1 / (b1 - Rational(1));
        Vec e0 = t.row(0);
        Vec cur = bracket(s.R(), e0, e0);
        for (long i = 2; i <= n; ++i) {
            for (long k = 0; k < X + 1; ++k) t(u(i), u(k)) = cur[u(k)];
            cur = bracket(s.R(), cur, e0);
        }
        s.apply(std::move(t), "e'_0 = e_0 - a_1/(b_1-1) e_1; e'_2 = [e'_0,e'_0]; e'_{i+1} = [e'_i,e'_0]");
    }

    {
        std::vector<Rational> a(u(n + 1)), A(u(n + 1));
        for (long i = 0; i <= n; ++i) a[u(i)] = s.c(0, X, i);
        A[2] = -a[2];
        for (long i = 3; i <= n; ++i) {
            Rational sum = a[u(i)];
            for (long j = 2; j <= i - 1; ++j) sum += A[u(j)] * a[u(i - j + 1)];
            A[u(i)] = sum / Rational(1 - i);
        }
        QMatrix t = s.id();
        for (long i = 2; i <= n; ++i) t(0, u(i)) = A[u(i)];
        for (long i = 2; i <= n; ++i)
            for (long k = i + 1; k <= n; ++k) t(u(i), u(k)) = A[u(k - i + 1)];
        s.apply(std::move(t), "e'_0 = e_0 + sum A_i e_i, e'_i = e_i + sum A_{k-i+1} e_k");
    }
    {
        QMatrix t = s.id();
        for (long i = 2; i <= n - 1; ++i) t(u(X), u(i)) = -s.c(X, 0, i + 1);
        s.apply(std::move(t), "x' = x - sum mu_{i+1} e_i");
    }
    {
        Rational b1 = s.c(1, X, 1), bn = s.c(1, X, n);
        QMatrix t = s.id();
        t(1, u(n)) = -bn / (Rational(n) - b1);
        s.apply(std::move(t), "e'_1 = e_1 - b_n/(n-b_1) e_n");
    }
    {
        QMatrix t = s.id();
        t(u(X), u(n)) = -s.c(X, X, n) / Rational(n);
        s.apply(std::move(t), "x' = x - (delta_n/n) e_n");
    }
    return s.state;
}

Normalized normalize_solvable_a(const Algebra& r, long n) {
    Script s(r);
    const long X = n + 1;
    QMatrix t = s.id();
    for (long i = 1; i <= n - 1; ++i) t(u(X), u(i)) = -s.c(0, X, i + 1);
    s.apply(std::move(t), "x' = x - sum_{i=1}^{n-1} a_{i+1} e_i");
    return s.state;
}

Normalized normalize_solvable_b(const Algebra& r, long n, long rr) {
    Normalized first = normalize_solvable_a(r, n);
    Script s(first.algebra);
    s.state.changes = first.changes;
    const long X = n + 1;
    {
        QMatrix t = s.id();
        t(0, u(n)) = -s.c(0, X, n) / Rational(n + 2 * rr - 1);
        s.apply(std::move(t), "e'_0 = e_0 - a_n/(n+2r-1) e_n");
    }
    {
        QMatrix t = s.id();
        t(1, u(n)) = -s.c(1, X, n) / Rational(n + rr - 1);
        s.apply(std::move(t), "e'_1 = e_1 - b_n/(n+r-1) e_n");
    }
    return s.state;
}

}  // namespace leibniz
