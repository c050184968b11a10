#include "leibniz/derivations.hpp"

#include "leibniz/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace leibniz {

PMatrix DerivationSpace::generic() const {
    const std::size_t d = algebra.dim();
    PMatrix m(d, d);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        MultiPoly p = MultiPoly::var(params[k]);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (!basis[k](i, j).is_zero()) m(i, j) += p * basis[k](i, j);
    }
    return m;
}

bool is_derivation(const Algebra& a, const QMatrix& d) {
    const std::size_t n = a.dim();
    if (d.rows() != n || d.cols() != n)
        throw std::invalid_argument("is_derivation: matrix is " + std::to_string(d.rows()) + "x" +
                                    std::to_string(d.cols()) + ", algebra has dim " + std::to_string(n));
    std::vector<Vec> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = d.row(i);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            Vec lhs = vec_mat(bracket(a, a.e(x), a.e(y)), d);
            Vec r1 = bracket(a, img[x], a.e(y));
            Vec r2 = bracket(a, a.e(x), img[y]);
            for (std::size_t k = 0; k < n; ++k)
                if (lhs[k] != r1[k] + r2[k]) return false;
        }
    return true;
}

namespace {

void equations_for(const Algebra& a, std::size_t x, std::vector<Vec>& rows) {
    const std::size_t n = a.dim(), N = n * n;
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t k = 0; k < n; ++k) {
            Vec row(N, Rational(0));
            for (const auto& [i, c] : a.product(x, y)) row[i * n + k] += c;  // d([e_x,e_y])
            for (std::size_t j = 0; j < n; ++j) {
                const Rational& c1 = a.c(j, y, k);  // [d e_x, e_y]
                if (!c1.is_zero()) row[x * n + j] -= c1;
                const Rational& c2 = a.c(x, j, k);  // [e_x, d e_y]
                if (!c2.is_zero()) row[y * n + j] -= c2;
            }
            if (!is_zero_vec(row)) rows.push_back(std::move(row));
        }
}

QMatrix stack(const std::vector<Vec>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

std::string param_name(std::size_t i, std::size_t j) {
    if (i == 0) return "a" + std::to_string(j);
    if (i == 1) return "b" + std::to_string(j);
    return "d" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

QMatrix derivation_equations(const Algebra& a) {
    const long n = static_cast<long>(a.dim());
    std::vector<std::vector<Vec>> per(a.dim());
#pragma omp parallel for schedule(dynamic)
    for (long x = 0; x < n; ++x) equations_for(a, static_cast<std::size_t>(x), per[static_cast<std::size_t>(x)]);
    std::vector<Vec> rows;
    for (auto& p : per)
        for (auto& r : p) rows.push_back(std::move(r));
    return stack(rows, a.dim() * a.dim());
}

QMatrix serial::derivation_equations(const Algebra& a) {
    std::vector<Vec> rows;
    for (std::size_t x = 0; x < a.dim(); ++x) equations_for(a, x, rows);
    return stack(rows, a.dim() * a.dim());
}

DerivationSpace derivation_space(const Algebra& a) {
    const std::size_t n = a.dim(), N = n * n;
    QMatrix eq = derivation_equations(a);
    // column p holds unknown N-1-p
    QMatrix rev(eq.rows(), N);
    for (std::size_t r = 0; r < eq.rows(); ++r)
        for (std::size_t u = 0; u < N; ++u) rev(r, N - 1 - u) = eq(r, u);
    auto kernel = nullspace(rev);
    DerivationSpace ds{a, {}, {}};
    // nullspace() yields one vector per free column in increasing column
    // order; walk backwards so parameters come out as a0, a1, ..., b1, ...
    for (auto it = kernel.rbegin(); it != kernel.rend(); ++it) {
        QMatrix m(n, n);
        std::size_t lead = N;
        for (std::size_t p = 0; p < N; ++p) {
            const std::size_t u = N - 1 - p;
            m(u / n, u % n) = (*it)[p];
        }
        // the free unknown is the one with entry exactly 1 and the largest
        // column index among nonzeros (pivots sit to its left)
        for (std::size_t p = N; p-- > 0;)
            if (!(*it)[p].is_zero()) {
                lead = N - 1 - p;
                break;
            }
        ds.basis.push_back(std::move(m));
        ds.params.push_back(param_name(lead / n, lead % n));
    }
    return ds;
}

DerivationSpace inner_derivations(const Algebra& a) {
    const std::size_t n = a.dim();
    std::vector<Vec> flat;
    for (std::size_t i = 0; i < n; ++i) {
        QMatrix r = right_multiplication(a, a.e(i));
        Vec v;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) v.push_back(r(x, y));
        flat.push_back(std::move(v));
    }
    Subspace s = Subspace::span(flat, n * n);
    DerivationSpace ds{a, {}, {}};
    for (std::size_t k = 0; k < s.dim(); ++k) {
        QMatrix m(n, n);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) m(x, y) = s.basis()[k][x * n + y];
        ds.basis.push_back(std::move(m));
        ds.params.push_back("r" + std::to_string(k));
    }
    return ds;
}

namespace {

Rational trace_of_product(const QMatrix& p, const QMatrix& q) {
    Rational t(0);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (!p(i, j).is_zero() && !q(j, i).is_zero()) t += p(i, j) * q(j, i);
    return t;
}

}  // namespace

NilIndependence nil_independence(const DerivationSpace& ds, std::uint64_t seed, int trials) {
    NilIndependence out;
    const std::size_t n = ds.algebra.dim(), m = ds.basis.size();
    bool upper = true, lower = true;
    for (const auto& b : ds.basis) {
        upper = upper && b.is_upper_triangular();
        lower = lower && b.transpose().is_upper_triangular();
    }
    out.triangular = upper || lower;
    if (out.triangular) {
        std::vector<Vec> diag;
        for (const auto& b : ds.basis) {
            Vec v;
            for (std::size_t i = 0; i < n; ++i) v.push_back(b(i, i));
            diag.push_back(std::move(v));
        }
        out.diagonal_rank = span_rank(diag, n);
    }

    // Jacobian of d -> (tr d^k)_{k=1..n} at random points; its generic rank
    // is the number of independent spectral directions.
    std::vector<std::size_t> ranks(static_cast<std::size_t>(trials), 0);
    std::vector<char> nonnil(static_cast<std::size_t>(trials), 0);
    if (m > 0) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            Rng rng = stream(seed, static_cast<std::uint64_t>(t));
            QMatrix d(n, n);
            for (const auto& b : ds.basis) d = d + random_rational(rng, 100) * b;
            std::vector<QMatrix> pw{QMatrix::identity(n)};
            for (std::size_t k = 1; k < n; ++k) pw.push_back(pw.back() * d);
            std::vector<Vec> jac;
            for (std::size_t k = 1; k <= n; ++k) {
                Vec row;
                for (const auto& b : ds.basis)
                    row.push_back(Rational(static_cast<long>(k)) * trace_of_product(pw[k - 1], b));
                jac.push_back(std::move(row));
            }
            ranks[static_cast<std::size_t>(t)] = span_rank(jac, m);
            nonnil[static_cast<std::size_t>(t)] = matrix_is_nilpotent(d) ? 0 : 1;
        }
    }
    for (int t = 0; t < trials; ++t) {
        out.sampled_rank = std::max(out.sampled_rank, ranks[static_cast<std::size_t>(t)]);
        out.sampled_non_nilpotent = out.sampled_non_nilpotent || nonnil[static_cast<std::size_t>(t)];
    }
    if ((out.sampled_rank > 0) != out.sampled_non_nilpotent)
        throw std::runtime_error("nil-independence: sampled rank " + std::to_string(out.sampled_rank) +
                                 " inconsistent with nilpotency of samples");
    if (out.triangular && out.diagonal_rank != out.sampled_rank)
        throw std::runtime_error("nil-independence: diagonal rank " + std::to_string(out.diagonal_rank) +
                                 " disagrees with sampled rank " + std::to_string(out.sampled_rank));
    return out;
}

std::size_t max_nil_independent(const DerivationSpace& d) {
    auto r = nil_independence(d);
    return r.triangular ? r.diagonal_rank : r.sampled_rank;
}

std::size_t outer_dimension(const Algebra& a) { return derivation_space(a).dim() - inner_derivations(a).dim(); }

bool space_contains(const std::vector<QMatrix>& sup, const std::vector<QMatrix>& sub) {
    if (sub.empty()) return true;
    const std::size_t n = sub[0].rows() * sub[0].cols();
    auto flat = [&](const QMatrix& m) {
        Vec v;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
        return v;
    };
    std::vector<Vec> a, b;
    for (const auto& m : sup) a.push_back(flat(m));
    b = a;
    for (const auto& m : sub) b.push_back(flat(m));
    return span_rank(a, n) == span_rank(b, n);
}

}  // namespace leibniz
