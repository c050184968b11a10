#include "leibniz/matrix.hpp"

#include <sstream>

namespace leibniz {

Rref rref(QMatrix a, bool parallel) {
    const std::size_t m = a.rows(), n = a.cols();
    Rref out;
    std::size_t r = 0;
    std::vector<std::size_t> nz;  // nonzero columns of the pivot row
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t p = r;
        while (p < m && a(p, col).is_zero()) ++p;
        if (p == m) continue;
        if (p != r)
            for (std::size_t j = col; j < n; ++j) std::swap(a(p, j), a(r, j));
        Rational inv = Rational(1) / a(r, col);
        nz.clear();
        for (std::size_t j = col; j < n; ++j)
            if (!a(r, j).is_zero()) {
                a(r, j) *= inv;
                nz.push_back(j);
            }
        const long rows = static_cast<long>(m);
#pragma omp parallel for schedule(static) if (parallel && m > 64)
        for (long i = 0; i < rows; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if (ui == r || a(ui, col).is_zero()) continue;
            const Rational f = a(ui, col);
            for (std::size_t j : nz) a(ui, j) -= f * a(r, j);
        }
        out.pivots.push_back(col);
        ++r;
    }
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const QMatrix& a) { return rref(a).pivots.size(); }

namespace {
std::vector<Vec> nullspace_of(const Rref& rr, std::size_t n) {
    std::vector<bool> is_pivot(n, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec v(n, Rational(0));
        v[f] = Rational(1);
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) v[rr.pivots[r]] = -rr.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}
}  // namespace

std::vector<Vec> nullspace(const QMatrix& a) { return nullspace_of(rref(a), a.cols()); }

LinearSolution solve_linear_system(const QMatrix& a, const Vec& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_linear_system: " + std::to_string(a.rows()) + " rows but rhs of length " +
                                    std::to_string(b.size()));
    const std::size_t n = a.cols();
    QMatrix aug(a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    Rref rr = rref(std::move(aug));
    LinearSolution sol;
    if (!rr.pivots.empty() && rr.pivots.back() == n) return sol;  // 0 = 1 row
    Vec x(n, Rational(0));
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = rr.reduced(r, n);
    sol.particular = std::move(x);
    // drop the augmented column before reading off the kernel
    QMatrix red(rr.reduced.rows(), n);
    for (std::size_t i = 0; i < red.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) red(i, j) = rr.reduced(i, j);
    sol.nullspace = nullspace_of(Rref{std::move(red), rr.pivots}, n);
    return sol;
}

bool matrix_is_nilpotent(const QMatrix& m) {
    if (!m.square()) throw std::invalid_argument("matrix_is_nilpotent: non-square matrix");
    if (m.rows() == 0) return true;
    QMatrix p = m;
    for (std::size_t k = 1; k < m.rows(); ++k) {
        if (p.is_zero()) return true;
        p = p * m;
    }
    return p.is_zero();
}

QMatrix inverse(const QMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Rational(1);
    }
    Rref rr = rref(std::move(aug));
    if (rr.pivots.size() < n || rr.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rr.reduced(i, n + j);
    return inv;
}

Vec mat_vec(const QMatrix& m, const Vec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: length mismatch");
    Vec out(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

Vec vec_mat(const Vec& v, const QMatrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: length mismatch");
    Vec out(m.cols(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out[j] += v[i] * m(i, j);
    }
    return out;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::size_t span_rank(const std::vector<Vec>& vs, std::size_t len) {
    QMatrix m(vs.size(), len);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i].size() != len) throw std::invalid_argument("span_rank: length mismatch");
        for (std::size_t j = 0; j < len; ++j) m(i, j) = vs[i][j];
    }
    return rank(m);
}

QMatrix evaluate(const PMatrix& m, const std::map<std::string, Rational>& values) {
    QMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(values).constant_value();
    return out;
}

std::string to_string(const QMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << "]\n";
    }
    return os.str();
}

}  // namespace leibniz
