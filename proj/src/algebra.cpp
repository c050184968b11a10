#include "leibniz/algebra.hpp"

#include <stdexcept>

namespace leibniz {

Rational& Tensor::at(std::size_t i, std::size_t j, std::size_t k) {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw std::out_of_range("Tensor index out of range");
    return c_[(i * dim_ + j) * dim_ + k];
}

const Rational& Tensor::at(std::size_t i, std::size_t j, std::size_t k) const {
    if (i >= dim_ || j >= dim_ || k >= dim_) throw std::out_of_range("Tensor index out of range");
    return c_[(i * dim_ + j) * dim_ + k];
}

void Tensor::set_product(std::size_t i, std::size_t j, const Vec& v) {
    if (v.size() != dim_) throw std::invalid_argument("Tensor::set_product: length mismatch");
    for (std::size_t k = 0; k < dim_; ++k) at(i, j, k) = v[k];
}

Algebra::Algebra(Tensor t, std::vector<std::string> labels, Metadata md)
    : tensor_(std::move(t)), labels_(std::move(labels)), meta_(std::move(md)) {
    const std::size_t d = tensor_.dim();
    if (d == 0) throw std::invalid_argument("Algebra: dimension must be at least 1");
    if (labels_.empty())
        for (std::size_t i = 0; i < d; ++i) labels_.push_back("e" + std::to_string(i));
    if (labels_.size() != d) throw std::invalid_argument("Algebra: label count differs from dimension");
    table_.resize(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (!tensor_.at(i, j, k).is_zero()) table_[i * d + j].emplace_back(k, tensor_.at(i, j, k));
}

Algebra Algebra::abelian(std::size_t dim) { return Algebra(Tensor(dim)); }

Algebra Algebra::with_metadata(Metadata md) const {
    Algebra a = *this;
    a.meta_ = std::move(md);
    return a;
}

Vec Algebra::e(std::size_t i) const {
    Vec v(dim(), Rational(0));
    v.at(i) = Rational(1);
    return v;
}

Vec bracket(const Algebra& a, const Vec& u, const Vec& v) {
    const std::size_t d = a.dim();
    if (u.size() != d || v.size() != d)
        throw std::invalid_argument("bracket: vector length differs from algebra dimension " + std::to_string(d));
    Vec out(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (v[j].is_zero()) continue;
            const auto& p = a.product(i, j);
            if (p.empty()) continue;
            Rational s = u[i] * v[j];
            for (const auto& [k, c] : p) out[k] += s * c;
        }
    }
    return out;
}

namespace {

// [x, e_j] for sparse x
void add_right(const Algebra& a, const SparseVec& x, std::size_t j, const Rational& s, Vec& out) {
    for (const auto& [i, xi] : x)
        for (const auto& [k, c] : a.product(i, j)) out[k] += s * xi * c;
}

// [e_i, y] for sparse y
void add_left(const Algebra& a, std::size_t i, const SparseVec& y, const Rational& s, Vec& out) {
    for (const auto& [j, yj] : y)
        for (const auto& [k, c] : a.product(i, j)) out[k] += s * yj * c;
}

void triples_for(const Algebra& a, std::size_t i, std::vector<LeibnizFailure>& out) {
    const std::size_t d = a.dim();
    Vec defect(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
            std::fill(defect.begin(), defect.end(), Rational(0));
            add_right(a, a.product(i, j), k, Rational(1), defect);   // [[x,y],z]
            add_right(a, a.product(i, k), j, Rational(-1), defect);  // -[[x,z],y]
            add_left(a, i, a.product(j, k), Rational(-1), defect);   // -[x,[y,z]]
            if (!is_zero_vec(defect)) out.push_back({i, j, k, defect});
        }
}

}  // namespace

LeibnizReport leibniz_check(const Algebra& a) {
    const long d = static_cast<long>(a.dim());
    std::vector<std::vector<LeibnizFailure>> per(a.dim());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < d; ++i) triples_for(a, static_cast<std::size_t>(i), per[static_cast<std::size_t>(i)]);
    LeibnizReport r;
    for (auto& v : per)
        for (auto& f : v) r.failures.push_back(std::move(f));
    return r;
}

LeibnizReport serial::leibniz_check(const Algebra& a) {
    LeibnizReport r;
    for (std::size_t i = 0; i < a.dim(); ++i) triples_for(a, i, r.failures);
    return r;
}

bool is_antisymmetric(const Algebra& a) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (a.c(i, j, k) != -a.c(j, i, k)) return false;
    return true;
}

bool is_lie(const Algebra& a) { return is_antisymmetric(a); }

bool jacobi_holds(const Algebra& a) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Vec s = bracket(a, bracket(a, a.e(i), a.e(j)), a.e(k));
                Vec t = bracket(a, bracket(a, a.e(j), a.e(k)), a.e(i));
                Vec u = bracket(a, bracket(a, a.e(k), a.e(i)), a.e(j));
                for (std::size_t m = 0; m < d; ++m)
                    if (!(s[m] + t[m] + u[m]).is_zero()) return false;
            }
    return true;
}

Subspace Subspace::span(const std::vector<Vec>& vectors, std::size_t ambient) {
    QMatrix m(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw std::invalid_argument("Subspace::span: length mismatch");
        for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
    }
    Rref rr = rref(std::move(m));
    Subspace s;
    s.ambient_ = ambient;
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) s.basis_.push_back(rr.reduced.row(r));
    return s;
}

Subspace Subspace::whole(std::size_t ambient) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < ambient; ++i) {
        Vec v(ambient, Rational(0));
        v[i] = Rational(1);
        vs.push_back(std::move(v));
    }
    return span(vs, ambient);
}

bool Subspace::contains(const Vec& v) const {
    auto vs = basis_;
    vs.push_back(v);
    return span_rank(vs, ambient_) == basis_.size();
}

bool Subspace::contains(const Subspace& s) const {
    auto vs = basis_;
    vs.insert(vs.end(), s.basis_.begin(), s.basis_.end());
    return span_rank(vs, ambient_) == basis_.size();
}

Subspace bracket_span(const Algebra& a, const Subspace& u, const Subspace& v) {
    std::vector<Vec> out;
    for (const auto& x : u.basis())
        for (const auto& y : v.basis()) {
            Vec b = bracket(a, x, y);
            if (!is_zero_vec(b)) out.push_back(std::move(b));
        }
    return Subspace::span(out, a.dim());
}

namespace {
template <class Next>
std::vector<Subspace> run_series(const Algebra& a, Next next) {
    std::vector<Subspace> s{Subspace::whole(a.dim())};
    while (s.back().dim() > 0) {
        Subspace nx = next(s.back());
        if (nx == s.back()) break;  // stabilized
        s.push_back(std::move(nx));
    }
    return s;
}
}  // namespace

std::vector<Subspace> lower_central_series(const Algebra& a) {
    const Subspace all = Subspace::whole(a.dim());
    return run_series(a, [&](const Subspace& lk) { return bracket_span(a, lk, all); });
}

std::vector<Subspace> derived_series(const Algebra& a) {
    return run_series(a, [&](const Subspace& d) { return bracket_span(a, d, d); });
}

std::vector<std::size_t> dims(const std::vector<Subspace>& series) {
    std::vector<std::size_t> out;
    for (const auto& s : series) out.push_back(s.dim());
    return out;
}

bool is_nilpotent(const Algebra& a) { return lower_central_series(a).back().dim() == 0; }

std::optional<std::size_t> nilpotency_index(const Algebra& a) {
    auto s = lower_central_series(a);
    if (s.back().dim() != 0) return std::nullopt;
    return s.size();  // s[k-1] = L^k, last is zero
}

bool is_solvable(const Algebra& a) { return derived_series(a).back().dim() == 0; }

bool is_filiform(const Algebra& a) {
    auto d = dims(lower_central_series(a));
    const std::size_t n = a.dim();
    for (std::size_t i = 2; i <= n; ++i) {
        std::size_t have = i <= d.size() ? d[i - 1] : 0;
        if (have != n - i) return false;
    }
    return true;
}

Subspace right_annihilator(const Algebra& a) {
    const std::size_t d = a.dim();
    QMatrix m(d * d, d);
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) m(u * d + k, j) = a.c(u, j, k);
    return Subspace::span(nullspace(m), d);
}

QMatrix right_multiplication(const Algebra& a, const Vec& v) {
    const std::size_t d = a.dim();
    QMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Vec b = bracket(a, a.e(i), v);
        for (std::size_t j = 0; j < d; ++j) m(i, j) = b[j];
    }
    return m;
}

Algebra restrict_to(const Algebra& r, const std::vector<std::size_t>& idx) {
    const std::size_t m = idx.size();
    std::vector<long> pos(r.dim(), -1);
    for (std::size_t a = 0; a < m; ++a) pos.at(idx[a]) = static_cast<long>(a);
    Tensor t(m);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < m; ++a) {
        labels.push_back(r.labels()[idx[a]]);
        for (std::size_t b = 0; b < m; ++b)
            for (const auto& [k, c] : r.product(idx[a], idx[b])) {
                if (pos[k] < 0)
                    throw std::invalid_argument("restrict_to: [" + r.labels()[idx[a]] + "," + r.labels()[idx[b]] +
                                                "] leaves the span");
                t.at(a, b, static_cast<std::size_t>(pos[k])) = c;
            }
    }
    return Algebra(std::move(t), std::move(labels));
}

NilradicalVerdict check_nilradical(const Algebra& r, const std::vector<std::size_t>& n_idx) {
    NilradicalVerdict v;
    std::vector<bool> in(r.dim(), false);
    for (auto i : n_idx) in.at(i) = true;
    v.is_ideal = true;
    for (auto i : n_idx)
        for (std::size_t j = 0; j < r.dim() && v.is_ideal; ++j) {
            for (const auto& [k, c] : r.product(i, j))
                if (!in[k]) v.is_ideal = false;
            for (const auto& [k, c] : r.product(j, i))
                if (!in[k]) v.is_ideal = false;
        }
    if (!v.is_ideal) {
        v.reason = "not an ideal";
        return v;
    }
    v.n_nilpotent = is_nilpotent(restrict_to(r, n_idx));
    v.r_nilpotent = is_nilpotent(r);
    if (!v.n_nilpotent)
        v.reason = "N is not nilpotent";
    else if (v.r_nilpotent)
        v.reason = "R is nilpotent";
    else if (n_idx.size() + 1 != r.dim())
        v.reason = "N is not of codimension 1";
    return v;
}

bool nilradical_equals(const Algebra& r, const std::vector<std::size_t>& n_indices) {
    return check_nilradical(r, n_indices).ok();
}

}  // namespace leibniz
