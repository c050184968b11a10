#pragma once

#include "leibniz/matrix.hpp"
#include "leibniz/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leibniz {

// Mutable dense c_{ij}^k store used to build an Algebra.
class Tensor {
public:
    explicit Tensor(std::size_t dim = 0) : dim_(dim), c_(dim * dim * dim) {}
    std::size_t dim() const { return dim_; }
    Rational& at(std::size_t i, std::size_t j, std::size_t k);
    const Rational& at(std::size_t i, std::size_t j, std::size_t k) const;
    // [e_i,e_j] = v, overwriting
    void set_product(std::size_t i, std::size_t j, const Vec& v);
    friend bool operator==(const Tensor& a, const Tensor& b) = default;

private:
    std::size_t dim_;
    std::vector<Rational> c_;
};

struct Metadata {
    std::string family;  // empty when not built by a constructor
    long n = -1;
    std::vector<std::pair<std::string, Rational>> params;
    friend bool operator==(const Metadata&, const Metadata&) = default;
};

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

// Immutable structure-constant algebra: [e_i,e_j] = sum_k c(i,j,k) e_k.
class Algebra {
public:
    Algebra() = default;
    explicit Algebra(Tensor t, std::vector<std::string> labels = {}, Metadata md = {});

    static Algebra abelian(std::size_t dim);

    std::size_t dim() const { return tensor_.dim(); }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return tensor_.at(i, j, k); }
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    const Tensor& tensor() const { return tensor_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Metadata& metadata() const { return meta_; }
    Algebra with_metadata(Metadata md) const;

    Vec e(std::size_t i) const;
    bool same_table(const Algebra& o) const { return tensor_ == o.tensor_; }

private:
    Tensor tensor_;
    std::vector<std::string> labels_;
    Metadata meta_;
    std::vector<SparseVec> table_;
};

// Bilinear product sum u_i v_j c_{ij}^k e_k. Throws on length mismatch.
Vec bracket(const Algebra& a, const Vec& u, const Vec& v);

struct LeibnizFailure {
    std::size_t i, j, k;  // the triple (e_i, e_j, e_k)
    Vec defect;           // [[x,y],z] - [[x,z],y] - [x,[y,z]]
};

struct LeibnizReport {
    std::vector<LeibnizFailure> failures;  // lexicographic triple order
    bool pass() const { return failures.empty(); }
};

// All dim^3 basis triples; outer index split across OpenMP threads.
LeibnizReport leibniz_check(const Algebra& a);

namespace serial {
LeibnizReport leibniz_check(const Algebra& a);
}

bool is_antisymmetric(const Algebra& a);
// Antisymmetry criterion; meaningful when leibniz_check passes.
bool is_lie(const Algebra& a);
bool jacobi_holds(const Algebra& a);

// Subspace with a reduced-echelon basis, so == is subspace equality.
class Subspace {
public:
    Subspace() = default;
    static Subspace span(const std::vector<Vec>& vectors, std::size_t ambient);
    static Subspace whole(std::size_t ambient);
    static Subspace zero(std::size_t ambient) { return span({}, ambient); }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    bool contains(const Vec& v) const;
    bool contains(const Subspace& s) const;
    friend bool operator==(const Subspace& a, const Subspace& b) = default;

private:
    std::size_t ambient_ = 0;
    std::vector<Vec> basis_;
};

// span{[u,v] : u in U, v in V}
Subspace bracket_span(const Algebra& a, const Subspace& u, const Subspace& v);

std::vector<Subspace> lower_central_series(const Algebra& a);
std::vector<Subspace> derived_series(const Algebra& a);
std::vector<std::size_t> dims(const std::vector<Subspace>& series);

bool is_nilpotent(const Algebra& a);
// Smallest s with L^s = 0; nullopt when not nilpotent.
std::optional<std::size_t> nilpotency_index(const Algebra& a);
bool is_solvable(const Algebra& a);
bool is_filiform(const Algebra& a);

Subspace right_annihilator(const Algebra& a);

// R_v in row convention: M(i,j) = coefficient of e_j in [e_i, v].
QMatrix right_multiplication(const Algebra& a, const Vec& v);

struct NilradicalVerdict {
    bool is_ideal = false;
    bool n_nilpotent = false;
    bool r_nilpotent = true;
    std::string reason;  // empty when ok
    bool ok() const { return reason.empty(); }
};

// Codimension-1 criterion: N ideal, N nilpotent, R not nilpotent.
NilradicalVerdict check_nilradical(const Algebra& r, const std::vector<std::size_t>& n_indices);
bool nilradical_equals(const Algebra& r, const std::vector<std::size_t>& n_indices);

// The subalgebra spanned by a subset of basis vectors, when closed.
Algebra restrict_to(const Algebra& r, const std::vector<std::size_t>& indices);

}  // namespace leibniz
