#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace leibniz {

// Matrices use the row convention M(i,j) = coefficient of e_j in d(e_i).
struct DerivationSpace {
    Algebra algebra;
    std::vector<QMatrix> basis;
    std::vector<std::string> params;  // one indeterminate per basis element

    std::size_t dim() const { return basis.size(); }
    // sum_k params[k] * basis[k]
    PMatrix generic() const;
};

bool is_derivation(const Algebra& a, const QMatrix& d);

// Coefficient rows of the derivation equations, one per (pair, component),
// over the dim^2 unknowns indexed i*dim+j; zero rows dropped. Pairs (a,b)
// are assembled concurrently and concatenated in order.
QMatrix derivation_equations(const Algebra& a);
namespace serial {
QMatrix derivation_equations(const Algebra& a);
}

// Unknowns are eliminated with the column order reversed, so that the rows
// d(e_0), d(e_1) stay free. Parameter names: a{j} for d(e_0), b{j} for d(e_1),
// d{i}_{j} otherwise.
DerivationSpace derivation_space(const Algebra& a);

DerivationSpace inner_derivations(const Algebra& a);

struct NilIndependence {
    bool triangular = false;
    std::size_t diagonal_rank = 0;  // meaningful when triangular
    std::size_t sampled_rank = 0;   // randomized oracle, always computed
    bool sampled_non_nilpotent = false;
};

// Both methods; throws std::runtime_error if they disagree.
NilIndependence nil_independence(const DerivationSpace& d, std::uint64_t seed = 0x5eed, int trials = 32);
std::size_t max_nil_independent(const DerivationSpace& d);

// dim Der - dim Inner
std::size_t outer_dimension(const Algebra& a);

// True when the span of `sub` lies inside the span of `sup`.
bool space_contains(const std::vector<QMatrix>& sup, const std::vector<QMatrix>& sub);

}  // namespace leibniz
