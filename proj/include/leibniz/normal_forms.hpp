#pragma once

#include "leibniz/algebra.hpp"
#include "leibniz/extensions.hpp"

#include <vector>

namespace leibniz {

// The basis changes the classification proofs apply to a numeric solvable
// extension R (basis e_0..e_n, x), in order.
struct Normalized {
    Algebra algebra;
    std::vector<BasisChange> changes;
};

// Nilradicals F2(0,...,0,1), F2^1 and F2^j: optional e_0 re-adaptation (when
// [e_0,x] has an e_1 part), the A_i change on e_0 and e_i, the x shift by the
// tail of [x,e_0], then e_1 and x corrections of their e_n parts.
Normalized normalize_f2_extension(const Algebra& r, long n);

// x' = x - sum_{i=1}^{n-1} a_{i+1} e_i with a = [e_0,x].
Normalized normalize_solvable_a(const Algebra& r, long n);

// As above, then e'_0 = e_0 - a_n/(n+2r-1) e_n and e'_1 = e_1 - b_n/(n+r-1) e_n.
Normalized normalize_solvable_b(const Algebra& r, long n, long rr);

}  // namespace leibniz
