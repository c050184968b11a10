#include "doctest.h"
#include "oracles.hpp"

#include "leibniz/derivations.hpp"
#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

std::vector<oracle::Row> flatten(const std::vector<QMatrix>& ms) {
    std::vector<oracle::Row> out;
    for (const auto& m : ms) {
        oracle::Row r;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        out.push_back(r);
    }
    return out;
}

Algebra f1(long n) { return make_family(FamilySpec("F1", n, {{"theta", 1}})); }

}  // namespace

TEST_CASE("derivation space of F1 at n = 5") {
    auto ds = derivation_space(f1(5));
    CHECK(ds.dim() == 6);
    CHECK(ds.dim() == oracle::derivations(f1(5)).size());
    for (const auto& b : ds.basis) CHECK(is_derivation(ds.algebra, b));
    // a0 is forced to 0; the diagonal is a1 throughout
    std::vector<std::string> want{"a1", "a2", "a3", "a4", "a5", "b5"};
    CHECK(ds.params == want);
}

TEST_CASE("every linear map of an abelian algebra is a derivation") {
    for (std::size_t d = 1; d <= 4; ++d) CHECK(derivation_space(Algebra::abelian(d)).dim() == d * d);
}

TEST_CASE("derivations of A^1_6 are upper triangular") {
    auto al = find_valid_alphas("A", 6, 1);
    REQUIRE(!al.empty());
    std::map<std::string, Rational> p{{"r", 1}};
    put_alphas(p, al);
    auto ds = derivation_space(make_family(FamilySpec("A", 6, p)));
    auto ni = nil_independence(ds);
    CHECK(ni.triangular);
    CHECK(ni.diagonal_rank == ni.sampled_rank);
    CHECK(ni.diagonal_rank == 1);  // b1 = (1+r) a0
}

TEST_CASE("right multiplication is a derivation, the identity is not") {
    Algebra a = f1(6);
    CHECK(is_derivation(a, right_multiplication(a, a.e(0))));
    CHECK(is_derivation(a, right_multiplication(a, a.e(1))));
    CHECK(!is_derivation(a, QMatrix::identity(a.dim())));
    CHECK_THROWS_AS(is_derivation(a, QMatrix::identity(3)), std::invalid_argument);
}

TEST_CASE("inner derivations") {
    CHECK(inner_derivations(make_family(FamilySpec("Qn", 5))).dim() == 5);
    CHECK(inner_derivations(Algebra::abelian(3)).dim() == 0);
    Algebra a = f1(5);
    CHECK(space_contains(derivation_space(a).basis, inner_derivations(a).basis));
    CHECK(outer_dimension(a) == derivation_space(a).dim() - inner_derivations(a).dim());
}

TEST_CASE("nil-independence of the filiform nilradicals") {
    CHECK(max_nil_independent(derivation_space(f1(5))) == 1);
    CHECK(max_nil_independent(derivation_space(make_family(FamilySpec("F2", 6, {{"gamma", 1}})))) == 1);
    CHECK(max_nil_independent(derivation_space(Algebra::abelian(3))) == 3);
    CHECK(max_nil_independent(derivation_space(make_family(FamilySpec("Ln", 5)))) == 2);
}

TEST_CASE("characteristically nilpotent detection") {
    // F3(0,1,0) with alpha = 1 at odd n admits only nilpotent derivations
    auto ds = derivation_space(make_family(FamilySpec("F3", 5, {{"theta2", 1}, {"alpha", 1}})));
    auto ni = nil_independence(ds);
    CHECK(!ni.sampled_non_nilpotent);
    CHECK(ni.sampled_rank == 0);
    // L_n has the grading derivation
    CHECK(nil_independence(derivation_space(make_family(FamilySpec("Ln", 6)))).sampled_non_nilpotent);
}

TEST_CASE("derivation spaces match the brute-force kernel") {
    Rng rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Algebra a = oracle::random_leibniz(rng, 2 + static_cast<std::size_t>(trial % 3));
        auto ds = derivation_space(a);
        auto ker = oracle::derivations(a);
        CHECK(ds.dim() == ker.size());
        CHECK(oracle::same_span(flatten(ds.basis), ker));
    }
    for (long n = 4; n <= 7; ++n) {
        Algebra a = make_F1s(n, 3);
        CHECK(derivation_space(a).dim() == oracle::derivations(a).size());
    }
}

TEST_CASE("parallel and serial equation assembly agree") {
    for (long n = 4; n <= 7; ++n) {
        Algebra a = f1(n);
        CHECK(derivation_equations(a) == serial::derivation_equations(a));
    }
}

TEST_CASE("derivations are closed under the commutator") {
    Rng rng(3);
    for (long n = 4; n <= 7; ++n) {
        auto ds = derivation_space(make_family(FamilySpec("F2", n, {{"beta3", 1}, {"gamma", 1}})));
        for (int t = 0; t < 5; ++t) {
            QMatrix p(ds.algebra.dim(), ds.algebra.dim()), q = p;
            for (const auto& b : ds.basis) {
                p = p + random_rational(rng, 4) * b;
                q = q + random_rational(rng, 4) * b;
            }
            CHECK(is_derivation(ds.algebra, p * q - q * p));
        }
    }
}

TEST_CASE("right multiplication reverses brackets") {
    // u R_[x,y] = (u R_x) R_y - (u R_y) R_x in the row convention
    Rng rng(17);
    std::vector<Algebra> algebras{f1(6), make_family(FamilySpec("Qn", 7))};
    for (int t = 0; t < 10; ++t) algebras.push_back(oracle::random_leibniz(rng, 4));
    for (const auto& a : algebras) {
        const std::size_t d = a.dim();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                QMatrix rx = right_multiplication(a, a.e(i)), ry = right_multiplication(a, a.e(j));
                CHECK(right_multiplication(a, bracket(a, a.e(i), a.e(j))) == rx * ry - ry * rx);
            }
    }
}
