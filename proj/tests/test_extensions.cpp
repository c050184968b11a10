#include "doctest.h"

#include "leibniz/extensions.hpp"
#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

MultiPoly v(const std::string& s) { return MultiPoly::var(s); }

ConstraintSystem toy(std::vector<MultiPoly> ps, std::vector<std::string> names) {
    ConstraintSystem s;
    for (std::size_t i = 0; i < ps.size(); ++i) s.equations.push_back({ps[i], "eq" + std::to_string(i)});
    s.indeterminates = std::move(names);
    return s;
}

}  // namespace

TEST_CASE("toy system reduces to a one-parameter family") {
    // x - 1 = 0, x*y - y*z = 0  =>  x = 1, y = y*z
    auto s = toy({v("x") - MultiPoly(1), v("x") * v("y") - v("y") * v("z")}, {"x", "y", "z"});
    auto o = eliminate(s);
    REQUIRE(!o.contradiction());
    CHECK(replay(o));
    Rng rng(1);
    auto vals = solve_values(o, {{"z", Rational(1)}}, rng);
    CHECK(vals.at("x") == Rational(1));
}

TEST_CASE("inconsistent toy system is a replayable contradiction") {
    auto s = toy({v("x") - MultiPoly(1), v("x") + v("y"), v("y") - MultiPoly(3)}, {"x", "y"});
    auto o = eliminate(s);
    REQUIRE(o.contradiction());
    CHECK(o.witness.poly.is_constant());
    CHECK(!o.witness.poly.is_zero());
    CHECK(replay(o));
    CHECK(!transcript(o).empty());
    Rng rng(1);
    CHECK_THROWS(solve_values(o, {}, rng));
}

TEST_CASE("tampering with the log breaks replay") {
    auto s = toy({v("x") - MultiPoly(1), v("x") - MultiPoly(2)}, {"x"});
    auto o = eliminate(s);
    REQUIRE(o.contradiction());
    o.witness.poly = MultiPoly(Rational(5));
    CHECK(!replay(o));
}

TEST_CASE("hypotheses come first") {
    auto s = toy({v("a") * v("b")}, {"a", "b"});
    auto fam = eliminate(s, {Hypothesis::fix("a", 1)});
    REQUIRE(!fam.contradiction());
    REQUIRE(!fam.log.empty());
    CHECK(fam.log.front().kind == Step::Kind::Hypothesis);
    CHECK(replay(fam));
    // b != 0 together with a*b = 0 and a = 1 is impossible
    auto c = eliminate(s, {Hypothesis::fix("a", 1), Hypothesis::nonzero(v("b"), "z")});
    CHECK(c.contradiction());
    CHECK(replay(c));
    CHECK(Hypothesis::nonzero(v("b"), "z").str() == "b != 0");
}

TEST_CASE("substitute refuses unknown indeterminates") {
    auto s = toy({v("x") + v("y")}, {"x", "y"});
    CHECK_THROWS_AS(s.substitute("w", MultiPoly(1)), std::invalid_argument);
    auto t = s.substitute("x", MultiPoly(2));
    CHECK(t.equations[0].poly == v("y") + MultiPoly(2));
}

TEST_CASE("extension problem of F1 and parallel constraint generation") {
    Algebra n = make_family(FamilySpec("F1", 5, {{"theta", 1}}));
    auto p = build_extension_problem(n, general_template(n));
    CHECK(p.dim() == 7);
    CHECK(p.x() == 6);
    CHECK(p.labels().back() == "x");
    auto par = generate_constraints(p), ser = serial::generate_constraints(p);
    REQUIRE(par.equations.size() == ser.equations.size());
    for (std::size_t i = 0; i < par.equations.size(); ++i) {
        CHECK(par.equations[i].poly == ser.equations[i].poly);
        CHECK(par.equations[i].origin == ser.equations[i].origin);
    }
    // a non-derivation template is rejected
    PMatrix bad(6, 6);
    bad(0, 0) = MultiPoly(1);
    CHECK(!is_symbolic_derivation(n, bad));
    CHECK_THROWS_AS(build_extension_problem(n, bad), std::invalid_argument);
}

TEST_CASE("F1(0,...,0,1) has no solvable extension with a1 = 1") {
    for (long n = 4; n <= 6; ++n) {
        Algebra N = make_family(FamilySpec("F1", n, {{"theta", 1}}));
        auto o = eliminate(generate_constraints(build_extension_problem(N, general_template(N))),
                           {Hypothesis::fix("a1", 1)});
        CHECK(o.contradiction());
        CHECK(replay(o));
    }
}

TEST_CASE("extensions of L3's nilradical kill [x, Ann_r]") {
    for (long n = 4; n <= 6; ++n) {
        Algebra N = make_family(FamilySpec("F2j", n, {{"j", 3}}));
        auto p = build_extension_problem(N, general_template(N));
        auto o = eliminate(generate_constraints(p), {Hypothesis::fix("a0", 1)});
        REQUIRE(!o.contradiction());
        CHECK(replay(o));
        Rng rng(static_cast<std::uint64_t>(n));
        Algebra R = instantiate(p, solve_values(o, {}, rng));
        CHECK(leibniz_check(R).pass());
        const std::size_t x = p.x();
        for (const auto& q : p.annihilator.basis()) {
            Vec xv(R.dim());
            xv[x] = 1;
            Vec qq(q.begin(), q.end());
            qq.push_back(0);
            CHECK(is_zero_vec(bracket(R, xv, qq)));
        }
    }
}

TEST_CASE("star coefficients") {
    auto A = star_coefficients(5, Variant::B, {1, 0, 0});
    CHECK(A[2] == Rational(-1));
    CHECK(A[3] == Rational(1, 2));
    auto a = star_coefficients(4, Variant::A, {1, 0, 0});
    CHECK(a[2] == Rational(-1));
    CHECK(a[3] == Rational(1, 2));  // (b3 + A2 b2) / (1 - 3)
    CHECK_THROWS_AS(star_coefficients(5, Variant::A, {1, 0}), std::invalid_argument);
}

TEST_CASE("conjecture check on hand-picked samples") {
    for (long n : {5, 6, 7}) {
        auto al = find_valid_alphas("A", n, 1);
        REQUIRE(!al.empty());
        Rng rng(100 + static_cast<std::uint64_t>(n));
        auto smp = sample_solvable(n, Variant::A, 1, al, 0, rng);
        auto res = conjecture_check(n, Variant::A, 1, al, smp.a1, smp.b);
        CHECK(res.eliminated);
        CHECK(res.normal_form);
        CHECK(res.transcript.size() == 4);
    }
    auto al = find_valid_alphas("B", 7, 1);
    Rng rng(5);
    auto smp = sample_solvable(7, Variant::B, 1, al, 0, rng);
    CHECK(smp.b.size() == 5);
    auto res = conjecture_check(7, Variant::B, 1, al, 0, smp.b);
    CHECK(res.eliminated);
    CHECK(res.normal_form);
    CHECK_THROWS_AS(conjecture_check(7, Variant::B, 1, al, 1, smp.b), std::invalid_argument);
}

TEST_CASE("basis changes round-trip and singular matrices throw") {
    Algebra a = make_family(FamilySpec("L3", 5, {{"j0", 4}}));
    QMatrix m = QMatrix::identity(a.dim());
    m(0, 1) = Rational(2, 3);
    m(2, 5) = -1;
    m(6, 0) = 4;
    BasisChange t(m), back(inverse(m));
    Algebra b = apply_basis_change(a, t);
    CHECK(!b.same_table(a));
    CHECK(apply_basis_change(b, back).same_table(a));
    CHECK_THROWS_AS(BasisChange(QMatrix(3, 3)), std::domain_error);
    CHECK(apply_basis_change(a, BasisChange::identity(a.dim())).same_table(a));
}
