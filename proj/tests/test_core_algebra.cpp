#include "doctest.h"
#include "oracles.hpp"

#include "leibniz/algebra.hpp"
#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

Vec unit(std::size_t d, std::size_t i) {
    Vec v(d);
    v[i] = 1;
    return v;
}

Subspace span_units(std::size_t d, std::size_t from, std::size_t to) {
    std::vector<Vec> vs;
    for (std::size_t i = from; i <= to; ++i) vs.push_back(unit(d, i));
    return Subspace::span(vs, d);
}

}  // namespace

TEST_CASE("lower central series of L_4") {
    Algebra l4 = make_family(FamilySpec("Ln", 4));
    CHECK(dims(lower_central_series(l4)) == std::vector<std::size_t>{5, 3, 2, 1, 0});
    CHECK(is_lie(l4));
    CHECK(is_nilpotent(l4));
    CHECK(is_filiform(l4));
}

TEST_CASE("abelian algebra") {
    for (std::size_t d = 1; d <= 5; ++d) {
        Algebra a = Algebra::abelian(d);
        CHECK(dims(lower_central_series(a)) == std::vector<std::size_t>{d, 0});
        CHECK(*nilpotency_index(a) == 2);
        CHECK(right_annihilator(a) == Subspace::whole(d));
        CHECK(leibniz_check(a).pass());
    }
}

TEST_CASE("F1 at n = 5 with theta = 1 is filiform") {
    Algebra f = make_family(FamilySpec("F1", 5, {{"theta", 1}}));
    CHECK(dims(lower_central_series(f)) == std::vector<std::size_t>{6, 4, 3, 2, 1, 0});
    CHECK(*nilpotency_index(f) == 6);
    CHECK(is_filiform(f));
    CHECK(!is_lie(f));
    CHECK(right_annihilator(f) == span_units(6, 2, 5));
}

TEST_CASE("right annihilator of Q_5 is the centre line") {
    Algebra q = make_family(FamilySpec("Qn", 5));
    CHECK(right_annihilator(q) == span_units(6, 5, 5));
}

TEST_CASE("bracket agrees with the table and rejects bad lengths") {
    Algebra f = make_family(FamilySpec("F1", 5, {{"theta", 1}}));
    CHECK(bracket(f, unit(6, 0), unit(6, 0)) == unit(6, 2));
    CHECK(bracket(f, unit(6, 3), unit(6, 0)) == unit(6, 4));
    CHECK_THROWS(bracket(f, unit(5, 0), unit(6, 0)));
}

TEST_CASE("leibniz_check names the failing triples") {
    Tensor t(2);
    t.at(0, 0, 1) = 1;
    t.at(1, 0, 0) = 1;  // [e0,e0] = e1, [e1,e0] = e0
    Algebra a(t);
    auto rep = leibniz_check(a);
    REQUIRE(!rep.pass());
    const auto& f = rep.failures.front();
    Vec x = unit(2, f.i), y = unit(2, f.j), z = unit(2, f.k);
    Vec lhs = bracket(a, bracket(a, x, y), z);
    Vec r1 = bracket(a, bracket(a, x, z), y), r2 = bracket(a, x, bracket(a, y, z));
    for (std::size_t k = 0; k < 2; ++k) CHECK(f.defect[k] == lhs[k] - r1[k] - r2[k]);
    CHECK(rep.failures.size() == serial::leibniz_check(a).failures.size());
}

TEST_CASE("nilradical criterion on the solvable families") {
    std::vector<std::size_t> n5{0, 1, 2, 3, 4, 5};
    CHECK(nilradical_equals(make_family(FamilySpec("L1", 5)), n5));
    CHECK(nilradical_equals(make_family(FamilySpec("L3", 5, {{"j0", 3}})), n5));
    // a nilpotent algebra has no codimension-one nilradical
    Algebra f = make_family(FamilySpec("F1", 4, {{"theta", 1}}));
    auto v = check_nilradical(f, {0, 1, 2, 3});
    CHECK(!v.ok());
    // a non-ideal subset is rejected
    CHECK(!check_nilradical(make_family(FamilySpec("L1", 5)), {0, 1, 2, 3, 4, 6}).is_ideal);
}

TEST_CASE("restrict_to recovers the nilradical table") {
    Algebra r = make_family(FamilySpec("L3", 6, {{"j0", 4}}));
    Algebra n = restrict_to(r, {0, 1, 2, 3, 4, 5, 6});
    Algebra f = make_family(FamilySpec("F2j", 6, {{"j", 4}}));
    CHECK(n.same_table(f));
}

// Properties over random Leibniz algebras and the families.

TEST_CASE("series and annihilator agree with the brute-force oracle") {
    Rng rng(2024);
    int nontrivial = 0;
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t d = 2 + static_cast<std::size_t>(trial % 4);
        Algebra a = oracle::random_leibniz(rng, d);
        if (!Algebra::abelian(d).same_table(a)) ++nontrivial;
        REQUIRE(leibniz_check(a).pass());
        auto lc = dims(lower_central_series(a));
        auto olc = oracle::lower_central_dims(a);
        CHECK(lc.front() == olc.front());
        CHECK(lc.back() == olc.back());
        CHECK(lc == olc);
        CHECK(dims(derived_series(a)) == oracle::derived_dims(a));
        auto ann = oracle::right_annihilator(a);
        CHECK(right_annihilator(a).dim() == ann.size());
        for (const auto& v : ann) CHECK(right_annihilator(a).contains(Vec(v.begin(), v.end())));
    }
    CHECK(nontrivial > 20);
}

TEST_CASE("squares lie in the right annihilator") {
    Rng rng(9);
    std::vector<Algebra> algebras;
    for (int t = 0; t < 30; ++t) algebras.push_back(oracle::random_leibniz(rng, 4));
    algebras.push_back(make_family(FamilySpec("F1", 6, {{"alpha3", 1}, {"theta", 2}})));
    algebras.push_back(make_family(FamilySpec("F2", 6, {{"beta4", 1}, {"gamma", 1}})));
    algebras.push_back(make_family(FamilySpec("F3", 5, {{"theta1", 1}, {"alpha", 1}})));
    for (const auto& a : algebras) {
        Subspace ann = right_annihilator(a);
        for (int s = 0; s < 5; ++s) {
            Vec v(a.dim());
            for (auto& c : v) c = random_rational(rng, 3);
            CHECK(ann.contains(bracket(a, v, v)));
        }
    }
}

TEST_CASE("series are monotone and filiform means index = dim") {
    for (const auto& info : family_catalog()) {
        if (info.id == "A" || info.id == "B" || info.id == "SolvA" || info.id == "SolvB") continue;
        for (long n = info.min_n; n <= 8; ++n) {
            FamilySpec spec(info.id, n);
            if (info.id == "F1s") spec.params["s"] = 3;
            if (info.id == "F2j") spec.params["j"] = 3;
            if (info.id == "L3") spec.params["j0"] = 3;
            if (info.id == "F1") spec.params["theta"] = 1;
            if (info.id == "F2") spec.params["gamma"] = 1;
            if (info.id == "F3") spec.params["theta3"] = 1;
            if (info.id == "F2j1" || info.id == "L2") spec.params["beta"] = 1;
            Algebra a;
            try {
                a = make_family(spec);
            } catch (const std::invalid_argument&) {
                continue;  // parity
            }
            auto lc = lower_central_series(a);
            for (std::size_t k = 1; k < lc.size(); ++k) CHECK(lc[k - 1].contains(lc[k]));
            auto ds = derived_series(a);
            for (std::size_t k = 1; k < ds.size(); ++k) CHECK(ds[k - 1].contains(ds[k]));
            if (is_filiform(a)) CHECK(*nilpotency_index(a) == a.dim());
            if (info.nilpotent) CHECK(is_nilpotent(a));
            if (!info.nilpotent) {
                CHECK(is_solvable(a));
                CHECK(!is_nilpotent(a));
            }
        }
    }
}

TEST_CASE("Jacobi holds exactly when a Lie family is Leibniz") {
    for (long n = 5; n <= 9; n += 2) {
        Algebra q = make_family(FamilySpec("Qn", n));
        CHECK(is_lie(q));
        CHECK(jacobi_holds(q));
        Algebra l = make_family(FamilySpec("Ln", n));
        CHECK(jacobi_holds(l));
    }
    for (long n = 5; n <= 9; ++n) {
        for (long r = 1; r <= n - 3; ++r) {
            auto al = find_valid_alphas("A", n, r);
            if (al.empty()) continue;
            std::map<std::string, Rational> p{{"r", Rational(r)}};
            put_alphas(p, al);
            Algebra a = make_family(FamilySpec("A", n, p));
            CHECK(is_antisymmetric(a));
            CHECK(jacobi_holds(a) == leibniz_check(a).pass());
        }
    }
    // antisymmetric but not Jacobi: both fail together
    Tensor t(3);
    t.at(0, 1, 2) = 1;
    t.at(1, 0, 2) = -1;
    t.at(1, 2, 0) = 1;
    t.at(2, 1, 0) = -1;
    t.at(0, 2, 0) = 1;
    t.at(2, 0, 0) = -1;
    Algebra bad(t);
    CHECK(is_antisymmetric(bad));
    CHECK(jacobi_holds(bad) == leibniz_check(bad).pass());
}

TEST_CASE("subspace equality is basis independent") {
    Subspace a = Subspace::span({{1, 1, 0}, {0, 1, 0}}, 3);
    Subspace b = Subspace::span({{1, 0, 0}, {2, 3, 0}, {1, 1, 0}}, 3);
    CHECK(a == b);
    CHECK(a.dim() == 2);
    CHECK(!a.contains(Vec{0, 0, 1}));
    CHECK(Subspace::whole(3).contains(a));
}
