#include "doctest.h"
#include "oracles.hpp"

#include "leibniz/derivations.hpp"
#include "leibniz/extensions.hpp"
#include "leibniz/families.hpp"
#include "leibniz/matrix.hpp"

#include <omp.h>

using namespace leibniz;

// Each OpenMP kernel against its serial reference, forced onto several
// threads even on a single-core box.

namespace {

struct Threads {
    int saved;
    explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
};

bool same(const LeibnizReport& a, const LeibnizReport& b) {
    if (a.failures.size() != b.failures.size()) return false;
    for (std::size_t i = 0; i < a.failures.size(); ++i) {
        const auto &x = a.failures[i], &y = b.failures[i];
        if (x.i != y.i || x.j != y.j || x.k != y.k || x.defect != y.defect) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("leibniz_check: parallel == serial") {
    Threads th(4);
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        Algebra a = oracle::random_tensor(rng, 3 + static_cast<std::size_t>(t % 4));
        CHECK(same(leibniz_check(a), serial::leibniz_check(a)));
    }
    Algebra f = make_family(FamilySpec("F1", 9, {{"alpha3", 1}, {"theta", 1}}));
    CHECK(same(leibniz_check(f), serial::leibniz_check(f)));
}

TEST_CASE("derivation_equations: parallel == serial") {
    Threads th(4);
    Rng rng(78);
    for (int t = 0; t < 10; ++t) {
        Algebra a = oracle::random_tensor(rng, 4);
        CHECK(derivation_equations(a) == serial::derivation_equations(a));
    }
    Algebra q = make_family(FamilySpec("Qn", 9));
    CHECK(derivation_equations(q) == serial::derivation_equations(q));
}

TEST_CASE("generate_constraints: parallel == serial") {
    Threads th(4);
    for (long n = 4; n <= 6; ++n) {
        Algebra N = make_family(FamilySpec("F2", n, {{"beta3", 1}, {"gamma", 1}}));
        auto p = build_extension_problem(N, general_template(N));
        auto a = generate_constraints(p), b = serial::generate_constraints(p);
        REQUIRE(a.equations.size() == b.equations.size());
        bool eq = true;
        for (std::size_t i = 0; i < a.equations.size(); ++i)
            eq = eq && a.equations[i].poly == b.equations[i].poly && a.equations[i].origin == b.equations[i].origin;
        CHECK(eq);
        CHECK(a.indeterminates == b.indeterminates);
    }
}

TEST_CASE("rref: parallel == serial") {
    Threads th(4);
    Rng rng(79);
    std::uniform_int_distribution<int> pct(0, 99);
    for (int t = 0; t < 30; ++t) {
        QMatrix m(12, 15);
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 15; ++j)
                if (pct(rng) < 40) m(i, j) = random_rational(rng, 6);
        auto a = rref(m, true), b = rref(m, false);
        CHECK(a.reduced == b.reduced);
        CHECK(a.pivots == b.pivots);
    }
}
