#include "doctest.h"

#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

// A representative valid spec for each constructor at n, or nullopt when n
// is not admissible.
std::optional<FamilySpec> sample_spec(const FamilyInfo& info, long n) {
    if (n < info.min_n) return std::nullopt;
    if (info.parity == Parity::Odd && n % 2 == 0) return std::nullopt;
    if (info.parity == Parity::Even && n % 2 != 0) return std::nullopt;
    FamilySpec s(info.id, n);
    const std::string& id = info.id;
    if (id == "F1") s.params = {{"alpha3", 1}, {"theta", -2}};
    if (id == "F2") s.params = {{"beta4", 3}, {"gamma", 1}};
    if (id == "F3") s.params = {{"theta1", 1}, {"theta2", 2}, {"alpha", n % 2}};
    if (id == "F1s") s.params = {{"s", n}};
    if (id == "F2j") s.params = {{"j", 3}};
    if (id == "F2j1" || id == "L2") s.params = {{"beta", Rational(-3, 2)}};
    if (id == "L3") s.params = {{"j0", n}};
    if (id == "A" || id == "B" || id == "SolvA" || id == "SolvB") {
        const std::string base = (id == "A" || id == "SolvA") ? "A" : "B";
        auto al = find_valid_alphas(base, n, 1);
        if (al.empty()) return std::nullopt;
        s.params = {{"r", 1}};
        put_alphas(s.params, al);
    }
    return s;
}

}  // namespace

TEST_CASE("catalog lists the fifteen constructors") {
    const auto& cat = family_catalog();
    CHECK(cat.size() == 15);
    std::vector<std::string> ids;
    for (const auto& f : cat) ids.push_back(f.id);
    CHECK(ids == std::vector<std::string>{"F1", "F2", "F3", "F1s", "F2j", "F2j1", "Ln", "Qn", "A", "B", "L1", "L2",
                                          "L3", "SolvA", "SolvB"});
    CHECK(family_info("Qn").parity == Parity::Odd);
    CHECK_THROWS_AS(family_info("F9"), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("nope", 5)), std::invalid_argument);
}

TEST_CASE("every constructor yields a Leibniz table for n = 4..9") {
    for (const auto& info : family_catalog())
        for (long n = 4; n <= 9; ++n) {
            auto spec = sample_spec(info, n);
            if (!spec) continue;
            CAPTURE(info.id);
            CAPTURE(n);
            Algebra a = make_family(*spec);
            CHECK(leibniz_check(a).pass());
            CHECK(a.dim() == static_cast<std::size_t>(n + (info.nilpotent ? 1 : 2)));
            CHECK(is_lie(a) == info.lie);
            CHECK(a.metadata().family == info.id);
            if (info.nilpotent) CHECK(is_nilpotent(a));
            if (info.nilpotent) CHECK(is_filiform(a));
        }
}

TEST_CASE("Fuss-Catalan numbers") {
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
    for (long m = 0; m < 8; ++m) CHECK(fuss_catalan(m, 2) == Rational(catalan[m]));
    // p = 3: 1, 1, 3, 12, 55
    const long ternary[] = {1, 1, 3, 12, 55};
    for (long m = 0; m < 5; ++m) CHECK(fuss_catalan(m, 3) == Rational(ternary[m]));
}

TEST_CASE("F1^s coefficients agree with the closed form") {
    for (long n = 4; n <= 12; ++n)
        for (long s = 3; s <= n; ++s) {
            auto al = f1s_alphas(n, s);
            REQUIRE(al.size() == static_cast<std::size_t>(n - 2));
            for (long k = 3; k <= n; ++k) {
                CAPTURE(n);
                CAPTURE(s);
                CAPTURE(k);
                CHECK(al[static_cast<std::size_t>(k - 3)] == f1s_closed_form(k, s));
            }
        }
    // s = 3: signed Catalan numbers C_1, C_2, ...
    auto a = f1s_alphas(7, 3);
    CHECK(a == std::vector<Rational>{1, -2, 5, -14, 42});
}

TEST_CASE("range and parity are enforced") {
    CHECK_THROWS_AS(make_family(FamilySpec("F1", 3)), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("Qn", 6)), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F2j1", 5)), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F2j", 6, {{"j", 7}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F1s", 6, {{"s", 2}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F1s", 6)), std::invalid_argument);  // s is required
    CHECK_THROWS_AS(make_family(FamilySpec("F3", 6, {{"alpha", 1}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F3", 5, {{"alpha", 2}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("F1", 5, {{"gamma", 1}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("L3", 6, {{"j0", Rational(7, 2)}})), std::invalid_argument);
    // B at r = n-3 has no alpha left
    CHECK_THROWS_AS(make_family(FamilySpec("B", 7, {{"r", 4}, {"alpha1", 1}})), std::invalid_argument);
    CHECK_THROWS_AS(make_family(FamilySpec("A", 7, {{"r", 1}})), std::invalid_argument);  // all alpha zero
    // even n allowed for L1 only when parity is waived
    CHECK_THROWS_AS(make_family(FamilySpec("L1", 6)), std::invalid_argument);
    CHECK(leibniz_check(make_family(FamilySpec("L1", 6), false)).pass());
}

TEST_CASE("alpha tuples violating the Jacobi relations are rejected") {
    // B at n = 7, r = 1 needs alpha_2 = -2 alpha_1
    CHECK_THROWS_AS(make_family(FamilySpec("B", 7, {{"r", 1}, {"alpha1", 1}, {"alpha2", 1}})), std::runtime_error);
    CHECK_NOTHROW(make_family(FamilySpec("B", 7, {{"r", 1}, {"alpha1", 1}, {"alpha2", -2}})));
    auto al = find_valid_alphas("B", 7, 1);
    REQUIRE(al.size() == 2);
    CHECK(al[1] == -2 * al[0]);
}

TEST_CASE("t for A and B") {
    CHECK(family_t("A", 7, 1) == 2);
    CHECK(family_t("A", 8, 2) == 2);
    CHECK(family_t("B", 7, 1) == 2);
    CHECK(family_t("B", 7, 4) == 0);
}

TEST_CASE("metadata records id, n and parameters") {
    Algebra a = make_family(FamilySpec("F2j", 6, {{"j", 4}}));
    CHECK(a.metadata().n == 6);
    REQUIRE(a.metadata().params.size() == 1);
    CHECK(a.metadata().params[0].first == "j");
    CHECK(a.labels().front() == "e0");
    CHECK(make_family(FamilySpec("L3", 6, {{"j0", 4}})).labels().back() == "x");
}
