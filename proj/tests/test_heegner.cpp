#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "moonshine/heegner.hpp"

using namespace moonshine;

namespace {

std::mt19937 rng(20260825);

// T^k and S moves preserve the SL2-class and the discriminant
BQF apply_T(const BQF& q, long k) {
    return {q.a, q.b + 2 * k * q.a, q.a * k * k + q.b * k + q.c};
}
BQF apply_S(const BQF& q) { return {q.c, -q.b, q.a}; }

}  // namespace

TEST_CASE("form reduction") {
    CHECK(reduce_form({2, -3, 2}) == BQF{1, 1, 2});
    CHECK(reduce_form({1, 1, 2}) == BQF{1, 1, 2});
    CHECK(reduce_form({-2, 1, -1}) == BQF{-1, -1, -2});
    CHECK(reduce_form({4, 15, 15}) == BQF{1, 1, 4});
    CHECK_THROWS_AS(reduce_form({1, 3, 1}), std::invalid_argument);
}

TEST_CASE("reduced classes and class numbers") {
    auto c7 = reduced_classes(-7);
    REQUIRE(c7.size() == 2);
    CHECK(c7[0] == BQF{1, 1, 2});
    CHECK(c7[1] == BQF{-1, -1, -2});
    auto c15 = reduced_classes(-15);
    REQUIRE(c15.size() == 4);
    CHECK(c15[0] == BQF{1, 1, 4});
    CHECK(c15[1] == BQF{2, 1, 2});
    CHECK(class_number(-11) == 1);
    CHECK(class_number(-19) == 1);
    CHECK(class_number(-20) == 2);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-43) == 1);
    CHECK(class_number(-47) == 5);
    CHECK_THROWS_AS(reduced_classes(-4), std::domain_error);
    CHECK_THROWS_AS(reduced_classes(-12), std::invalid_argument);
}

TEST_CASE("gamma0 classes for the worked example") {
    auto cls = gamma0_classes(-7, 1, 2);
    REQUIRE(cls.size() == 2);
    CHECK(cls[0] == BQF{2, 1, 1});
    CHECK(cls[1] == BQF{-2, 1, -1});
    for (const BQF& q : cls) {
        CHECK(q.a % 2 == 0);
        CHECK(((q.b - 1) % 4 + 4) % 4 == 0);
        CHECK(q.disc() == -7);
    }
    CHECK_THROWS_AS(gamma0_classes(-7, 2, 2), std::invalid_argument);
}

TEST_CASE("gamma0 classes across the examples table") {
    const long rows[][3] = {{2, -7, 1},  {3, -11, 1}, {4, -7, 3},  {5, -11, 3},
                            {7, -19, 3}, {9, -11, 5}, {13, -43, 3}, {25, -19, 9}};
    for (const auto& row : rows) {
        long m = row[0], delta = row[1], r = row[2];
        auto cls = gamma0_classes(delta, r, m);
        CHECK(long(cls.size()) == 2 * class_number(delta));
        for (const BQF& q : cls) {
            CHECK(q.a % m == 0);
            CHECK(((q.b - r) % (2 * m) + 2 * m) % (2 * m) == 0);
            CHECK(q.disc() == delta);
            CHECK(q.primitive());
        }
        // pairwise SL2-inequivalent
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j)
                CHECK(!(reduce_form(cls[i]) == reduce_form(cls[j])));
    }
}

TEST_CASE("genus character values") {
    CHECK(genus_char(-7, {2, 1, 1}) == 1);
    CHECK(genus_char(-7, {-2, 1, -1}) == -1);
    CHECK(genus_char(-7, {1, 1, 2}) == 1);
    // (Delta / n) = 1 is automatic for coprime n represented by a
    // positive-definite form of discriminant Delta, so chi = sign(a)
    CHECK(genus_char(-15, {1, 1, 4}) == 1);
    CHECK(genus_char(-15, {2, 1, 2}) == 1);
    CHECK(genus_char(-15, {-2, -1, -2}) == -1);
    CHECK_THROWS_AS(genus_char(-15, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("genus character is a well-defined class function") {
    const long deltas[] = {-7, -11, -15, -19, -20, -23, -43};
    std::uniform_int_distribution<int> pd(0, 6);
    std::uniform_int_distribution<long> pk(-4, 4);
    std::uniform_int_distribution<int> moves(1, 6), coin(0, 1);
    for (int i = 0; i < 100; ++i) {
        long delta = deltas[pd(rng)];
        auto cls = reduced_classes(delta);
        std::uniform_int_distribution<size_t> pc(0, cls.size() - 1);
        BQF q = cls[pc(rng)];
        int chi = genus_char(delta, q);
        BQF t = q;
        int nm = moves(rng);
        for (int s = 0; s < nm; ++s) t = coin(rng) ? apply_S(t) : apply_T(t, pk(rng));
        CHECK(t.disc() == delta);
        CHECK(genus_char(delta, t) == chi);          // invariant on the SL2-class
        CHECK(reduce_form(t) == reduce_form(q));
        CHECK(genus_char(delta, -q) == -chi);        // (delta / -1) = -1
    }
}

TEST_CASE("heegner points") {
    HeegnerPoint p1 = heegner_point({2, 1, 1});
    CHECK(p1.alpha == QuadElem(-7, make_rat(-1, 4), make_rat(1, 4)));
    HeegnerPoint p2 = heegner_point({-2, 1, -1});
    CHECK(p2.alpha == QuadElem(-7, make_rat(1, 4), make_rat(1, 4)));
    CHECK(p1.numeric().value().imag() > 0);
    CHECK(p2.numeric().value().imag() > 0);
    CHECK_THROWS_AS(heegner_point({1, 1, 1}), std::domain_error);   // delta = -3
    CHECK_THROWS_AS(heegner_point({1, 0, 1}), std::domain_error);   // delta = -4
}

TEST_CASE("heegner point is an exact root on random classes") {
    const long deltas[] = {-7, -11, -15, -19, -23, -43};
    std::uniform_int_distribution<int> pd(0, 5);
    std::uniform_int_distribution<long> pk(-3, 3);
    for (int i = 0; i < 100; ++i) {
        long delta = deltas[pd(rng)];
        auto cls = reduced_classes(delta);
        std::uniform_int_distribution<size_t> pc(0, cls.size() - 1);
        BQF q = apply_T(cls[pc(rng)], pk(rng));
        HeegnerPoint p = heegner_point(q);  // ctor asserts Q(alpha, 1) = 0
        CHECK(p.numeric().value().imag() > 0);
    }
}

TEST_CASE("twisted divisor for (m, Delta, r) = (2, -7, 1)") {
    TwistedDivisor d = divisor(2, -7, 1);
    REQUIRE(d.entries.size() == 2);
    QuadElem a1(-7, make_rat(-1, 4), make_rat(1, 4));
    QuadElem a2(-7, make_rat(1, 4), make_rat(1, 4));
    for (const auto& [pt, mult] : d.entries) {
        if (pt.alpha == a1) CHECK(mult == -2);
        else if (pt.alpha == a2) CHECK(mult == 2);
        else FAIL("unexpected heegner point in divisor");
    }
    CHECK(d.total_degree() == 0);
}

TEST_CASE("twisted divisors have degree zero across the table") {
    const long rows[][3] = {{3, -11, 1}, {4, -7, 3}, {5, -11, 3}, {9, -11, 5}};
    for (const auto& row : rows) {
        TwistedDivisor d = divisor(row[0], row[1], row[2]);
        CHECK(d.total_degree() == 0);
        CHECK(!d.entries.empty());
    }
}
