#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "moonshine/jacobi_series.hpp"
#include "moonshine/numtheory.hpp"
#include "moonshine/quadelem.hpp"
#include "moonshine/rat.hpp"
#include "moonshine/series.hpp"

using namespace moonshine;

namespace {

std::mt19937 rng(20260825);

Rat random_rat() {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    return make_rat(num(rng), den(rng));
}

RatSeries random_series(long den, long trunc, int nterms) {
    std::uniform_int_distribution<long> expo(-4, trunc - 1);
    RatSeries s(den, trunc);
    for (int i = 0; i < nterms; ++i) s.add_to(expo(rng), random_rat());
    return s;
}

QuadElem random_quad(long delta) { return QuadElem(delta, random_rat(), random_rat()); }

}  // namespace

TEST_CASE("rational formatting round-trips") {
    CHECK(rat_str(make_rat(3, 6)) == "1/2");
    CHECK(rat_str(make_rat(-8, 2)) == "-4");
    CHECK(parse_rat("22/7") == make_rat(22, 7));
    CHECK(parse_rat("-5") == make_rat(-5));
    CHECK_THROWS(parse_rat("abc"));
    CHECK_THROWS(make_rat(1, 0));
}

TEST_CASE("kronecker symbol matches known values") {
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-7, 3) == -1);
    CHECK(kronecker(-7, 7) == 0);
    CHECK(kronecker(-15, 2) == 1);
    CHECK(kronecker(-15, 7) == -1);
    CHECK(kronecker(-11, 3) == 1);
    CHECK(kronecker(-11, 2) == -1);
}

TEST_CASE("fundamental discriminants") {
    for (long d : {-3, -4, -7, -8, -11, -15, -19, -20, -23, -43})
        CHECK(is_fundamental_discriminant(d));
    for (long d : {-9, -12, -16, -25, -27, -28, 0, 1 - 2})
        CHECK_FALSE(is_fundamental_discriminant(d));
}

TEST_CASE("prime splitting") {
    CHECK(prime_splitting(2, -7) == Splitting::split);
    CHECK(prime_splitting(3, -7) == Splitting::inert);
    CHECK(prime_splitting(7, -7) == Splitting::ramified);
    CHECK(splitting_name(Splitting::split) == "split");
}

TEST_CASE("admissibility") {
    CHECK(is_admissible(-7, 1, 2));
    CHECK(is_admissible(-15, 1, 2));
    CHECK(is_admissible(-7, 3, 4));
    CHECK(is_admissible(-19, 9, 25));
    CHECK_FALSE(is_admissible(-5, 1, 2));
    CHECK_FALSE(is_admissible(-7, 2, 2));
}

TEST_CASE("QuadElem arithmetic") {
    QuadElem a(-7, make_rat(1, 2), make_rat(45, 2));
    QuadElem b = a.conj();
    CHECK((a + b) == QuadElem(1));
    CHECK((a * b).is_rational());
    CHECK((a * b).u() == a.norm());
    CHECK(a.norm() == make_rat(1 + 45 * 45 * 7, 4));
    CHECK((a * a.inverse()) == QuadElem(1));
    CHECK_THROWS(QuadElem(-7, Rat(0), Rat(1)) * QuadElem(-11, Rat(0), Rat(1)));
    CHECK_THROWS(QuadElem(-12, Rat(1), Rat(1)));
    CHECK(QuadElem(-7, Rat(3), Rat(0)) == QuadElem(3));
}

TEST_CASE("QuadElem conjugation is a ring homomorphism") {
    std::uniform_int_distribution<int> pick(0, 3);
    const long deltas[] = {-7, -11, -15, -19};
    for (int i = 0; i < 100; ++i) {
        long d = deltas[pick(rng)];
        QuadElem a = random_quad(d), b = random_quad(d);
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK(a.norm() == (a * a.conj()).u());
        CHECK(a.norm() >= 0);
        if (!a.is_zero()) CHECK((a * a.inverse()) == QuadElem(1));
    }
}

TEST_CASE("series ring axioms hold on random inputs") {
    for (int i = 0; i < 100; ++i) {
        RatSeries a = random_series(2, 12, 5);
        RatSeries b = random_series(3, 14, 5);
        RatSeries c = random_series(1, 10, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == RatSeries(a.den(), a.trunc()));
    }
}

TEST_CASE("series truncation guarantees under multiplication") {
    RatSeries a = RatSeries::monomial(1, 10, 2, Rat(1));   // q^2, exact below q^10
    RatSeries b = RatSeries::monomial(1, 5, 0, Rat(1));    // 1, exact below q^5
    RatSeries p = a * b;
    CHECK(p.trunc() == 7);
    CHECK(p.coeff_scaled(2) == 1);
    CHECK_THROWS_AS(p.coeff_scaled(7), std::out_of_range);
}

TEST_CASE("series inverse and pow") {
    RatSeries f(1, 12);
    f.add_to(0, Rat(1));
    f.add_to(1, Rat(-1));
    RatSeries g = f.inverse();  // geometric series
    for (long e = 0; e < 12; ++e) CHECK(g.coeff_scaled(e) == 1);
    CHECK(f * g == RatSeries::one(12));
    CHECK(f.pow_int(-2) * f.pow_int(2) == RatSeries::one(10));

    RatSeries h = RatSeries::monomial(2, 8, -3, make_rat(1, 2));
    h.add_to(1, Rat(4));
    CHECK(h * h.inverse() == RatSeries::one(5));
}

TEST_CASE("exp and log round-trip on random inputs") {
    for (int i = 0; i < 100; ++i) {
        std::uniform_int_distribution<long> expo(1, 11);
        RatSeries f(2, 12);
        for (int t = 0; t < 5; ++t) f.add_to(expo(rng), random_rat());
        RatSeries g = f.exp_series();
        CHECK(g.coeff_scaled(0) == 1);
        RatSeries back = g.log_series();
        CHECK(back == f);
        RatSeries h = RatSeries::one(12).rescaled(2) + f;
        CHECK(h.log_series().exp_series() == h);
    }
}

TEST_CASE("theta operator") {
    RatSeries f = RatSeries::monomial(4, 20, 6, Rat(2));
    CHECK(f.theta_op().coeff_scaled(6) == Rat(3));  // 2 * 6/4
}

TEST_CASE("fractional exponent access") {
    RatSeries f = RatSeries::monomial(8, 24, 7, Rat(5));
    CHECK(f.coeff(make_rat(7, 8)) == 5);
    CHECK(f.coeff(make_rat(1, 3)) == 0);
    CHECK_THROWS_AS(f.coeff(Rat(4)), std::out_of_range);
}

TEST_CASE("JacobiSeries product width rule") {
    JacobiSeries a(1, 1, 10, 3);
    a.add_term(0, 2, Rat(1));
    a.add_term(1, 0, Rat(1));
    JacobiSeries b(1, 1, 10, 5);
    b.add_term(0, 1, Rat(1));
    JacobiSeries p = a * b;
    CHECK(p.ywidth() == std::min(3 - 1, 5 - 2));
    CHECK(p.coeff(1, 1) == 1);
    CHECK_THROWS_AS(p.line(3), std::out_of_range);
}

TEST_CASE("JacobiSeries full support products stay exact at all widths") {
    JacobiSeries a(1, 1, 8, 0, true);
    a.add_term(0, 1, Rat(1));
    a.add_term(0, -1, Rat(1));
    JacobiSeries p = a * a * a;
    CHECK(p.coeff(0, 3) == 1);
    CHECK(p.coeff(0, 1) == 3);
    CHECK(p.full_support());
    CHECK(p.at_y_one().coeff_scaled(0) == 8);
}

TEST_CASE("JacobiSeries line division") {
    JacobiSeries a(1, 1, 8, 0, true);
    a.add_term(0, 0, Rat(1));
    a.add_term(1, 1, Rat(1));
    RatSeries f(1, 8);
    f.add_to(0, Rat(1));
    f.add_to(1, Rat(1));
    JacobiSeries q = a.div_q(f);
    CHECK(q.mul_q(f).coeff(1, 1) == 1);
    CHECK(q.coeff(0, 0) == 1);
    CHECK(q.coeff(1, 0) == -1);
}

TEST_CASE("JacobiSeries y-grid coarsening") {
    JacobiSeries a(1, 2, 6, 0, true);
    a.add_term(0, 2, Rat(1));
    a.add_term(1, -4, Rat(3));
    JacobiSeries c = a.coarsen_ygrid(1);
    CHECK(c.coeff(0, 1) == 1);
    CHECK(c.coeff(1, -2) == 3);
    a.add_term(2, 1, Rat(1));
    CHECK_THROWS(a.coarsen_ygrid(1));
}
