#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "moonshine/umbral.hpp"

using namespace moonshine;

TEST_CASE("multiplier dispatch") {
    for (long m : {2L, 3L, 4L, 5L, 7L, 13L}) CHECK(multiplier_cm(m) == 2);
    CHECK(multiplier_cm(9) == 1);
    CHECK(multiplier_cm(25) == 1);
    CHECK_THROWS(multiplier_cm(6));
    CHECK_THROWS(psi(11, 4, 4));
}

TEST_CASE("finite part of psi^(2): principal part and cone") {
    JacobiSeries f = finite_part(2, 8, 8);
    CHECK(f.coeff(0, 1) == -2);
    CHECK(f.coeff(0, -1) == 2);
    CHECK(f.coeff(0, 5) == 0);
    CHECK(f.coeff(1, 1) == 90);
    for (const auto& [n, l] : f.lines())
        for (const auto& [k, c] : l.terms()) {
            (void)c;
            CHECK(8 * k - n * n >= -1);
        }
}

TEST_CASE("H^(2) leading coefficients match the printed series") {
    UmbralForm u = extract_H(2, 8);
    CHECK(u.cplus(make_rat(-1, 8), 1) == -2);
    CHECK(u.cplus(make_rat(7, 8), 1) == 90);   // 2 * 45
    CHECK(u.cplus(make_rat(15, 8), 1) == 462); // 2 * 231
    CHECK(u.cplus(make_rat(23, 8), 1) == 1540); // 2 * 770
    CHECK(u.cplus(make_rat(7, 2), 2) == 0);
    CHECK(u.cplus(make_rat(7, 8), 3) == -90);
    CHECK(u.cplus(make_rat(7, 8), 5) == 90);  // h periodic mod 2m
}

TEST_CASE("H^(3) and H^(4) leading coefficients") {
    UmbralForm u3 = extract_H(3, 5);
    CHECK(u3.cplus(make_rat(-1, 12), 1) == -2);
    CHECK(u3.cplus(make_rat(11, 12), 1) == 32);   // 2 * 16
    CHECK(u3.cplus(make_rat(23, 12), 1) == 110);  // 2 * 55
    CHECK(u3.cplus(make_rat(35, 12), 1) == 288);  // 2 * 144
    UmbralForm u4 = extract_H(4, 5);
    CHECK(u4.cplus(make_rat(-1, 16), 1) == -2);
    CHECK(u4.cplus(make_rat(15, 16), 1) == 14);  // 2 * 7
    CHECK(u4.cplus(make_rat(31, 16), 1) == 42);  // 2 * 21
    CHECK(u4.cplus(make_rat(47, 16), 1) == 86);  // 2 * 43
}

TEST_CASE("umbral form invariants for all eight lambencies") {
    for (long m : {2L, 3L, 4L, 5L, 7L, 9L, 13L, 25L}) {
        UmbralForm u = extract_H(m, 3);
        CHECK(u.components[0].known_zero());
        CHECK(u.components[m].known_zero());
        for (long h = 0; h < 2 * m; ++h) {
            const RatSeries& H = u.components[h];
            CHECK((H + u.components[(2 * m - h) % (2 * m)]).known_zero());
            CHECK(H.min_exp() >= -1);  // optimal growth: >= -1/4m scaled by 4m
            for (const auto& [e, c] : H.terms()) {
                CHECK(is_integer(c));
                CHECK((e + h * h) % (4 * m) == 0);  // exponents in Z - h^2/4m
            }
        }
    }
}

TEST_CASE("m=2 coefficients are all even") {
    UmbralForm u = extract_H(2, 12);
    for (const auto& [e, c] : u.components[1].terms()) {
        (void)e;
        CHECK(c.get_num() % 2 == 0);
    }
}

TEST_CASE("fast m=2 stream matches the pipeline and the frozen oracle") {
    const long known[] = {-2, 90, 462, 1540, 4554, 11592, 27830, 61686, 131100};
    MathieuStream ms(45);
    for (int k = 0; k < 9; ++k) CHECK(ms.a[k] == known[k]);
    UmbralForm u = extract_H(2, 42);
    for (long k = 0; k < 42; ++k) {
        Rat n = make_rat(8 * k - 1, 8);
        CHECK(ms.cplus(n, 1) == u.cplus(n, 1));
        CHECK(ms.cplus(n, 3) == u.cplus(n, 3));
    }
    CHECK(ms.cplus(make_rat(7, 8), 2) == 0);
    CHECK(ms.cplus(make_rat(1, 2), 1) == 0);  // off the support lattice
    CHECK_THROWS_AS(ms.cplus(make_rat(8 * 100 - 1, 8), 1), std::out_of_range);
}

TEST_CASE("shadow series") {
    RatSeries s = shadow(2, 1, 5);
    CHECK(s.coeff(make_rat(1, 8)) == 1);   // n = 1
    CHECK(s.coeff(make_rat(9, 8)) == -3);  // n = -3
    CHECK(s.coeff(make_rat(25, 8)) == 5);  // n = 5
    CHECK(s.coeff(make_rat(4, 8)) == 0);
    RatSeries z = shadow(2, 0, 5);
    CHECK(z.known_zero());
    CHECK((shadow(3, 1, 5) + shadow(3, -1, 5)).known_zero());
}

TEST_CASE("weil matrices") {
    WeilMatrices w = weil_matrices(2);
    CHECK(std::abs(w.T_mat[1][1] - unit_e(0.125)) < 1e-14);
    CHECK(std::abs(w.T_mat[2][2] - unit_e(0.5)) < 1e-14);
    CHECK(std::abs(w.T_mat[0][1]) == 0.0);
    long d = 4;
    for (long h = 0; h < d; ++h)
        for (long k = 0; k < d; ++k) {
            CHECK(std::abs(w.S_mat[h][k] - w.S_mat[k][h]) < 1e-14);  // symmetric
            // unitarity of both generators
            std::complex<double> dotS = 0, dotT = 0;
            for (long j = 0; j < d; ++j) {
                dotS += w.S_mat[h][j] * std::conj(w.S_mat[k][j]);
                dotT += w.T_mat[h][j] * std::conj(w.T_mat[k][j]);
            }
            CHECK(std::abs(dotS - (h == k ? 1.0 : 0.0)) < 1e-12);
            CHECK(std::abs(dotT - (h == k ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("shadow transformation under S numerically") {
    CHECK(shadow_transform_check(2, ComplexPoint(0, 1)) < 1e-8);
    CHECK(shadow_transform_check(3, ComplexPoint(0, 1)) < 1e-8);
    CHECK(shadow_transform_check(5, ComplexPoint(0.1, 0.9)) < 1e-8);
}
