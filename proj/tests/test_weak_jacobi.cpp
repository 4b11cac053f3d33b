#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <utility>

#include "moonshine/weak_jacobi.hpp"

using namespace moonshine;

TEST_CASE("phi1(2) q^0 profile is the index-1 generator") {
    Phi1Builder b(4);
    const JacobiSeries& p = b.phi1(2);
    CHECK(p.coeff(0, -1) == 1);
    CHECK(p.coeff(0, 0) == 10);
    CHECK(p.coeff(0, 1) == 1);
    CHECK(p.coeff(0, 2) == 0);
}

TEST_CASE("phi1(5) matches its defining combination recomputed externally") {
    Phi1Builder b(6);
    JacobiSeries lhs = b.phi1(5);
    JacobiSeries rhs = make_rat(1, 4) * (b.phi1(4) * b.phi1(2) - b.phi1(3) * b.phi1(3));
    for (const auto& [n, l] : lhs.lines()) CHECK(rhs.line(n) == l);
    for (const auto& [n, l] : rhs.lines()) CHECK(lhs.line(n) == l);
}

TEST_CASE("cone vanishing example") {
    Phi1Builder b(4);
    CHECK(b.phi1(3).coeff(0, 3) == 0);
    CHECK_FALSE(in_weak_jacobi_cone(3, 0, 3));
}

TEST_CASE("lambency range is enforced") {
    Phi1Builder b(2);
    CHECK_THROWS(b.phi1(1));
    CHECK_THROWS(b.phi1(26));
}

TEST_CASE("whole tower: evenness, cone, elliptic invariance, integrality") {
    Phi1Builder b(6);
    for (long m = 2; m <= 25; ++m) {
        const JacobiSeries& p = b.phi1(m);
        long idx = m - 1;
        std::map<std::pair<long, long>, Rat> cls;
        for (const auto& [n, l] : p.lines()) {
            for (const auto& [k, c] : l.terms()) {
                CHECK(is_integer(c));
                CHECK(p.coeff(k, -n) == c);
                CHECK(in_weak_jacobi_cone(m, k, n));
                auto key = std::make_pair(4 * idx * k - n * n, ((n % (2 * idx)) + 2 * idx) % (2 * idx));
                auto [it, fresh] = cls.emplace(key, c);
                if (!fresh) CHECK(it->second == c);
            }
        }
        // absent coefficients inside the window also respect the class values
        for (const auto& [key, c] : cls) {
            auto [D, rmod] = key;
            for (long n = rmod - 2 * idx * 3; n <= 2 * idx * 3; n += 2 * idx) {
                long num = D + n * n;
                if (num % (4 * idx) != 0) continue;
                long k = num / (4 * idx);
                if (k < 0 || k >= p.qtrunc()) continue;
                CHECK(p.coeff(k, n) == c);
            }
        }
    }
}

TEST_CASE("deeper window of phi1(2) against the standard expansion") {
    // phi_{0,1} = 4(f2^2+f3^2+f4^2); q^1 y-profile of the index-1 generator
    Phi1Builder b(3);
    const JacobiSeries& p = b.phi1(2);
    CHECK(p.coeff(1, 2) == 10);
    CHECK(p.coeff(1, 1) == -64);
    CHECK(p.coeff(1, 0) == 108);
    CHECK(p.coeff(1, -1) == -64);
    CHECK(p.coeff(1, -2) == 10);
    CHECK(p.coeff(2, 3) == 1);
    CHECK(p.coeff(2, 2) == 108);
    CHECK(p.coeff(2, 1) == -513);
    CHECK(p.coeff(2, 0) == 808);
}
