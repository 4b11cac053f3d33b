#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "moonshine/borcherds.hpp"
#include "moonshine/numtheory.hpp"

namespace moonshine {

inline Splitting splitting(long p, long delta) { return prime_splitting(p, delta); }

struct NormalizedStream {
    long m = 0, delta = 0, r = 0;
    std::vector<Rat> a;  // a(1..X), a[0] unused
    bool integral = true;
    std::string normalizer;
};

/// f / (leading coefficient): the sqrt(Delta) factor cancels, leaving exact
/// rationals.  Integrality is checked, not assumed.
inline NormalizedStream normalized_coeffs(long m, long delta, long r, long X,
                                          const CoeffFn& cplus) {
    QuadSeries f = log_derivative(m, delta, r, X, cplus);
    QuadElem lead = f.coeff_scaled(1);
    if (lead.is_zero()) throw std::domain_error("zero leading coefficient");
    NormalizedStream s{m, delta, r, {Rat(0)}, true,
                       "f / (" + lead.str() + ")"};
    for (long n = 1; n <= X; ++n) {
        QuadElem v = f.coeff_scaled(n) / lead;
        if (!v.is_rational()) throw std::logic_error("normalized coefficient left the rationals");
        if (!is_integer(v.u())) s.integral = false;
        s.a.push_back(v.u());
    }
    return s;
}

/// 2-decimal ratio, rounded half away from zero; exact count kept alongside.
inline std::string ratio_2dp(long count, long x) {
    long v = (200 * count + x) / (2 * x);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%ld.%02ld", v / 100, v % 100);
    return buf;
}

struct DivisibilityReport {
    long m = 0, delta = 0, r = 0, p = 0, k = 0;
    struct Row {
        long x = 0, count = 0;
        std::string ratio;
    };
    std::vector<Row> rows;
    std::string normalization;
    long skipped = 0;  // non-integral entries excluded from the census
};

/// pi(x; p^k) = #{n <= x : a(n) = 0 (mod p^k)} at each checkpoint.
inline DivisibilityReport divisibility_scan(const NormalizedStream& s, long p, long k,
                                            const std::vector<long>& checkpoints) {
    DivisibilityReport rep{s.m, s.delta, s.r, p, k, {}, s.normalizer, 0};
    Int pk = 1;
    for (long i = 0; i < k; ++i) pk *= p;
    long count = 0, n = 0;
    size_t ci = 0;
    for (long x : checkpoints)
        if (x > long(s.a.size()) - 1)
            throw std::invalid_argument("checkpoint beyond the coefficient stream");
    std::vector<long> cps = checkpoints;
    for (n = 1; n < long(s.a.size()) && ci < cps.size(); ++n) {
        const Rat& a = s.a[n];
        if (!is_integer(a)) ++rep.skipped;
        else if (a.get_num() % pk == 0) ++count;
        while (ci < cps.size() && n == cps[ci]) {
            rep.rows.push_back({cps[ci], count, ratio_2dp(count, cps[ci])});
            ++ci;
        }
    }
    return rep;
}

}  // namespace moonshine
