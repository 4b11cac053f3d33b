#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

#include "moonshine/jacobi_series.hpp"
#include "moonshine/series.hpp"

namespace moonshine {

struct ComplexPoint {
    double re = 0.0;
    double im = 1.0;
    ComplexPoint() = default;
    ComplexPoint(double r, double i) : re(r), im(i) {
        if (!(im > 0)) throw std::domain_error("point must lie in the upper half-plane");
    }
    std::complex<double> value() const { return {re, im}; }
};

/// prod (1 - q^n) as a q-series over den 1, via the pentagonal number theorem.
inline RatSeries eta_unit(long trunc) {
    RatSeries s(1, trunc);
    for (long k = 0;; ++k) {
        long e1 = k * (3 * k - 1) / 2;
        long e2 = k * (3 * k + 1) / 2;
        if (e1 >= trunc && e2 >= trunc) break;
        Rat sgn = (k % 2 == 0) ? Rat(1) : Rat(-1);
        s.add_to(e1, sgn);
        if (k > 0) s.add_to(e2, sgn);
    }
    return s;
}

/// eta = q^{1/24} prod (1 - q^n), over den 24, exact below q^order.
inline RatSeries eta_series(long order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    return eta_unit(order).rescaled(24).shifted(1);
}

struct Hauptmodul {
    long m = 0;
    RatSeries series;
    std::string label;
};

inline long hauptmodul_exponent(long m) {
    switch (m) {
        case 2: case 3: case 4: case 5: case 7: case 9: case 13: case 25:
            return 24 / (m - 1);
        default:
            throw std::invalid_argument("unsupported Coxeter number");
    }
}

inline std::string hauptmodul_label(long m) {
    static const std::map<long, std::string> labels = {
        {2, "2B"}, {3, "3B"}, {4, "4C"}, {5, "5B"},
        {7, "7B"}, {9, "9B"}, {13, "13B"}, {25, "(25Z)"}};
    auto it = labels.find(m);
    if (it == labels.end()) throw std::invalid_argument("unsupported Coxeter number");
    return it->second;
}

/// T_g = eta(tau)^e / eta(m tau)^e + e with e = 24/(m-1); the q^{1/24}
/// prefactors collapse to q^{-1}, so the series lives on the integer grid.
inline Hauptmodul hauptmodul_series(long m, long terms) {
    long e = hauptmodul_exponent(m);
    long t = terms + 1;
    RatSeries unit1 = eta_unit(t).pow_int(e);
    RatSeries unitm = eta_unit((t + m - 1) / m).pow_int(e).dilated(m);
    unitm.truncate(t);
    RatSeries s = (unit1 * unitm.inverse()).shifted(-1);
    s.add_to(0, Rat(e));
    s.truncate(terms);
    if (s.coeff_scaled(0) != 0) throw std::logic_error("hauptmodul not normalized");
    return {m, s, hauptmodul_label(m)};
}

namespace detail {
/// Multiply a running full-support product by (1 + c q^(qe) y^(yn)).
inline void mul_binomial(JacobiSeries& acc, long qe, long yn, const Rat& c, long qtrunc) {
    JacobiSeries f(acc.qden(), acc.yden(), qtrunc, 0, true);
    f.add_term(0, 0, Rat(1));
    f.add_term(qe, yn, c);
    acc = acc * f;
    acc.truncate_q(qtrunc);
}
}  // namespace detail

/// theta_i(tau, z) for i in {2,3,4} as truncated product expansions.
/// theta_2 uses qden 8, yden 2 (half-integer exponents); theta_3 and
/// theta_4 use qden 2, yden 1.
inline JacobiSeries jacobi_theta(int i, long qorder) {
    if (qorder < 1) throw std::invalid_argument("qorder must be >= 1");
    if (i == 2) {
        long qt = 8 * qorder;
        JacobiSeries s(8, 2, qt, 0, true);
        s.add_term(1, 1, Rat(1));  // q^{1/8} y^{1/2}
        for (long n = 1; 8 * (n - 1) < qt; ++n) {
            if (8 * n < qt) {
                detail::mul_binomial(s, 8 * n, 0, Rat(-1), qt);
                detail::mul_binomial(s, 8 * n, 2, Rat(1), qt);
            }
            detail::mul_binomial(s, 8 * (n - 1), -2, Rat(1), qt);
        }
        return s;
    }
    if (i == 3 || i == 4) {
        long qt = 2 * qorder;
        Rat sgn = (i == 3) ? Rat(1) : Rat(-1);
        JacobiSeries s(2, 1, qt, 0, true);
        s.add_term(0, 0, Rat(1));
        for (long n = 1; 2 * n - 1 < qt; ++n) {
            if (2 * n < qt) detail::mul_binomial(s, 2 * n, 0, Rat(-1), qt);
            detail::mul_binomial(s, 2 * n - 1, 1, sgn, qt);
            detail::mul_binomial(s, 2 * n - 1, -1, sgn, qt);
        }
        return s;
    }
    throw std::invalid_argument("theta index must be 2, 3 or 4");
}

/// theta_i(tau, 0): collapse y -> 1.
inline RatSeries theta_nullwert(int i, long qorder) {
    return jacobi_theta(i, qorder).at_y_one();
}

/// theta_{m,h}(tau, z) = sum_{n = h (2m)} q^{n^2/4m} y^n, over qden 4m.
inline JacobiSeries theta_component(long m, long h, long qorder) {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    long hh = ((h % (2 * m)) + 2 * m) % (2 * m);
    long qt = 4 * m * qorder;
    JacobiSeries s(4 * m, 1, qt, 0, true);
    long bound = 0;
    while (bound * bound < qt) ++bound;
    for (long n = -bound; n <= bound; ++n) {
        if (((n - hh) % (2 * m) + 2 * m) % (2 * m) != 0) continue;
        if (n * n < qt) s.add_term(n * n, n, Rat(1));
    }
    return s;
}

/// eta(tau) numerically, by the pentagonal series with terms below 1e-18 dropped.
inline std::complex<double> eta_eval(const ComplexPoint& tau) {
    std::complex<double> t = tau.value();
    const std::complex<double> ipi(0.0, M_PI);
    std::complex<double> acc = 0.0;
    for (long k = 0;; ++k) {
        bool small = true;
        for (long s : {1L, -1L}) {
            long j = s > 0 ? k : -(k + 1);
            double e = double(6 * j + 1) * double(6 * j + 1) / 12.0;
            std::complex<double> term = std::exp(ipi * t * e);
            if ((j % 2 + 2) % 2 == 1) term = -term;
            acc += term;
            if (std::abs(term) >= 1e-18) small = false;
        }
        if (small && k > 2) break;
    }
    return acc;
}

inline std::complex<double> hauptmodul_eval(long m, const ComplexPoint& tau) {
    long e = hauptmodul_exponent(m);
    ComplexPoint mtau(m * tau.re, m * tau.im);
    std::complex<double> ratio = eta_eval(tau) / eta_eval(mtau);
    std::complex<double> p = 1.0;
    for (long k = 0; k < e; ++k) p *= ratio;
    return p + std::complex<double>(double(e), 0.0);
}

}  // namespace moonshine
