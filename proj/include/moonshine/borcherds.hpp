#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "moonshine/heegner.hpp"
#include "moonshine/series.hpp"
#include "moonshine/theta_eta.hpp"
#include "moonshine/umbral.hpp"

namespace moonshine {

/// Coefficient source c^+(n, h) for a fixed lambency.
using CoeffFn = std::function<Rat(const Rat&, long)>;

/// c^+ source valid for integer indices up to max_index; m = 2 runs on the
/// fast stream, the rest on the theta-decomposition pipeline.
inline CoeffFn umbral_source(long m, long max_index) {
    if (m == 2) {
        auto ms = std::make_shared<MathieuStream>(max_index + 2);
        return [ms](const Rat& n, long h) { return ms->cplus(n, h); };
    }
    auto u = std::make_shared<UmbralForm>(extract_H(m, max_index + 2));
    return [u](const Rat& n, long h) { return u->cplus(n, h); };
}

struct EpsilonDelta {
    long delta = 0;
    QuadElem value;  // +-sqrt(delta), value^2 = delta exactly
};

/// eps_Delta = sum_b e(b/Delta) (Delta/b), summed numerically over a full
/// period and snapped to +-sqrt(Delta).  No closed sign formula is used: the
/// printed values do not follow one branch convention uniformly.
inline EpsilonDelta epsilon(long delta) {
    if (delta >= 0 || !is_fundamental_discriminant(delta))
        throw std::invalid_argument("discriminant must be fundamental and negative");
    long D = -delta;
    std::complex<double> acc = 0.0;
    for (long b = 1; b < D; ++b)
        acc += double(kronecker(delta, b)) * unit_e(double(b) / double(delta));
    double s = std::sqrt(double(D));
    if (std::abs(acc - std::complex<double>(0.0, s)) < 1e-6)
        return {delta, QuadElem::sqrt_delta(delta)};
    if (std::abs(acc + std::complex<double>(0.0, s)) < 1e-6)
        return {delta, -QuadElem::sqrt_delta(delta)};
    throw std::runtime_error("gauss sum snap failed for Delta=" + std::to_string(delta));
}

/// G_k = sum_b (Delta/b) e(bk/Delta): equals (Delta/k) eps for gcd(k,Delta)=1,
/// otherwise computed by direct summation and snapped to an exact element.
inline QuadElem gauss_gk(long delta, long k, const QuadElem& eps) {
    long D = -delta;
    if (gcd_long(k, D) == 1) return Rat(kronecker(delta, k)) * eps;
    std::complex<double> acc = 0.0;
    for (long b = 1; b < D; ++b)
        acc += double(kronecker(delta, b)) * unit_e(double(b * k) / double(delta));
    double s = std::sqrt(double(D));
    long u = std::lround(acc.real());
    long v = std::lround(acc.imag() / s);
    if (std::abs(acc - std::complex<double>(double(u), double(v) * s)) > 1e-6)
        throw std::runtime_error("gauss sum snap failed for G_k");
    return QuadElem(delta, Rat(u), Rat(v));
}

struct BorcherdsProduct {
    long m = 0, delta = 0, r = 0;
    QuadSeries series;  // den 1, constant term 1
    long qorder = 0;
};

namespace detail {
inline BorcherdsProduct product_with_eps(long m, long delta, long r, long qorder,
                                         const CoeffFn& cplus, const QuadElem& eps) {
    long rr = ((r % (2 * m)) + 2 * m) % (2 * m);
    if (!is_admissible(delta, rr, m)) throw std::invalid_argument("(delta, r) not admissible for m");
    // log Psi = sum_n c^+(|D|n^2/4m, rn) log P(q^n),  log P(x) = -sum_k x^k G_k / k
    QuadSeries L(1, qorder + 1);
    for (long n = 1; n <= qorder; ++n) {
        Rat cn = cplus(make_rat(-delta * n * n, 4 * m), r * n);
        if (cn == 0) continue;
        for (long k = 1; n * k <= qorder; ++k) {
            QuadElem g = gauss_gk(delta, k, eps);
            if (g.is_zero()) continue;
            L.add_to(n * k, g * (-cn / Rat(k)));
        }
    }
    return {m, delta, r, L.exp_series(), qorder};
}
}  // namespace detail

inline BorcherdsProduct product_series(long m, long delta, long r, long qorder,
                                       const CoeffFn& cplus) {
    return detail::product_with_eps(m, delta, r, qorder, cplus, epsilon(delta).value);
}

/// f = sqrt(Delta) sum_N q^N sum_{ij=N} i c^+(|Delta|i^2/4m, ri) (Delta/j),
/// cross-checked against Theta(Psi)/Psi before returning.
inline QuadSeries log_derivative(long m, long delta, long r, long qorder, const CoeffFn& cplus) {
    QuadElem sq = QuadElem::sqrt_delta(delta);
    QuadSeries f(1, qorder + 1);
    for (long N = 1; N <= qorder; ++N) {
        Rat acc(0);
        for (long i = 1; i <= N; ++i) {
            if (N % i) continue;
            int kj = kronecker(delta, N / i);
            if (!kj) continue;
            acc += Rat(i * kj) * cplus(make_rat(-delta * i * i, 4 * m), r * i);
        }
        f.set(N, sq * acc);
    }
    BorcherdsProduct psi = product_series(m, delta, r, qorder + 1, cplus);
    QuadSeries alt = psi.series.theta_op() * psi.series.inverse();
    alt.truncate(qorder + 1);
    if (!(f == alt)) throw std::logic_error("log derivative routes disagree");
    return f;
}

/// Denominator root gamma_1 of Psi = (T - gamma_2)^2 / (T - gamma_1)^2 for
/// the eight tabulated class-number-1 cases; gamma_2 is its conjugate.
inline QuadElem example_gamma1(long m) {
    switch (m) {
        case 2: return QuadElem(-7, make_rat(1, 2), make_rat(45, 2));
        case 3: return QuadElem(-11, Rat(17), Rat(8));
        case 4: return QuadElem(-7, make_rat(-15, 2), make_rat(3, 2));
        case 5: return QuadElem(-11, Rat(-3), Rat(2));
        case 7: return QuadElem(-19, make_rat(3, 2), make_rat(3, 2));
        case 9: return QuadElem(-11, Rat(-1), Rat(1));
        case 13: return QuadElem(-43, make_rat(7, 2), make_rat(1, 2));
        // (1 + sqrt(-19))/2: the algebraic integer the hauptmodul actually
        // takes (confirmed to 1e-14); sqrt(-19)/2 alone is not in the ring
        // of integers of Q(sqrt(-19))
        case 25: return QuadElem(-19, make_rat(1, 2), make_rat(1, 2));
        default: throw std::invalid_argument("no tabulated singular moduli for this m");
    }
}

/// The (delta, r) pair each table row uses.
inline std::pair<long, long> example_pair(long m) {
    switch (m) {
        case 2: return {-7, 1};
        case 3: return {-11, 1};
        case 4: return {-7, 3};
        case 5: return {-11, 3};
        case 7: return {-19, 3};
        case 9: return {-11, 5};
        case 13: return {-43, 3};
        case 25: return {-19, 9};
        default: throw std::invalid_argument("no tabulated example for this m");
    }
}

struct MatchReport {
    long m = 0, delta = 0, r = 0;
    bool ok = false;
    long first_diff = -1;  // scaled exponent of first mismatch, -1 when ok
    QuadElem gamma1, gamma2;
};

/// Verify Psi = prod_i (T_g - T_g(alpha_i))^{g_i} coefficientwise, with the
/// exponent g_i equal to the twisted-divisor multiplicity.  Singular moduli
/// are matched to the exact tabulated values numerically before the exact
/// comparison.
inline MatchReport rational_match(long m, long delta, long r, long qorder, const CoeffFn& cplus) {
    MatchReport rep{m, delta, r, false, -1, example_gamma1(m), example_gamma1(m).conj()};
    TwistedDivisor dv = divisor(m, delta, r);
    QuadSeries T = embed_quad(hauptmodul_series(m, qorder + 2).series);
    QuadSeries R = QuadSeries::one(qorder + 2);
    for (const auto& [pt, mult] : dv.entries) {
        std::complex<double> tv = hauptmodul_eval(m, pt.numeric());
        double d1 = std::abs(tv - rep.gamma1.to_complex());
        double d2 = std::abs(tv - rep.gamma2.to_complex());
        if (std::min(d1, d2) > 1e-6)
            throw std::runtime_error("singular modulus does not snap to a tabulated value");
        QuadSeries fac = T;
        fac.add_to(0, -(d1 < d2 ? rep.gamma1 : rep.gamma2));
        R = R * fac.pow_int(mult);
    }
    BorcherdsProduct psi = product_series(m, delta, r, qorder, cplus);
    long cmp = std::min({R.trunc(), psi.series.trunc(), qorder + 1});
    rep.ok = true;
    for (long e = psi.series.min_exp() < 0 ? psi.series.min_exp() : 0; e < cmp; ++e) {
        if (R.coeff_scaled(e) != psi.series.coeff_scaled(e)) {
            rep.ok = false;
            rep.first_diff = e;
            break;
        }
    }
    return rep;
}

/// (1/eps) sum_i g_i T_g(alpha_i), snapped to the nearest integer.
inline Rat twisted_trace(long m, long delta, long r) {
    TwistedDivisor dv = divisor(m, delta, r);
    std::complex<double> acc = 0.0;
    for (const auto& [pt, mult] : dv.entries)
        acc += double(mult) * hauptmodul_eval(m, pt.numeric());
    acc /= epsilon(delta).value.to_complex();
    long n = std::lround(acc.real());
    if (std::abs(acc - std::complex<double>(double(n), 0.0)) > 1e-6)
        throw std::runtime_error("trace snap residual exceeded");
    return Rat(n);
}

/// Monic integer polynomial with the given full conjugate set of roots;
/// coefficients returned highest degree first.
inline std::vector<Int> minimal_poly(const std::vector<std::complex<double>>& values) {
    std::vector<std::complex<double>> p{1.0};
    for (const auto& v : values) {
        std::vector<std::complex<double>> q(p.size() + 1, 0.0);
        for (size_t i = 0; i < p.size(); ++i) {
            q[i] += p[i];
            q[i + 1] -= v * p[i];
        }
        p = std::move(q);
    }
    std::vector<Int> out;
    for (const auto& c : p) {
        double n = std::round(c.real());
        if (std::abs(c - std::complex<double>(n, 0.0)) > 1e-4)
            throw std::runtime_error("not an algebraic-integer set at this precision");
        out.emplace_back(long(n));
    }
    return out;
}

/// Weight-2 covariance residual for gamma = [[1,0],[m,1]]: the series side
/// (cτ+d)^2 f(τ) at high Im τ against an independent evaluation of
/// Theta(Psi)/Psi at γτ through the rational-function form of Psi.  The
/// q-series itself diverges below the highest Heegner point, so the γτ side
/// cannot be summed termwise.
inline double covariance_residual(long m, long delta, long r, long qorder, const CoeffFn& cplus) {
    QuadSeries f = log_derivative(m, delta, r, qorder, cplus);
    QuadElem g1 = example_gamma1(m), g2 = g1.conj();
    auto psi_num = [&](std::complex<double> z) {
        std::complex<double> t = hauptmodul_eval(m, ComplexPoint(z.real(), z.imag()));
        std::complex<double> ratio = (t - g2.to_complex()) / (t - g1.to_complex());
        return ratio * ratio;
    };
    std::complex<double> tau(0.13, 1.7);
    std::complex<double> j = double(m) * tau + 1.0;
    std::complex<double> gt = tau / j;
    std::complex<double> rhs = 0.0;
    const std::complex<double> i2pi(0.0, 2 * M_PI);
    for (const auto& [e, c] : f.terms()) rhs += c.to_complex() * std::exp(i2pi * tau * double(e));
    rhs *= j * j;
    double h = 1e-6;
    std::complex<double> dpsi = (psi_num(gt + h) - psi_num(gt - h)) / (2.0 * h);
    std::complex<double> lhs = dpsi / (psi_num(gt) * i2pi);
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace moonshine
