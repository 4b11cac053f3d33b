#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "moonshine/appell.hpp"
#include "moonshine/theta_eta.hpp"
#include "moonshine/weak_jacobi.hpp"

namespace moonshine {

inline bool is_pure_a_type(long m) {
    switch (m) {
        case 2: case 3: case 4: case 5: case 7: case 9: case 13: case 25: return true;
        default: return false;
    }
}

inline long multiplier_cm(long m) {
    if (!is_pure_a_type(m)) throw std::invalid_argument("not a pure A-type lambency");
    return (m == 9 || m == 25) ? 1 : 2;
}

/// psi^(m) = c_m phi_1^(m) mu_{1,0}, exact on q-order x y-width window.
inline JacobiSeries psi(long m, long qorder, long ywidth) {
    Phi1Builder b(qorder);
    const JacobiSeries& phi = b.phi1(m);
    AppellExpansion mu = mu_expansion(1, qorder, ywidth + phi.ysupport());
    JacobiSeries p = Rat(multiplier_cm(m)) * (phi * mu.series);
    p.clip_width(ywidth);
    return p;
}

/// Finite part of psi^(m): the polar piece (24/(m-1)) mu_{m,0} cancels the
/// poles, and the overall orientation is fixed so the principal part reads
/// -2q^{-1/4m} on the h = 1 component.  Holomorphy forces coefficients to
/// vanish below the allowance 4mk - n^2 >= -1.
inline JacobiSeries finite_part(long m, long qorder, long ywidth) {
    JacobiSeries p = psi(m, qorder, ywidth);
    AppellExpansion mum = mu_expansion(m, qorder, ywidth);
    JacobiSeries f = make_rat(24, m - 1) * mum.series - p;
    for (const auto& [n, l] : f.lines())
        for (const auto& [k, c] : l.terms())
            if (4 * m * k - n * n < -1)
                throw std::runtime_error("expansion-region inconsistency");
    return f;
}

/// The 2m mock modular components H_h^(m), each a FracSeries over den 4m.
struct UmbralForm {
    long m = 0;
    std::vector<RatSeries> components;  // indexed h = 0..2m-1
    long qorder = 0;

    /// c^+(n, h): coefficient of q^n in H_h; zero off the support lattice.
    Rat cplus(const Rat& n, long h) const {
        long hh = ((h % (2 * m)) + 2 * m) % (2 * m);
        return components[hh].coeff(n);
    }
};

/// Theta-decompose psi_F: the (q^k, y^n) coefficient equals
/// c^+(k - n^2/4m, n mod 2m).  Every pair (k, n) in the window with equal
/// (4mk - n^2, n mod 2m) must agree; disagreement signals an expansion bug.
inline UmbralForm extract_H(long m, long qorder) {
    long qw = qorder + m / 4 + 2;
    long yw = 1;
    while (yw * yw < 4 * m * qw + 1) ++yw;
    JacobiSeries f = finite_part(m, qw, yw);

    std::map<std::pair<long, long>, Rat> cls;
    for (long n = -yw; n <= yw; ++n) {
        RatSeries l = f.line(n);
        for (long k = 0; k < qw; ++k) {
            Rat v = l.coeff_scaled(k);
            auto key = std::make_pair(4 * m * k - n * n, ((n % (2 * m)) + 2 * m) % (2 * m));
            auto [it, fresh] = cls.emplace(key, v);
            if (!fresh && it->second != v)
                throw std::runtime_error("theta decomposition inconsistent at (" +
                                         std::to_string(k) + "," + std::to_string(n) + ")");
        }
    }

    UmbralForm u{m, {}, qorder};
    for (long h = 0; h < 2 * m; ++h) {
        long n0 = (h <= m) ? h : h - 2 * m;
        RatSeries s(4 * m, 4 * m * qorder);
        for (long k = 0; k < qw; ++k) {
            long e = 4 * m * k - n0 * n0;
            if (e >= 4 * m * qorder) break;
            auto it = cls.find({e, h});
            if (it == cls.end()) throw std::logic_error("theta decomposition window too small");
            s.set(e, it->second);
        }
        u.components.push_back(std::move(s));
    }
    return u;
}

/// S_h^(m) = sum_{n = h (2m)} n q^{n^2/4m}, over den 4m.
inline RatSeries shadow(long m, long h, long qorder) {
    long hh = ((h % (2 * m)) + 2 * m) % (2 * m);
    long qt = 4 * m * qorder;
    RatSeries s(4 * m, qt);
    long bound = 0;
    while (bound * bound < qt) ++bound;
    for (long n = -bound; n <= bound; ++n) {
        if (((n - hh) % (2 * m) + 2 * m) % (2 * m) != 0) continue;
        if (n * n < qt) s.add_to(n * n, Rat(n));
    }
    return s;
}

struct WeilMatrices {
    long m = 0;
    std::vector<std::vector<std::complex<double>>> T_mat, S_mat;
};

inline std::complex<double> unit_e(double x) {
    return {std::cos(2 * M_PI * x), std::sin(2 * M_PI * x)};
}

/// Generator matrices of the Weil representation attached to the rank-1
/// lattice of determinant 2m: rho(T) diagonal with e(h^2/4m), and
/// rho(S)[h][h'] = e(-1/8)/sqrt(2m) e(hh'/2m).
inline WeilMatrices weil_matrices(long m) {
    long d = 2 * m;
    WeilMatrices w{m,
                   std::vector<std::vector<std::complex<double>>>(d, std::vector<std::complex<double>>(d)),
                   std::vector<std::vector<std::complex<double>>>(d, std::vector<std::complex<double>>(d))};
    for (long h = 0; h < d; ++h)
        for (long k = 0; k < d; ++k) {
            w.T_mat[h][k] = (h == k) ? unit_e(double(h * h) / double(4 * m)) : 0.0;
            w.S_mat[h][k] = unit_e(-0.125) / std::sqrt(double(d)) *
                            unit_e(double(h * k) / double(d));
        }
    return w;
}

/// Numeric S_h^(m)(tau) by direct summation, terms below 1e-18 dropped.
inline std::complex<double> shadow_eval(long m, long h, std::complex<double> tau) {
    std::complex<double> acc = 0.0;
    const std::complex<double> i2pi(0.0, 2 * M_PI);
    for (long a = 0;; ++a) {
        bool alive = false;
        for (long n : {h + 2 * m * a, h - 2 * m * (a + 1)}) {
            std::complex<double> term =
                double(n) * std::exp(i2pi * tau * (double(n) * double(n) / double(4 * m)));
            acc += term;
            if (std::abs(term) >= 1e-18) alive = true;
        }
        if (!alive && a > 2) break;
    }
    return acc;
}

/// max_h | S_h(-1/tau) - tau^{3/2} (rho(S) S(tau))_h |.  The square root in
/// tau^{3/2} is taken in the second quadrant (arg tau^{1/2} in [pi/4, pi/2]
/// shifted by pi); the first-quadrant branch negates the right-hand side.
inline double shadow_transform_check(long m, const ComplexPoint& tau) {
    std::complex<double> t = tau.value();
    std::complex<double> minus_inv = -1.0 / t;
    WeilMatrices w = weil_matrices(m);
    std::vector<std::complex<double>> s(2 * m);
    for (long h = 0; h < 2 * m; ++h) s[h] = shadow_eval(m, h, t);
    std::complex<double> fac = -std::pow(t, 1.5);
    double worst = 0.0;
    for (long h = 0; h < 2 * m; ++h) {
        std::complex<double> rhs = 0.0;
        for (long k = 0; k < 2 * m; ++k) rhs += w.S_mat[h][k] * s[k];
        double r = std::abs(shadow_eval(m, h, minus_inv) - fac * rhs);
        worst = std::max(worst, r);
    }
    return worst;
}

/// Deep coefficient stream for m = 2: with H^(2) = 2q^{-1/8}(-1 + 45q + ...)
/// = q^{-1/8} sum_n A(n) q^n, the product H^(2) eta^3 equals 48 F_2 - 2 E_2,
/// so A is obtained by dividing that weight-2 form by the eta^3 unit.
inline std::vector<Int> mathieu_a_series(long nmax) {
    long N = nmax + 1;
    // B = 48 F_2 - 2 E_2 on the integer grid; E_2 = 1 - 24 sum sigma_1(n) q^n
    std::vector<Int> B(N, 0);
    B[0] = -2;
    for (long n = 1; n < N; ++n) {
        long sig = 0;
        for (long d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sig += d;
            if (d != n / d) sig += n / d;
        }
        B[n] = 48 * sig;
    }
    // F_2 = sum_{r > s > 0, r - s odd} (-1)^r s q^{rs/2}
    for (long s = 1;; ++s) {
        long r = s + 1;
        if (r * s / 2 >= N) break;
        for (; r * s / 2 < N; r += 2) B[r * s / 2] += (r % 2 ? -48 : 48) * Int(s);
    }
    // divide by the eta^3 unit sum_j (-1)^j (2j+1) q^{j(j+1)/2}
    std::vector<std::pair<long, long>> unit;  // (exponent, coefficient), skipping j = 0
    for (long j = 1; j * (j + 1) / 2 < N; ++j)
        unit.emplace_back(j * (j + 1) / 2, (j % 2 ? -1 : 1) * (2 * j + 1));
    std::vector<Int> A(N);
    for (long n = 0; n < N; ++n) {
        Int acc = B[n];
        for (const auto& [e, c] : unit) {
            if (e > n) break;
            acc -= c * A[n - e];
        }
        A[n] = acc;
    }
    return A;
}

/// c^+(n, h) accessor over the m = 2 stream: H_1 = q^{-1/8} sum A(k) q^k,
/// H_3 = -H_1, H_0 = H_2 = 0.
struct MathieuStream {
    std::vector<Int> a;
    explicit MathieuStream(long nmax) : a(mathieu_a_series(nmax)) {}

    Rat cplus(const Rat& n, long h) const {
        long hh = ((h % 4) + 4) % 4;
        if (hh == 0 || hh == 2) return Rat(0);
        Rat k = n + make_rat(1, 8);
        if (!is_integer(k)) return Rat(0);
        long idx = k.get_num().get_si();
        if (idx < 0) return Rat(0);
        if (idx >= long(a.size())) throw std::out_of_range("insufficient precision");
        Rat v(a[idx]);
        return (hh == 1) ? v : -v;
    }
};

}  // namespace moonshine
