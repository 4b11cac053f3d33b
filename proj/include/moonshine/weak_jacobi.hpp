#pragma once

#include <map>
#include <stdexcept>

#include "moonshine/jacobi_series.hpp"
#include "moonshine/theta_eta.hpp"

namespace moonshine {

/// phi_1^(m): weight 0, index m-1 weak Jacobi form (m is the lambency).
struct WeakJacobiForm {
    long m = 0;
    JacobiSeries series;  // qden 1, yden 1, full support
    long qorder = 0;
};

/// Memoized builder for the phi_1^(m) tower, 2 <= m <= 25: seven explicit
/// base cases, five gcd-indexed recursions, and the closing m = 25 case.
/// All series are full-support (exact at every y-exponent), so no y-width
/// parameter is needed; wider windows come for free.
class Phi1Builder {
public:
    explicit Phi1Builder(long qorder) : qorder_(qorder) {
        if (qorder < 1) throw std::invalid_argument("qorder must be >= 1");
        long n = qorder + 1;  // margin for the 1/8-exponent loss in f_2
        JacobiSeries f2s = f_squared(2, n);
        JacobiSeries f3s = f_squared(3, n);
        JacobiSeries f4s = f_squared(4, n);
        memo_[2] = trim(Rat(4) * (f2s + f3s + f4s));
        memo_[3] = trim(Rat(2) * (f2s * f3s + f3s * f4s + f4s * f2s));
        memo_[4] = trim(Rat(4) * (f2s * f3s * f4s));
    }

    const JacobiSeries& phi1(long m) {
        if (m < 2 || m > 25) throw std::invalid_argument("lambency out of range [2,25]");
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        JacobiSeries s = build(m);
        return memo_.emplace(m, std::move(s)).first->second;
    }

    WeakJacobiForm form(long m) { return {m, phi1(m), qorder_}; }

    long qorder() const { return qorder_; }

private:
    /// f_i^2 = (theta_i(tau,z)/theta_i(tau,0))^2 on the integer y-grid.
    static JacobiSeries f_squared(int i, long qorder) {
        JacobiSeries t = jacobi_theta(i, qorder);
        JacobiSeries sq = (t * t).div_q(theta_nullwert(i, qorder).pow_int(2));
        if (i == 2) sq = sq.coarsen_ygrid(1);
        return sq;
    }

    JacobiSeries trim(JacobiSeries s) const {
        s.truncate_q(s.qden() * qorder_);
        return s.coarsen_qgrid(1);
    }

    /// phi_1^(a) * phi_1^(b); the factors' indices must add to the target.
    JacobiSeries prod(long a, long b, long target_m) {
        if ((a - 1) + (b - 1) != target_m - 1)
            throw std::logic_error("recursion violates index additivity");
        return phi1(a) * phi1(b);
    }

    JacobiSeries build(long m) {
        long g = gcd_long(12, m - 1);
        switch (m) {
            case 5:
                return make_rat(1, 4) * (prod(4, 2, m) - prod(3, 3, m));
            case 7:
                return prod(3, 5, m) - prod(4, 4, m);
            case 9:
                return prod(3, 7, m) - prod(5, 5, m);
            case 13:
                return prod(5, 9, m) - Rat(2) * prod(7, 7, m);
            case 25:
                return make_rat(1, 2) * prod(21, 5, m) - prod(19, 7, m) +
                       make_rat(1, 2) * prod(13, 13, m);
            default:
                break;
        }
        if (g == 1 && m > 5)
            return Rat(gcd_long(12, m - 5)) * prod(m - 4, 5, m) +
                   Rat(gcd_long(12, m - 3)) * prod(m - 2, 3, m) -
                   Rat(2 * gcd_long(12, m - 4)) * prod(m - 3, 4, m);
        if (g == 2 && m > 10)
            return make_rat(1, 2) * (Rat(gcd_long(12, m - 5)) * prod(m - 4, 5, m) +
                                     Rat(gcd_long(12, m - 3)) * prod(m - 2, 3, m) -
                                     Rat(2 * gcd_long(12, m - 4)) * prod(m - 3, 4, m));
        if (g == 3 && m > 9)
            return make_rat(2 * gcd_long(12, m - 4), 3) * prod(m - 3, 4, m) +
                   make_rat(gcd_long(12, m - 7), 3) * prod(m - 6, 7, m) -
                   Rat(gcd_long(12, m - 5)) * prod(m - 4, 5, m);
        if (g == 4 && m > 16)
            return make_rat(1, 4) * (Rat(gcd_long(12, m - 13)) * prod(m - 12, 13, m) +
                                     Rat(gcd_long(12, m - 5)) * prod(m - 4, 5, m) -
                                     Rat(gcd_long(12, m - 9)) * prod(m - 8, 9, m));
        if (g == 6 && m > 18)
            return make_rat(gcd_long(12, m - 4), 3) * prod(m - 3, 4, m) +
                   make_rat(gcd_long(12, m - 7), 6) * prod(m - 6, 7, m) -
                   make_rat(gcd_long(12, m - 5), 2) * prod(m - 4, 5, m);
        throw std::logic_error("recursion coverage gap at m = " + std::to_string(m));
    }

    long qorder_;
    std::map<long, JacobiSeries> memo_;
};

inline WeakJacobiForm phi1(long m, long qorder) {
    Phi1Builder b(qorder);
    return b.form(m);
}

/// Weak Jacobi cone bound: c(k, n) = 0 when n^2 > 4(m-1)k + (m-1)^2.
inline bool in_weak_jacobi_cone(long m, long k, long n) {
    return n * n <= 4 * (m - 1) * k + (m - 1) * (m - 1);
}

}  // namespace moonshine
