#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "moonshine/quadelem.hpp"
#include "moonshine/rat.hpp"

namespace moonshine {

namespace detail {
inline Rat coeff_inverse(const Rat& c) {
    if (c == 0) throw std::domain_error("inversion of zero coefficient");
    return Rat(1) / c;
}
inline QuadElem coeff_inverse(const QuadElem& c) { return c.inverse(); }
inline bool coeff_zero(const Rat& c) { return c == 0; }
inline bool coeff_zero(const QuadElem& c) { return c.is_zero(); }
}  // namespace detail

/// Truncated one-variable series  sum_e  c_e q^(e/den)  with exact
/// coefficients.  Exponents are stored scaled by `den`.  `trunc` is a
/// guarantee, not a storage artifact: every stored exponent is < trunc and
/// all absent exponents < trunc are exactly zero.  Each operation computes
/// the tightest trunc to which its output is exact.
template <class C>
class FracSeries {
public:
    static constexpr long kMaxTrunc = std::numeric_limits<long>::max() / 8;

    FracSeries() : den_(1), trunc_(0) {}
    FracSeries(long den, long trunc) : den_(den), trunc_(std::min(trunc, kMaxTrunc)) {
        if (den <= 0) throw std::invalid_argument("den must be positive");
    }

    static FracSeries monomial(long den, long trunc, long e, C c) {
        FracSeries s(den, trunc);
        s.set(e, std::move(c));
        return s;
    }
    static FracSeries one(long trunc) { return monomial(1, trunc, 0, C(1)); }

    long den() const { return den_; }
    long trunc() const { return trunc_; }
    const std::map<long, C>& terms() const { return c_; }
    bool known_zero() const { return c_.empty(); }

    /// Scaled exponent of the lowest stored term; trunc when none are stored.
    long min_exp() const { return c_.empty() ? trunc_ : c_.begin()->first; }

    void set(long e, C c) {
        if (e >= trunc_) return;
        if (detail::coeff_zero(c)) c_.erase(e);
        else c_[e] = std::move(c);
    }
    void add_to(long e, const C& c) {
        if (e >= trunc_ || detail::coeff_zero(c)) return;
        auto it = c_.find(e);
        if (it == c_.end()) c_.emplace(e, c);
        else {
            it->second += c;
            if (detail::coeff_zero(it->second)) c_.erase(it);
        }
    }

    /// Coefficient at scaled exponent e; throws past the guarantee.
    C coeff_scaled(long e) const {
        if (e >= trunc_) throw std::out_of_range("insufficient precision");
        auto it = c_.find(e);
        return it == c_.end() ? C(0) : it->second;
    }

    /// Coefficient at rational exponent; zero off the stored lattice.
    C coeff(const Rat& expo) const {
        Rat scaled = expo * den_;
        if (!is_integer(scaled)) {
            if (expo * den_ >= trunc_) throw std::out_of_range("insufficient precision");
            return C(0);
        }
        long e = scaled.get_num().get_si();
        return coeff_scaled(e);
    }

    /// Re-express over a denominator that is a multiple of den().
    FracSeries rescaled(long newden) const {
        if (newden == den_) return *this;
        if (newden <= 0 || newden % den_ != 0)
            throw std::invalid_argument("rescale: new denominator not a multiple");
        long f = newden / den_;
        FracSeries r(newden, sat_mul(trunc_, f));
        for (const auto& [e, c] : c_) r.c_[e * f] = c;
        return r;
    }

    /// Substitute q -> q^f (exponents scale, denominator stays).
    FracSeries dilated(long f) const {
        if (f <= 0) throw std::invalid_argument("dilation factor must be positive");
        FracSeries r(den_, sat_mul(trunc_, f));
        for (const auto& [e, c] : c_) r.c_[e * f] = c;
        return r;
    }

    void truncate(long newtrunc) {
        trunc_ = std::min(trunc_, newtrunc);
        c_.erase(c_.lower_bound(trunc_), c_.end());
    }

    FracSeries operator-() const {
        FracSeries r(den_, trunc_);
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }

    friend FracSeries operator+(const FracSeries& a, const FracSeries& b) {
        long d = lcm_long(a.den_, b.den_);
        FracSeries ra = a.rescaled(d), rb = b.rescaled(d);
        FracSeries r(d, std::min(ra.trunc_, rb.trunc_));
        r.c_ = std::move(ra.c_);
        r.truncate(r.trunc_);
        for (const auto& [e, c] : rb.c_) r.add_to(e, c);
        return r;
    }
    friend FracSeries operator-(const FracSeries& a, const FracSeries& b) { return a + (-b); }

    friend FracSeries operator*(const FracSeries& a, const FracSeries& b) {
        long d = lcm_long(a.den_, b.den_);
        FracSeries ra = a.rescaled(d), rb = b.rescaled(d);
        long t = std::min(sat_add(ra.trunc_, rb.min_exp()), sat_add(rb.trunc_, ra.min_exp()));
        FracSeries r(d, t);
        for (const auto& [ea, ca] : ra.c_) {
            for (const auto& [eb, cb] : rb.c_) {
                long e = ea + eb;
                if (e >= t) break;
                r.add_to(e, ca * cb);
            }
        }
        return r;
    }

    friend FracSeries operator*(const FracSeries& a, const C& s) {
        FracSeries r(a.den_, a.trunc_);
        if (detail::coeff_zero(s)) return r;
        for (const auto& [e, c] : a.c_) r.set(e, c * s);
        return r;
    }
    friend FracSeries operator*(const C& s, const FracSeries& a) { return a * s; }

    /// Multiply by the monomial q^(e/den()).
    FracSeries shifted(long e) const {
        FracSeries r(den_, sat_add(trunc_, e));
        for (const auto& [ee, c] : c_) r.c_[ee + e] = c;
        return r;
    }

    /// Series inverse; requires a nonzero leading term.
    FracSeries inverse() const {
        if (c_.empty()) throw std::domain_error("inversion of series with zero leading coefficient");
        long e0 = c_.begin()->first;
        const C& c0 = c_.begin()->second;
        C c0inv = detail::coeff_inverse(c0);
        long ut = trunc_ - e0;  // unit part exact below ut
        FracSeries v(den_, ut);
        v.c_[0] = C(1);
        // (1+u) v = 1  =>  v_e = -sum_{k>0} u_k v_{e-k}, u_k = c_{k+e0}/c0
        for (long e = 1; e < ut; ++e) {
            C acc(0);
            for (auto it = c_.upper_bound(e0); it != c_.end(); ++it) {
                long k = it->first - e0;
                if (k > e) break;
                auto vit = v.c_.find(e - k);
                if (vit != v.c_.end()) acc += (it->second * c0inv) * vit->second;
            }
            if (!detail::coeff_zero(acc)) v.c_[e] = -acc;
        }
        FracSeries r(den_, ut - e0);
        for (const auto& [e, c] : v.c_) {
            if (e - e0 < r.trunc_) r.c_[e - e0] = c * c0inv;
        }
        return r;
    }

    /// Integer power; negative exponents via leading-monomial factoring.
    FracSeries pow_int(long k) const {
        if (k < 0) return inverse().pow_int(-k);
        FracSeries r = one(trunc_);
        r = r.rescaled(den_);
        // powers only shrink the guarantee through min_exp bookkeeping in mul
        FracSeries base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    /// Formal exponential; requires constant term 0 and no exponents <= 0.
    FracSeries exp_series() const {
        if (!c_.empty() && c_.begin()->first <= 0)
            throw std::domain_error("exp requires positive exponents only");
        FracSeries g(den_, trunc_);
        if (trunc_ <= 0) return g;
        g.c_[0] = C(1);
        // e*g_e = sum_k k f_k g_{e-k}
        for (long e = 1; e < trunc_; ++e) {
            C acc(0);
            for (const auto& [k, fk] : c_) {
                if (k > e) break;
                auto git = g.c_.find(e - k);
                if (git != g.c_.end()) acc += (fk * Rat(k)) * git->second;
            }
            acc = acc * Rat(1, e);
            if (!detail::coeff_zero(acc)) g.c_[e] = acc;
        }
        return g;
    }

    /// Formal logarithm; requires constant term 1.
    FracSeries log_series() const {
        if (coeff_scaled_safe(0) != C(1) || min_exp() < 0)
            throw std::domain_error("log requires constant term 1");
        // log f = integral of (theta f)/f  in the theta = q d/dq sense
        FracSeries h = theta_op() * inverse();
        FracSeries r(den_, h.trunc_);
        for (const auto& [e, c] : h.c_) {
            if (e == 0) {
                if (!detail::coeff_zero(c)) throw std::logic_error("log: unexpected constant term");
                continue;
            }
            Rat f(den_, e);
            f.canonicalize();
            r.set(e, c * f);
        }
        return r;
    }

    /// theta = q d/dq: multiplies the q^(e/den) coefficient by e/den.
    FracSeries theta_op() const {
        FracSeries r(den_, trunc_);
        for (const auto& [e, c] : c_) {
            Rat f(e, den_);
            f.canonicalize();
            r.set(e, c * f);
        }
        return r;
    }

    /// Apply a map to coefficients (e.g. embed Rat into QuadElem).
    template <class D, class F>
    FracSeries<D> map_coeffs(F&& f) const {
        FracSeries<D> r(den_, trunc_);
        for (const auto& [e, c] : c_) r.set(e, f(c));
        return r;
    }

    friend bool operator==(const FracSeries& a, const FracSeries& b) {
        long d = lcm_long(a.den_, b.den_);
        FracSeries ra = a.rescaled(d), rb = b.rescaled(d);
        long t = std::min(ra.trunc_, rb.trunc_);
        ra.truncate(t);
        rb.truncate(t);
        return ra.c_ == rb.c_;
    }

private:
    C coeff_scaled_safe(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? C(0) : it->second;
    }
    static long sat_add(long a, long b) {
        if (a >= kMaxTrunc || b >= kMaxTrunc) return kMaxTrunc;
        return std::min(a + b, kMaxTrunc);
    }
    static long sat_mul(long a, long f) {
        if (a >= kMaxTrunc / f) return kMaxTrunc;
        return a * f;
    }

    long den_;
    long trunc_;
    std::map<long, C> c_;

    template <class D>
    friend class FracSeries;
};

using RatSeries = FracSeries<Rat>;
using QuadSeries = FracSeries<QuadElem>;

inline QuadSeries embed_quad(const RatSeries& s) {
    return s.template map_coeffs<QuadElem>([](const Rat& c) { return QuadElem(c); });
}

}  // namespace moonshine
