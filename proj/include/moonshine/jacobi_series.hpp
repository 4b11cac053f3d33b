#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>

#include "moonshine/series.hpp"

namespace moonshine {

/// Two-variable series  sum_n  L_n(q) y^(n/yden), each line L_n a FracSeries
/// in q.  `ywidth` is the guarantee analogue of FracSeries::trunc: lines with
/// |n| <= ywidth are exact and an absent line is exactly zero.  Forms with
/// finitely many nonzero lines per q-order can instead be marked
/// full_support, meaning every stored line set is complete at every width.
class JacobiSeries {
public:
    static constexpr long kMaxWidth = FracSeries<Rat>::kMaxTrunc;

    JacobiSeries() : qden_(1), yden_(1), qtrunc_(0), ywidth_(0), full_(false) {}
    JacobiSeries(long qden, long yden, long qtrunc, long ywidth, bool full_support = false)
        : qden_(qden), yden_(yden), qtrunc_(std::min(qtrunc, RatSeries::kMaxTrunc)),
          ywidth_(std::min(ywidth, kMaxWidth)), full_(full_support) {
        if (qden <= 0 || yden <= 0) throw std::invalid_argument("denominators must be positive");
    }

    long qden() const { return qden_; }
    long yden() const { return yden_; }
    long qtrunc() const { return qtrunc_; }
    long ywidth() const { return full_ ? kMaxWidth : ywidth_; }
    bool full_support() const { return full_; }
    const std::map<long, RatSeries>& lines() const { return lines_; }

    void set_line(long n, RatSeries s) {
        if (!full_ && std::abs(n) > ywidth_) return;
        if (qden_ % s.den() != 0) throw std::invalid_argument("line denominator mismatch");
        s = s.rescaled(qden_);
        if (s.trunc() < qtrunc_) throw std::invalid_argument("line truncation below series guarantee");
        s.truncate(qtrunc_);
        if (s.known_zero()) lines_.erase(n);
        else lines_[n] = std::move(s);
    }

    void add_term(long qe, long yn, const Rat& c) {
        if (!full_ && std::abs(yn) > ywidth_) return;
        auto it = lines_.find(yn);
        if (it == lines_.end()) {
            RatSeries s(qden_, qtrunc_);
            s.add_to(qe, c);
            if (!s.known_zero()) lines_.emplace(yn, std::move(s));
        } else {
            it->second.add_to(qe, c);
            if (it->second.known_zero()) lines_.erase(it);
        }
    }

    /// Line at scaled y-exponent n, clipped to the common guarantee.
    RatSeries line(long n) const {
        if (!full_ && std::abs(n) > ywidth_) throw std::out_of_range("line beyond y-width guarantee");
        auto it = lines_.find(n);
        if (it != lines_.end()) return it->second;
        return RatSeries(qden_, qtrunc_);
    }

    Rat coeff(long qe, long yn) const { return line(yn).coeff_scaled(qe); }

    /// Largest |n| with a nonzero stored line.
    long ysupport() const {
        long s = 0;
        for (const auto& [n, l] : lines_)
            if (!l.known_zero()) s = std::max(s, std::abs(n));
        return s;
    }

    long qmin_exp() const {
        long m = qtrunc_;
        for (const auto& [n, l] : lines_) m = std::min(m, l.min_exp());
        return m;
    }

    JacobiSeries rescaled(long nqden, long nyden) const {
        if (nqden % qden_ != 0 || nyden % yden_ != 0)
            throw std::invalid_argument("rescale: denominators not multiples");
        long fy = nyden / yden_;
        JacobiSeries r(nqden, nyden, sat_mul(qtrunc_, nqden / qden_),
                       full_ ? kMaxWidth : sat_mul(ywidth_, fy), full_);
        for (const auto& [n, l] : lines_) r.lines_[n * fy] = l.rescaled(nqden);
        return r;
    }

    void truncate_q(long t) {
        qtrunc_ = std::min(qtrunc_, t);
        for (auto it = lines_.begin(); it != lines_.end();) {
            it->second.truncate(qtrunc_);
            it = it->second.known_zero() ? lines_.erase(it) : std::next(it);
        }
    }

    void clip_width(long w) {
        if (full_) return;
        ywidth_ = std::min(ywidth_, w);
        for (auto it = lines_.begin(); it != lines_.end();)
            it = (std::abs(it->first) > ywidth_) ? lines_.erase(it) : std::next(it);
    }

    JacobiSeries operator-() const {
        JacobiSeries r = *this;
        for (auto& [n, l] : r.lines_) l = -l;
        return r;
    }

    friend JacobiSeries operator+(const JacobiSeries& a, const JacobiSeries& b) {
        long qd = lcm_long(a.qden_, b.qden_), yd = lcm_long(a.yden_, b.yden_);
        JacobiSeries ra = a.rescaled(qd, yd), rb = b.rescaled(qd, yd);
        bool full = ra.full_ && rb.full_;
        JacobiSeries r(qd, yd, std::min(ra.qtrunc_, rb.qtrunc_),
                       full ? kMaxWidth : std::min(ra.ywidth(), rb.ywidth()), full);
        r.lines_ = std::move(ra.lines_);
        r.truncate_q(r.qtrunc_);
        r.clip_width(r.ywidth_);
        for (const auto& [n, l] : rb.lines_) {
            if (!full && std::abs(n) > r.ywidth_) continue;
            RatSeries sum = r.line(n) + l;
            sum.truncate(r.qtrunc_);
            if (sum.known_zero()) r.lines_.erase(n);
            else r.lines_[n] = std::move(sum);
        }
        return r;
    }
    friend JacobiSeries operator-(const JacobiSeries& a, const JacobiSeries& b) { return a + (-b); }

    friend JacobiSeries operator*(const JacobiSeries& a, const JacobiSeries& b) {
        long qd = lcm_long(a.qden_, b.qden_), yd = lcm_long(a.yden_, b.yden_);
        JacobiSeries ra = a.rescaled(qd, yd), rb = b.rescaled(qd, yd);
        bool full = ra.full_ && rb.full_;
        long w = full ? kMaxWidth
                      : std::min(sat_sub(ra.ywidth(), rb.ysupport()),
                                 sat_sub(rb.ywidth(), ra.ysupport()));
        long t = std::min(sat_add(ra.qtrunc_, rb.qmin_exp()), sat_add(rb.qtrunc_, ra.qmin_exp()));
        JacobiSeries r(qd, yd, t, w, full);
        for (const auto& [na, la] : ra.lines_) {
            for (const auto& [nb, lb] : rb.lines_) {
                long n = na + nb;
                if (!full && std::abs(n) > w) continue;
                RatSeries prod = la * lb;
                prod.truncate(t);
                if (prod.known_zero()) continue;
                auto it = r.lines_.find(n);
                if (it == r.lines_.end()) r.lines_[n] = std::move(prod);
                else {
                    it->second = it->second + prod;
                    if (it->second.known_zero()) r.lines_.erase(it);
                }
            }
        }
        return r;
    }

    friend JacobiSeries operator*(const JacobiSeries& a, const Rat& s) {
        JacobiSeries r = a;
        if (s == 0) { r.lines_.clear(); return r; }
        for (auto& [n, l] : r.lines_) l = l * s;
        return r;
    }
    friend JacobiSeries operator*(const Rat& s, const JacobiSeries& a) { return a * s; }

    /// Multiply every line by a one-variable q-series (width is unaffected).
    JacobiSeries mul_q(const RatSeries& f) const {
        long qd = lcm_long(qden_, f.den());
        JacobiSeries src = rescaled(qd, yden_);
        RatSeries g = f.rescaled(qd);
        JacobiSeries r(qd, yden_, 0, full_ ? kMaxWidth : ywidth_, full_);
        long t = RatSeries::kMaxTrunc;
        for (const auto& [n, l] : src.lines_) {
            RatSeries prod = l * g;
            t = std::min(t, prod.trunc());
            r.lines_[n] = std::move(prod);
        }
        t = std::min(t, sat_add(src.qtrunc_, g.min_exp()));
        r.qtrunc_ = t;
        r.truncate_q(t);
        return r;
    }

    /// Divide every line by a one-variable q-series with unit leading term.
    JacobiSeries div_q(const RatSeries& f) const { return mul_q(f.inverse()); }

    /// Multiply by the monomial q^(qe/qden) y^(yn/yden).
    JacobiSeries shifted(long qe, long yn) const {
        JacobiSeries r(qden_, yden_, sat_add(qtrunc_, qe),
                       full_ ? kMaxWidth : sat_sub(ywidth_, std::abs(yn)), full_);
        for (const auto& [n, l] : lines_) {
            if (!r.full_ && std::abs(n + yn) > r.ywidth_) continue;
            r.lines_[n + yn] = l.shifted(qe);
        }
        return r;
    }

    /// Collapse y -> 1 (sum all lines); the q-series of the z = 0 value.
    RatSeries at_y_one() const {
        if (!full_) throw std::domain_error("at_y_one requires a full-support series");
        RatSeries r(qden_, qtrunc_);
        for (const auto& [n, l] : lines_) r = r + l;
        r.truncate(qtrunc_);
        return r;
    }

    /// Reduce the q-grid when every stored term sits on a coarser lattice.
    JacobiSeries coarsen_qgrid(long newqden) const {
        if (qden_ % newqden != 0) throw std::invalid_argument("coarsen: not a divisor");
        long f = qden_ / newqden;
        JacobiSeries r(newqden, yden_, qtrunc_ / f, full_ ? kMaxWidth : ywidth_, full_);
        for (const auto& [n, l] : lines_) {
            RatSeries nl(newqden, r.qtrunc_);
            for (const auto& [e, c] : l.terms()) {
                if (e % f != 0) throw std::domain_error("coarsen: term off the target lattice");
                nl.set(e / f, c);
            }
            if (!nl.known_zero()) r.lines_[n] = std::move(nl);
        }
        return r;
    }

    /// Reduce the y-grid when every stored line sits on a coarser lattice.
    JacobiSeries coarsen_ygrid(long newyden) const {
        if (yden_ % newyden != 0) throw std::invalid_argument("coarsen: not a divisor");
        long f = yden_ / newyden;
        JacobiSeries r(qden_, newyden, qtrunc_, full_ ? kMaxWidth : ywidth_ / f, full_);
        for (const auto& [n, l] : lines_) {
            if (n % f != 0) throw std::domain_error("coarsen: line off the target lattice");
            r.lines_[n / f] = l;
        }
        return r;
    }

private:
    static long sat_add(long a, long b) {
        if (a >= kMaxWidth || b >= kMaxWidth) return kMaxWidth;
        return std::min(a + b, kMaxWidth);
    }
    static long sat_sub(long a, long b) { return a >= kMaxWidth ? kMaxWidth : a - b; }
    static long sat_mul(long a, long f) {
        if (f != 0 && a >= kMaxWidth / f) return kMaxWidth;
        return a * f;
    }

    long qden_, yden_;
    long qtrunc_;
    long ywidth_;
    bool full_;
    std::map<long, RatSeries> lines_;
};

}  // namespace moonshine
