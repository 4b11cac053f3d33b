#pragma once

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>

#include "moonshine/numtheory.hpp"
#include "moonshine/rat.hpp"

namespace moonshine {

/// Exact element u + v*sqrt(delta) of an imaginary quadratic field, with
/// sqrt(delta) = i*sqrt(|delta|) (principal branch). delta == 0 marks a
/// plain rational (v is then zero), which embeds into any field.
class QuadElem {
public:
    QuadElem() : delta_(0) {}
    QuadElem(long n) : delta_(0), u_(n) {}
    QuadElem(const Rat& u) : delta_(0), u_(u) {}
    QuadElem(long delta, Rat u, Rat v) : delta_(delta), u_(std::move(u)), v_(std::move(v)) {
        normalize();
    }

    static QuadElem sqrt_delta(long delta) { return QuadElem(delta, Rat(0), Rat(1)); }

    long delta() const { return delta_; }
    const Rat& u() const { return u_; }
    const Rat& v() const { return v_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_rational() const { return v_ == 0; }

    QuadElem conj() const { return QuadElem(delta_, u_, -v_); }

    /// u^2 - delta v^2; nonnegative for delta < 0, zero iff the element is.
    Rat norm() const { return u_ * u_ - Rat(delta_) * v_ * v_; }

    QuadElem operator-() const { return QuadElem(delta_, -u_, -v_); }

    friend QuadElem operator+(const QuadElem& a, const QuadElem& b) {
        return QuadElem(merge_delta(a.delta_, b.delta_), a.u_ + b.u_, a.v_ + b.v_);
    }
    friend QuadElem operator-(const QuadElem& a, const QuadElem& b) {
        return QuadElem(merge_delta(a.delta_, b.delta_), a.u_ - b.u_, a.v_ - b.v_);
    }
    friend QuadElem operator*(const QuadElem& a, const QuadElem& b) {
        long d = merge_delta(a.delta_, b.delta_);
        return QuadElem(d, a.u_ * b.u_ + Rat(d) * a.v_ * b.v_, a.u_ * b.v_ + a.v_ * b.u_);
    }
    friend QuadElem operator*(const QuadElem& a, const Rat& s) {
        return QuadElem(a.delta_, a.u_ * s, a.v_ * s);
    }
    friend QuadElem operator*(const Rat& s, const QuadElem& a) { return a * s; }

    QuadElem inverse() const {
        Rat n = norm();
        if (n == 0) throw std::domain_error("division by zero in quadratic field");
        return QuadElem(delta_, u_ / n, -v_ / n);
    }
    friend QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inverse(); }

    QuadElem& operator+=(const QuadElem& b) { return *this = *this + b; }
    QuadElem& operator-=(const QuadElem& b) { return *this = *this - b; }
    QuadElem& operator*=(const QuadElem& b) { return *this = *this * b; }

    friend bool operator==(const QuadElem& a, const QuadElem& b) {
        if (a.u_ != b.u_ || a.v_ != b.v_) return false;
        return a.v_ == 0 || a.delta_ == b.delta_;
    }
    friend bool operator!=(const QuadElem& a, const QuadElem& b) { return !(a == b); }

    std::complex<double> to_complex() const {
        double im = (delta_ < 0) ? to_double(v_) * std::sqrt(double(-delta_)) : 0.0;
        return {to_double(u_), im};
    }

    std::string str() const {
        if (v_ == 0) return rat_str(u_);
        std::string s = rat_str(u_);
        s += (v_ > 0 ? " + " : " - ");
        Rat av = v_ > 0 ? v_ : Rat(-v_);
        if (av != 1) s += rat_str(av) + "*";
        s += "sqrt(" + std::to_string(delta_) + ")";
        return s;
    }

private:
    void normalize() {
        if (v_ == 0) {
            delta_ = 0;
        } else if (delta_ >= 0 || !is_fundamental_discriminant(delta_)) {
            throw std::invalid_argument("QuadElem: discriminant must be a negative fundamental discriminant");
        }
    }

    static long merge_delta(long a, long b) {
        if (a == 0) return b;
        if (b == 0) return a;
        if (a != b) throw std::invalid_argument("incompatible quadratic fields");
        return a;
    }

    long delta_;
    Rat u_, v_;
};

}  // namespace moonshine
