#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "moonshine/numtheory.hpp"
#include "moonshine/quadelem.hpp"
#include "moonshine/theta_eta.hpp"

namespace moonshine {

/// Binary quadratic form a x^2 + b xy + c y^2.
struct BQF {
    long a = 0, b = 0, c = 0;

    long disc() const { return b * b - 4 * a * c; }
    bool primitive() const { return gcd_long(gcd_long(a, b), c) == 1; }
    long eval(long x, long y) const { return a * x * x + b * x * y + c * y * y; }
    BQF operator-() const { return {-a, -b, -c}; }
    friend bool operator==(const BQF& p, const BQF& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
};

/// SL2(Z)-reduction of a definite form; negative-definite forms are reduced
/// through their positive-definite negatives.
inline BQF reduce_form(BQF q) {
    long D = q.disc();
    if (D >= 0) throw std::invalid_argument("form must be definite");
    bool neg = q.a < 0;
    if (neg) q = -q;
    while (true) {
        if (q.b > q.a || q.b <= -q.a) {
            // translate b into (-a, a]
            long b = q.b % (2 * q.a);
            if (b > q.a) b -= 2 * q.a;
            if (b <= -q.a) b += 2 * q.a;
            q.b = b;
            q.c = (q.b * q.b - D) / (4 * q.a);
        }
        if (q.c < q.a) {
            q = {q.c, -q.b, q.a};
            continue;
        }
        break;
    }
    if (q.b < 0 && (q.a == -q.b || q.a == q.c)) q.b = -q.b;
    return neg ? -q : q;
}

/// The 2h(delta) SL2(Z)-classes of primitive definite forms of the given
/// discriminant: reduced positive-definite representatives plus negatives.
inline std::vector<BQF> reduced_classes(long delta) {
    if (delta == -3 || delta == -4) throw std::domain_error("unit ambiguity unsupported");
    if (delta >= 0 || !is_fundamental_discriminant(delta))
        throw std::invalid_argument("discriminant must be fundamental and negative");
    std::vector<BQF> pos;
    for (long a = 1; a * a * 4 <= -delta * 4; ++a) {
        if (3 * a * a > -delta) break;  // a <= sqrt(|delta|/3)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - delta;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            BQF q{a, b, c};
            if (!q.primitive()) continue;
            if (b < 0 && (a == -b || a == c)) continue;
            pos.push_back(q);
        }
    }
    std::vector<BQF> out;
    for (const BQF& q : pos) out.push_back(q);
    for (const BQF& q : pos) out.push_back(-q);
    return out;
}

inline long class_number(long delta) { return long(reduced_classes(delta).size()) / 2; }

/// Gamma_0(m)-class representatives of forms [a, b, c] with m | a and
/// b = r (mod 2m), in the regime n = 1, S(2) empty: one form per
/// SL2-class, found by ascending enumeration and classified by reduction.
inline std::vector<BQF> gamma0_classes(long delta, long r, long m) {
    if (!is_admissible(delta, ((r % (2 * m)) + 2 * m) % (2 * m), m))
        throw std::invalid_argument("(delta, r) not admissible for m");
    long n = gcd_long(gcd_long(m, r), (r * r - delta) / (4 * m));
    if (n != 1) throw std::domain_error("unsupported (Delta,r) regime: n != 1");
    if (delta % 4 == 0) {
        // S(2) = {h mod 2m : h^2 = delta/4 (mod 4m), 2h = r (mod 2m)}
        long d4 = delta / 4;
        for (long h = 0; h < 2 * m; ++h) {
            bool sq = ((h * h - d4) % (4 * m) + 4 * m) % (4 * m) == 0;
            bool lin = ((2 * h - r) % (2 * m) + 2 * m) % (2 * m) == 0;
            if (sq && lin) throw std::domain_error("unsupported (Delta,r) regime: S(2) nonempty");
        }
    }
    long target = 2 * class_number(delta);
    std::vector<BQF> reps;
    std::vector<BQF> keys;  // reduced forms of found reps
    for (long bound = 8; long(reps.size()) < target; bound *= 2) {
        if (bound > (1 << 16))
            throw std::runtime_error("class search bound exhausted for Delta=" +
                                     std::to_string(delta));
        reps.clear();
        keys.clear();
        for (long aa = m; long(reps.size()) < target && aa <= m * bound; aa += m) {
            for (long sa : {1, -1}) {
                long a = sa * aa;
                for (long bb = 0; bb <= 2 * m * bound; ++bb) {
                    if (((bb - r) % (2 * m) + 2 * m) % (2 * m) != 0 &&
                        ((-bb - r) % (2 * m) + 2 * m) % (2 * m) != 0)
                        continue;
                    for (long sb : {1, -1}) {
                        long b = sb * bb;
                        if (bb == 0 && sb < 0) continue;
                        if (((b - r) % (2 * m) + 2 * m) % (2 * m) != 0) continue;
                        long num = b * b - delta;
                        if (num % (4 * a) != 0) continue;
                        long c = num / (4 * a);
                        BQF q{a, b, c};
                        if (!q.primitive()) continue;
                        BQF key = reduce_form(q);
                        if (std::find(keys.begin(), keys.end(), key) != keys.end()) continue;
                        keys.push_back(key);
                        reps.push_back(q);
                        if (long(reps.size()) == target) break;
                    }
                    if (long(reps.size()) == target) break;
                }
                if (long(reps.size()) == target) break;
            }
        }
    }
    // deterministic: the enumeration order itself (|a| asc, sign, |b| asc)
    return reps;
}

/// Generalized genus character: (delta / n) for any represented n coprime to
/// delta; at least two independent representations must agree.
inline int genus_char(long delta, const BQF& q) {
    if (q.disc() != delta) throw std::invalid_argument("form discriminant mismatch");
    int found = 0;
    int value = 0;
    std::vector<long> seen;
    for (long bound = 4; bound <= 64; bound *= 2) {
        for (long x = -bound; x <= bound; ++x) {
            for (long y = -bound; y <= bound; ++y) {
                long v = q.eval(x, y);
                if (v == 0 || gcd_long(v, delta) != 1) continue;
                long av = v < 0 ? -v : v;
                if (std::find(seen.begin(), seen.end(), av) != seen.end()) continue;
                seen.push_back(av);
                int chi = kronecker(delta, v);
                if (found == 0) value = chi;
                else if (chi != value)
                    throw std::logic_error("genus character ill-defined on form");
                ++found;
            }
        }
        if (found >= 2) return value;
    }
    throw std::runtime_error("no coprime representation found");
}

struct HeegnerPoint {
    BQF form;
    QuadElem alpha;  // exact root of Q(x,1) in the upper half-plane

    ComplexPoint numeric() const {
        auto z = alpha.to_complex();
        return ComplexPoint(z.real(), z.imag());
    }
};

inline HeegnerPoint heegner_point(const BQF& q) {
    long delta = q.disc();
    if (delta == -3 || delta == -4) throw std::domain_error("unit ambiguity unsupported");
    if (delta >= 0) throw std::invalid_argument("form must be definite");
    long s = q.a > 0 ? 1 : -1;  // picks the root in the upper half-plane
    QuadElem alpha(delta, make_rat(-q.b, 2 * q.a), make_rat(s, 2 * q.a));
    // root check: a alpha^2 + b alpha + c = 0
    QuadElem res = QuadElem(q.a) * alpha * alpha + QuadElem(q.b) * alpha + QuadElem(q.c);
    if (!res.is_zero()) throw std::logic_error("heegner point is not a root");
    return {q, alpha};
}

/// Twisted Heegner divisor of the principal part: forms with b = r (mod 2m)
/// contribute -chi(Q), forms with b = -r contribute +chi(Q), at alpha_Q.
struct TwistedDivisor {
    long m = 0, delta = 0, r = 0;
    std::vector<std::pair<HeegnerPoint, long>> entries;

    long total_degree() const {
        long s = 0;
        for (const auto& [pt, mult] : entries) s += mult;
        return s;
    }
};

inline TwistedDivisor divisor(long m, long delta, long r) {
    TwistedDivisor d{m, delta, r, {}};
    auto add = [&](const BQF& q, long mult) {
        HeegnerPoint pt = heegner_point(q);
        for (auto& [p, mu] : d.entries) {
            if (p.alpha == pt.alpha) {
                mu += mult;
                return;
            }
        }
        d.entries.emplace_back(pt, mult);
    };
    for (const BQF& q : gamma0_classes(delta, r, m)) add(q, -genus_char(delta, q));
    for (const BQF& q : gamma0_classes(delta, -r, m)) add(q, genus_char(delta, q));
    d.entries.erase(std::remove_if(d.entries.begin(), d.entries.end(),
                                   [](const auto& e) { return e.second == 0; }),
                    d.entries.end());
    return d;
}

}  // namespace moonshine
