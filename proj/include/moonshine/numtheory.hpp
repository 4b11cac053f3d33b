#pragma once

#include <stdexcept>
#include <string>

#include "moonshine/rat.hpp"

namespace moonshine {

/// Kronecker symbol (a/n), full extension (n may be zero, negative or even).
inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline int kronecker(long a, long n) { return kronecker(Int(a), Int(n)); }

inline bool is_squarefree(long n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

/// Fundamental discriminant: 1, or squarefree d = 1 (mod 4), or 4d with
/// squarefree d = 2,3 (mod 4). Here only the negative case matters.
inline bool is_fundamental_discriminant(long d) {
    long m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(d);
    if (m4 == 0) {
        long q = d / 4;
        long qm = ((q % 4) + 4) % 4;
        return (qm == 2 || qm == 3) && is_squarefree(q);
    }
    return false;
}

enum class Splitting { split, inert, ramified };

/// Behavior of prime p in Q(sqrt(delta)), delta a fundamental discriminant.
inline Splitting prime_splitting(long p, long delta) {
    int k = kronecker(delta, p);
    if (k > 0) return Splitting::split;
    if (k < 0) return Splitting::inert;
    return Splitting::ramified;
}

inline std::string splitting_name(Splitting s) {
    switch (s) {
        case Splitting::split: return "split";
        case Splitting::inert: return "inert";
        default: return "ramified";
    }
}

/// Admissibility of (delta, r) for level m: delta fundamental negative and
/// r^2 = delta (mod 4m).
inline bool is_admissible(long delta, long r, long m) {
    if (delta >= 0 || !is_fundamental_discriminant(delta)) return false;
    long lhs = ((r * r - delta) % (4 * m) + 4 * m) % (4 * m);
    return lhs == 0;
}

}  // namespace moonshine
