#pragma once

#include <stdexcept>
#include <string>

#include "moonshine/jacobi_series.hpp"

namespace moonshine {

/// Fourier expansion of mu_{m,0}(tau, z) = -sum_k q^{mk^2} y^{2mk}
/// (1+yq^k)/(1-yq^k) in the region 0 < Im z < Im tau (|q| < |y| < 1):
/// the k >= 0 geometric factors expand in y q^k, the k < 0 ones in
/// y^{-1} q^{-k}.
struct AppellExpansion {
    long m = 0;
    JacobiSeries series;
    std::string region = "0 < Im z < Im tau";
};

inline AppellExpansion mu_expansion(long m, long qorder, long ywidth) {
    if (m < 1) throw std::invalid_argument("index must be >= 1");
    if (qorder < 1 || ywidth < 0) throw std::invalid_argument("bad window");
    JacobiSeries s(1, 1, qorder, ywidth);
    for (long k = 0; m * k * k < qorder; k = (k > 0 ? -k : -k + 1)) {
        long q0 = m * k * k;
        long y0 = 2 * m * k;
        long sign = (k >= 0) ? -1 : 1;
        s.add_term(q0, y0, Rat(sign));
        if (k == 0) {
            for (long j = 1; j <= ywidth; ++j) s.add_term(0, j, Rat(2 * sign));
        } else {
            long ak = (k > 0) ? k : -k;
            long dir = (k > 0) ? 1 : -1;
            for (long j = 1; q0 + ak * j < qorder; ++j)
                s.add_term(q0 + ak * j, y0 + dir * j, Rat(2 * sign));
        }
    }
    return {m, std::move(s), "0 < Im z < Im tau"};
}

}  // namespace moonshine
