#include <cstdio>
#include <cstdlib>

#include "moonshine/acceptance.hpp"

int main() {
    const char* env = std::getenv("MOONSHINE_PRECISION");
    double tol = env ? std::atof(env) : 1e-8;
    auto results = moonshine::run_acceptance(tol);
    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %2d: %s  %s (%s)\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 3;
}
