#include "fusionwalk/kernel.hpp"

#include <cmath>

namespace fusionwalk {

double harmonic_residual(std::span<const double> f, const TransitionKernel& kernel) {
    if (f.size() != kernel.size())
        throw std::invalid_argument("harmonic_residual: f must cover all truncated labels");
    double worst = 0.0;
    for (std::size_t x = 0; x < kernel.size(); ++x) {
        if (kernel.leak[x] >= 1e-9) continue;
        double acc = 0.0;
        for (const auto& [w, p] : kernel.rows[x]) acc += p * f[w];
        worst = std::max(worst, std::abs(acc - f[x]));
    }
    return worst;
}

}  // namespace fusionwalk
