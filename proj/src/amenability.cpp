#include "fusionwalk/amenability.hpp"

#include <cmath>
#include <stdexcept>

namespace fusionwalk {

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

SpectralNormResult spectral_norm(const FusionMatrix& gamma, double tol, int max_iter) {
    const std::size_t n = gamma.size();
    if (n == 0 || gamma.nonzeros() == 0)
        throw std::invalid_argument("spectral_norm: matrix must be nonzero");
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> gv, w;
    SpectralNormResult res;
    double rho = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        gamma.apply(v, gv);
        gamma.apply_transpose(gv, w);  // w = G^T G v
        rho = 0.0;
        for (std::size_t i = 0; i < n; ++i) rho += v[i] * w[i];
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = w[i] - rho * v[i];
            rnorm += d * d;
        }
        rnorm = std::sqrt(rnorm);
        res.iterations = it;
        res.residual = rnorm;
        if (rnorm <= tol) {
            res.converged = true;
            break;
        }
        const double wn = norm2(w);
        if (wn == 0.0) break;  // v in the kernel of G^T G; rho = 0 is exact
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
    }
    if (rho < 0.0) rho = 0.0;
    res.estimate = std::sqrt(rho);
    if (res.residual <= tol) res.converged = true;
    return res;
}

MeanCandidate mean_residual(const std::vector<double>& m,
                            const std::vector<TransitionKernel>& kernels) {
    MeanCandidate out;
    out.m = m;
    std::vector<double> mp;
    for (const auto& k : kernels) {
        if (k.size() != m.size())
            throw std::invalid_argument("mean_residual: vector/kernel dimension mismatch");
        const double lost = k.apply_left(m, mp);
        double r = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) r += std::abs(mp[i] - m[i]);
        out.generators.push_back(k.step_desc);
        out.residuals.push_back(r + lost);
        out.aggregate = std::max(out.aggregate, out.residuals.back());
    }
    return out;
}

CesaroVector cesaro_mean(const std::vector<double>& start, const TransitionKernel& kernel,
                         int window) {
    if (window < 1) throw std::invalid_argument("cesaro_mean: window must be positive");
    if (start.size() != kernel.size())
        throw std::invalid_argument("cesaro_mean: vector/kernel dimension mismatch");
    std::vector<double> cur = start, nextv, acc(start.size(), 0.0);
    for (int k = 1; k <= window; ++k) {
        kernel.apply_left(cur, nextv);
        cur = nextv;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += cur[i];
    }
    CesaroVector out;
    double total = 0.0;
    for (double x : acc) total += x;
    out.leak = std::max(0.0, 1.0 - total / window);
    out.v.resize(acc.size());
    if (total > 0.0)
        for (std::size_t i = 0; i < acc.size(); ++i) out.v[i] = acc[i] / total;
    return out;
}

}  // namespace fusionwalk
