#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fusionwalk/fusion.hpp"
#include "fusionwalk/kernel.hpp"
#include "fusionwalk/qparam.hpp"

namespace fusionwalk {

struct SpectralNormResult {
    double estimate = 0.0;  // sqrt of the dominant Rayleigh quotient of G^T G
    double residual = 0.0;  // ||G^T G v - rho v||_2 at the final unit iterate
    int iterations = 0;
    bool converged = false;
};

/// Spectral norm of a fusion matrix by power iteration on the symmetrization
/// Gamma^T Gamma, started from the all-ones vector. The Rayleigh quotient is
/// a lower bound on the true truncated norm, so the estimate under-approximates
/// within the reported residual. Non-convergence returns the best iterate
/// with `converged` cleared.
SpectralNormResult spectral_norm(const FusionMatrix& gamma, double tol = 1e-12,
                                 int max_iter = 200000);

/// Numerical comparison of ||Gamma_U|| with the quantum dimension d_q(U) on a
/// truncation; the inequality norm <= d_q(U) holds for every dimension
/// function, and equality (at all U) characterizes amenable ones.
struct AmenabilityReport {
    std::string model;
    double q = 0.0;
    std::string label;               // U
    std::size_t truncation_size = 0;
    double norm = 0.0;
    double norm_residual = 0.0;
    double qdim = 0.0;
    double gap = 0.0;                          // qdim - norm
    std::optional<double> classical_dim;       // where the family defines one
    bool amenable_at_truncation = false;       // gap < tol; meaningful near Kac cases
};

template <FusionSystemLike S>
AmenabilityReport amenability_gap(const S& sys, const typename S::Label& U, QParam q,
                                  const std::vector<typename S::Label>& truncation,
                                  double gap_tol = 1e-6) {
    bool found = false;
    for (const auto& l : truncation)
        if (l == U) found = true;
    if (!found) throw std::invalid_argument("amenability_gap: U must lie in the truncation");
    const FusionMatrix gamma = fusion_matrix(sys, U, truncation);
    const SpectralNormResult sn = spectral_norm(gamma);
    AmenabilityReport rep;
    rep.model = sys.name();
    rep.q = q.q();
    rep.label = sys.label_str(U);
    rep.truncation_size = truncation.size();
    rep.norm = sn.estimate;
    rep.norm_residual = sn.residual;
    rep.qdim = sys.dim(U, q);
    rep.gap = rep.qdim - rep.norm;
    if constexpr (std::is_same_v<S, TemperleyLiebSystem>)
        rep.classical_dim = static_cast<double>(U + 1);
    rep.amenable_at_truncation = rep.gap < gap_tol;
    return rep;
}

/// Candidate invariant mean on a truncated label set with its defect against
/// each generator's Markov operator.
struct MeanCandidate {
    std::vector<double> m;                  // probability vector on the truncation
    std::vector<std::string> generators;    // labels of the tested operators
    std::vector<double> residuals;          // ||m P_s - m||_1 + leaked mass, per generator
    double aggregate = 0.0;                 // max over generators
};

/// l1 residuals of m against each kernel's left action. Mass leaking off the
/// truncation is added to the residual as a conservative bound.
MeanCandidate mean_residual(const std::vector<double>& m,
                            const std::vector<TransitionKernel>& kernels);

struct CesaroVector {
    std::vector<double> v;   // renormalized over the truncation
    double leak = 0.0;       // mass fraction lost before renormalization
};

/// The window average (1/W) sum_{k=1..W} start P^k, renormalized over the
/// truncation; a Folner-style candidate for an invariant mean.
CesaroVector cesaro_mean(const std::vector<double>& start, const TransitionKernel& kernel,
                         int window);

}  // namespace fusionwalk
