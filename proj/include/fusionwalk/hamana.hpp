#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace fusionwalk {

using Mat = Eigen::MatrixXcd;

/// Largest singular value (the operator 2-norm).
double operator_norm(const Mat& a);

/// Column-major vectorization and its inverse.
Eigen::VectorXcd vec(const Mat& x);
Mat unvec(const Eigen::VectorXcd& v, int n);

/// Applies a map on M_n given in vectorized form (an n^2 x n^2 matrix).
Mat apply_map(const Mat& map, const Mat& x);

/// Vectorized form of X -> U X U^*.
Mat conjugation_map(const Mat& u);

/// Choi matrix sum_ij E_ij (x) Phi(E_ij) of a map on M_n.
Mat choi_matrix(const Mat& map, int n);

bool is_positive_semidefinite(const Mat& h, double tol);

/// Whether a vectorized map on M_n is unital completely positive: Choi matrix
/// Hermitian and PSD within eig_tol, unit preserved within eig_tol.
bool is_ucp(const Mat& map, int n, double eig_tol = 1e-10);

/// Finite set of operator-norm contractions on C^d, the generators of a convex
/// semigroup. With `ucp` set, d = n^2 and each matrix is the vectorized form
/// of a unital completely positive map on M_n (certified via its Choi matrix;
/// ucp maps are automatically contractive, so no norm check is applied).
struct ContractionFamily {
    int dim = 0;
    std::vector<Mat> maps;
    bool ucp = false;

    /// Validates and returns the family; throws std::invalid_argument when a
    /// generator fails the contraction or ucp certificate.
    static ContractionFamily create(std::vector<Mat> maps, bool ucp = false,
                                    double tol = 1e-10);
};

struct IdempotentResult {
    Mat e;
    double idempotency_residual = 0.0;  // ||E^2 - E||
    double minimality_residual = 0.0;   // max over generators of ||E psi E - E||
    bool converged = false;
    std::vector<std::string> log;
};

/// Mean-ergodic limit E of (1/n) sum_{k<=n} psi^k for a contraction psi: the
/// projection onto ker(psi - 1) along ran(psi - 1), satisfying
/// E psi = psi E = E. Computed from a rank-revealing splitting; falls back to
/// iterated squaring of (1 + psi)/2 when the splitting misses the tolerance.
IdempotentResult cesaro_idempotent(const Mat& psi, double tol = 1e-12);

/// The pre-order phi < psi iff ||phi x|| <= ||psi x|| for all x, decided
/// exactly for the Euclidean norm by positive semidefiniteness of
/// psi^* psi - phi^* phi (eigenvalue tolerance eig_tol).
bool precedes(const Mat& phi, const Mat& psi, double eig_tol = 1e-10);

/// precedes(phi, psi) with a strict gap in some direction.
bool strictly_precedes(const Mat& phi, const Mat& psi, double eig_tol = 1e-10);

/// Heuristic descent to an idempotent E absorbing the family: starting from
/// the Cesaro idempotent of the uniform generator average, repeatedly replaces
/// E by the Cesaro idempotent of E psi E whenever that strictly precedes E.
/// The certificate is the returned minimality residual max ||E psi E - E||;
/// results with residual above tol are flagged non-converged, never silently
/// promoted. `budget` caps the number of inner Cesaro evaluations.
IdempotentResult minimal_idempotent(const ContractionFamily& fam, double tol = 1e-10,
                                    int budget = 200);

/// The product a . b = E(ab) on the image of a ucp idempotent E on M_n.
/// Rejects inputs that E does not fix within tol, or a non-idempotent or
/// non-ucp E.
Mat choi_effros_product(const Mat& e, const Mat& a, const Mat& b, double tol = 1e-10);

}  // namespace fusionwalk
