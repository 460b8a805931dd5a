#include "fusionwalk/hamana.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace fusionwalk {

double operator_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Mat>(a).singularValues()(0);
}

Eigen::VectorXcd vec(const Mat& x) {
    return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size());
}

Mat unvec(const Eigen::VectorXcd& v, int n) {
    if (v.size() != static_cast<Eigen::Index>(n) * n)
        throw std::invalid_argument("unvec: size mismatch");
    return Eigen::Map<const Mat>(v.data(), n, n);
}

Mat apply_map(const Mat& map, const Mat& x) {
    const int n = static_cast<int>(x.rows());
    if (map.rows() != static_cast<Eigen::Index>(n) * n || map.rows() != map.cols())
        throw std::invalid_argument("apply_map: map must be n^2 x n^2");
    return unvec(map * vec(x), n);
}

Mat conjugation_map(const Mat& u) {
    // vec(U X U^*) = (conj(U) (x) U) vec(X) for column-major vec.
    const int n = static_cast<int>(u.rows());
    Mat m(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.block(i * n, j * n, n, n) = std::conj(u(i, j)) * u;
    return m;
}

Mat choi_matrix(const Mat& map, int n) {
    Mat c = Mat::Zero(n * n, n * n);
    Mat eij = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            eij(i, j) = 1.0;
            c.block(i * n, j * n, n, n) = apply_map(map, eij);
            eij(i, j) = 0.0;
        }
    return c;
}

bool is_positive_semidefinite(const Mat& h, double tol) {
    if (operator_norm(h - h.adjoint()) > tol * std::max(1.0, operator_norm(h))) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0,
                                          Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool is_ucp(const Mat& map, int n, double eig_tol) {
    if (map.rows() != static_cast<Eigen::Index>(n) * n || map.rows() != map.cols()) return false;
    if (!is_positive_semidefinite(choi_matrix(map, n), eig_tol)) return false;
    return operator_norm(apply_map(map, Mat::Identity(n, n)) - Mat::Identity(n, n)) <= eig_tol;
}

ContractionFamily ContractionFamily::create(std::vector<Mat> maps, bool ucp, double tol) {
    if (maps.empty()) throw std::invalid_argument("ContractionFamily: family must be nonempty");
    ContractionFamily fam;
    fam.dim = static_cast<int>(maps.front().rows());
    fam.ucp = ucp;
    int n = 0;
    if (ucp) {
        n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(fam.dim))));
        if (n * n != fam.dim)
            throw std::invalid_argument("ContractionFamily: ucp maps need a square dimension");
    }
    for (const auto& m : maps) {
        if (m.rows() != fam.dim || m.cols() != fam.dim)
            throw std::invalid_argument("ContractionFamily: maps must share one square shape");
        if (ucp) {
            if (!is_ucp(m, n, tol))
                throw std::invalid_argument("ContractionFamily: map fails the ucp certificate");
        } else if (operator_norm(m) > 1.0 + 1e-12) {
            throw std::invalid_argument("ContractionFamily: map exceeds operator norm one");
        }
    }
    fam.maps = std::move(maps);
    return fam;
}

namespace {

// Projection onto ker(psi - 1) along ran(psi - 1) via rank-revealing LU.
bool splitting_projection(const Mat& psi, Mat& e) {
    const Eigen::Index d = psi.rows();
    const Mat n = psi - Mat::Identity(d, d);
    Eigen::FullPivLU<Mat> lu(n);
    const Eigen::Index rank = lu.rank();
    if (rank == 0) {
        e = Mat::Identity(d, d);
        return true;
    }
    if (rank == d) {
        e = Mat::Zero(d, d);
        return true;
    }
    Mat b(d, d);
    b.leftCols(d - rank) = lu.kernel();
    b.rightCols(rank) = lu.image(n);
    Eigen::FullPivLU<Mat> binv(b);
    if (!binv.isInvertible()) return false;
    Mat p0 = Mat::Zero(d, d);
    p0.topLeftCorner(d - rank, d - rank) = Mat::Identity(d - rank, d - rank);
    e = b * p0 * binv.inverse();
    return true;
}

double cesaro_defect(const Mat& e, const Mat& psi) {
    return std::max({operator_norm(e * e - e), operator_norm(e * psi - e),
                     operator_norm(psi * e - e)});
}

}  // namespace

IdempotentResult cesaro_idempotent(const Mat& psi, double tol) {
    if (psi.rows() != psi.cols()) throw std::invalid_argument("cesaro_idempotent: square input");
    if (operator_norm(psi) > 1.0 + 1e-9)
        throw std::invalid_argument("cesaro_idempotent: input is not a contraction");
    IdempotentResult res;
    const Eigen::Index d = psi.rows();

    if (d <= 512 && splitting_projection(psi, res.e) && cesaro_defect(res.e, psi) <= tol &&
        operator_norm(res.e) <= 1.0 + 1e-9) {
        res.log.push_back("splitting projection");
    } else {
        // Powers of (1 + psi)/2 converge to the same projection: the halved map
        // fixes exactly ker(psi - 1) and its other spectrum lies inside the
        // open disc. Squaring doubles the power each pass.
        Mat t = (Mat::Identity(d, d) + psi) / 2.0;
        int squarings = 0;
        for (; squarings < 120; ++squarings) {
            Mat t2 = t * t;
            const double step = operator_norm(t2 - t);
            t = std::move(t2);
            if (step <= tol / 4.0 && cesaro_defect(t, psi) <= tol) break;
        }
        res.e = t;
        res.log.push_back("iterated averaging, " + std::to_string(squarings) + " squarings");
    }

    res.idempotency_residual = operator_norm(res.e * res.e - res.e);
    res.minimality_residual = operator_norm(res.e * psi * res.e - res.e);
    res.converged = cesaro_defect(res.e, psi) <= tol && operator_norm(res.e) <= 1.0 + 1e-9;
    return res;
}

bool precedes(const Mat& phi, const Mat& psi, double eig_tol) {
    if (phi.rows() != psi.rows() || phi.cols() != psi.cols())
        throw std::invalid_argument("precedes: shape mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(psi.adjoint() * psi - phi.adjoint() * phi,
                                          Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -eig_tol;
}

bool strictly_precedes(const Mat& phi, const Mat& psi, double eig_tol) {
    return precedes(phi, psi, eig_tol) && !precedes(psi, phi, eig_tol);
}

IdempotentResult minimal_idempotent(const ContractionFamily& fam, double tol, int budget) {
    Mat avg = Mat::Zero(fam.dim, fam.dim);
    for (const auto& m : fam.maps) avg += m;
    avg /= static_cast<double>(fam.maps.size());

    IdempotentResult res = cesaro_idempotent(avg, tol);
    res.log.insert(res.log.begin(), "start: cesaro of generator average");
    int used = 1;

    bool improved = true;
    while (improved && used < budget) {
        improved = false;
        for (const auto& psi : fam.maps) {
            if (used >= budget) {
                res.log.push_back("budget exhausted during sweep");
                break;
            }
            IdempotentResult cand = cesaro_idempotent(res.e * psi * res.e, tol);
            ++used;
            if (cand.converged && strictly_precedes(cand.e, res.e)) {
                res.e = cand.e;
                res.log.push_back("descent step accepted");
                improved = true;
            }
        }
    }

    res.idempotency_residual = operator_norm(res.e * res.e - res.e);
    res.minimality_residual = 0.0;
    for (const auto& psi : fam.maps)
        res.minimality_residual =
            std::max(res.minimality_residual, operator_norm(res.e * psi * res.e - res.e));
    res.converged = res.idempotency_residual <= tol && res.minimality_residual <= tol;
    res.log.push_back("cesaro evaluations: " + std::to_string(used));
    return res;
}

Mat choi_effros_product(const Mat& e, const Mat& a, const Mat& b, double tol) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n || b.rows() != n || b.cols() != n)
        throw std::invalid_argument("choi_effros_product: operands must be square and matching");
    if (e.rows() != static_cast<Eigen::Index>(n) * n || e.rows() != e.cols())
        throw std::invalid_argument("choi_effros_product: idempotent must act on M_n");
    if (operator_norm(e * e - e) > tol)
        throw std::invalid_argument("choi_effros_product: E is not idempotent within tolerance");
    if (!is_ucp(e, n, tol))
        throw std::invalid_argument("choi_effros_product: E is not ucp within tolerance");
    const double scale_a = std::max(1.0, operator_norm(a));
    const double scale_b = std::max(1.0, operator_norm(b));
    if (operator_norm(apply_map(e, a) - a) > tol * scale_a ||
        operator_norm(apply_map(e, b) - b) > tol * scale_b)
        throw std::invalid_argument("choi_effros_product: operands are not fixed by E");
    return apply_map(e, Mat(a * b));
}

}  // namespace fusionwalk
