#pragma once

// Independent oracles for the test and acceptance suites. These deliberately
// avoid the library's computation routes: dimensions come from the
// closed-form product over maximal alternating blocks, convolutions from a
// full scan over candidate middles, and spectral norms from a dense
// eigensolver.

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <vector>

#include "fusionwalk/fusion.hpp"
#include "fusionwalk/measure.hpp"
#include "fusionwalk/qparam.hpp"
#include "fusionwalk/word.hpp"

namespace oracles {

inline double qint_direct(int n, double q) {
    if (n == 0) return 0.0;
    return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

// d(w) as the product of [b+1]_q over the maximal alternating blocks of w.
// Splitting happens exactly between equal adjacent letters, where the tensor
// product of the two halves is irreducible, so d is multiplicative there;
// within a block the dimension is the Chebyshev-type value [b+1]_q.
inline double block_qdim(const fusionwalk::Word& w, double q) {
    double d = 1.0;
    std::size_t i = 0;
    while (i < w.size()) {
        std::size_t j = i + 1;
        while (j < w.size() && w.at(j) != w.at(j - 1)) ++j;
        d *= qint_direct(static_cast<int>(j - i) + 1, q);
        i = j;
    }
    return d;
}

// All words of an exact length, lexicographic.
inline std::vector<fusionwalk::Word> words_of_length(std::size_t len) {
    std::vector<fusionwalk::Word> out;
    for (std::uint64_t v = 0; v < (1ull << len); ++v) {
        std::string s(len, 'a');
        for (std::size_t p = 0; p < len; ++p)
            if ((v >> (len - 1 - p)) & 1ull) s[p] = 'b';
        out.emplace_back(std::move(s));
    }
    return out;
}

// delta_z * delta_y by scanning every candidate middle word u of every
// admissible length, weighted with block_qdim.
inline std::map<fusionwalk::Word, double> brute_convolve_point(const fusionwalk::Word& z,
                                                               const fusionwalk::Word& y,
                                                               double q) {
    std::map<fusionwalk::Word, double> out;
    const double dz = block_qdim(z, q);
    const double dy = block_qdim(y, q);
    for (std::size_t j = 0; j <= std::min(z.size(), y.size()); ++j) {
        for (const auto& u : words_of_length(j)) {
            if (!z.ends_with(u)) continue;
            if (!y.starts_with(u.involute())) continue;
            const fusionwalk::Word atom = z.prefix(z.size() - j) + y.drop_first(j);
            out[atom] += block_qdim(atom, q) / (dz * dy);
        }
    }
    return out;
}

// Dense spectral norm of a fusion matrix.
inline double dense_spectral_norm(const fusionwalk::FusionMatrix& gamma) {
    const auto n = static_cast<Eigen::Index>(gamma.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index t = 0; t < n; ++t)
        for (const auto& [s, mult] : gamma.cols[t]) m(s, t) = mult;
    return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace oracles
