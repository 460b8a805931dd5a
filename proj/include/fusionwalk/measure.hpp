#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>

#include "fusionwalk/qparam.hpp"
#include "fusionwalk/word.hpp"

namespace fusionwalk {

/// Finitely supported nonnegative measure on free-monoid words, with the mass
/// removed by truncation tracked separately. For probability measures the atom
/// total plus pruned mass stays within 1e-12 of one; pruned_mass is an upper
/// bound on the total-variation distance to the untruncated measure.
class AtomicMeasure {
public:
    AtomicMeasure() = default;

    static AtomicMeasure point(Word w) {
        AtomicMeasure m;
        m.atoms_.emplace(std::move(w), 1.0);
        return m;
    }

    void add(const Word& w, double mass) {
        if (!(mass > 0.0)) throw std::invalid_argument("AtomicMeasure: masses must be positive");
        atoms_[w] += mass;
    }

    void add_pruned(double mass) { pruned_ += mass; }

    double mass(const Word& w) const {
        auto it = atoms_.find(w);
        return it == atoms_.end() ? 0.0 : it->second;
    }

    double atom_mass() const {
        double s = 0.0;
        for (const auto& [w, m] : atoms_) s += m;
        return s;
    }

    double pruned_mass() const noexcept { return pruned_; }
    std::size_t support_size() const noexcept { return atoms_.size(); }
    const std::map<Word, double>& atoms() const noexcept { return atoms_; }

    bool is_probability(double tol = 1e-12) const {
        return std::abs(atom_mass() + pruned_ - 1.0) <= tol;
    }

    /// Moves every atom of mass < eps into the pruned bucket.
    void prune(double eps) {
        if (eps <= 0.0) return;
        for (auto it = atoms_.begin(); it != atoms_.end();) {
            if (it->second < eps) {
                pruned_ += it->second;
                it = atoms_.erase(it);
            } else {
                ++it;
            }
        }
    }

private:
    std::map<Word, double> atoms_;
    double pruned_ = 0.0;
};

/// The cylinder of all (finite or left-infinite) words ending in `suffix`.
struct Cylinder {
    Word suffix;
};

/// Thrown when an iterated convolution's support exceeds the configured cap.
struct SupportOverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// delta_z * delta_y = sum over middles u (z = z0 u, y = involute(u) y0) of
/// d(z0 y0) / (d(z) d(y)) at z0 y0. A probability measure by the dimension
/// axiom; total mass 1 within 1e-12.
AtomicMeasure convolve_point(const Word& z, const Word& y, QParam q);

/// Bilinear extension of convolve_point; pruned masses add.
AtomicMeasure convolve(const AtomicMeasure& lam, const AtomicMeasure& m, QParam q);

/// m^{*n} by repeated convolution, pruning atoms below prune_eps after each
/// step. n = 0 yields the unit (point mass at the empty word). Throws
/// SupportOverflowError if the support would exceed support_cap atoms.
AtomicMeasure convolve_power(const AtomicMeasure& m, int n, double prune_eps, QParam q,
                             std::size_t support_cap = 2'000'000);

/// Mass of the atoms ending in c.suffix. The empty suffix gives the atom total.
double cylinder_mass(const AtomicMeasure& lam, const Cylinder& c);

/// The last N letters [z]_N; requires |z| >= N.
Word tail_word(const Word& z, std::size_t N);

}  // namespace fusionwalk
