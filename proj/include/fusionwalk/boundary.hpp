#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fusionwalk/measure.hpp"
#include "fusionwalk/qparam.hpp"
#include "fusionwalk/word.hpp"

namespace fusionwalk {

/// The displayed lower bound 1 - q^{2(k+1)} / (1 - q^2) for the mass a
/// convolution lambda * delta_y leaves in a tail cylinder shared to depth
/// N + k. May be negative for q near 1 and small k (the bound is then vacuous).
double estimate_bound(QParam q, int k);

struct EstimateCheck {
    double measured;
    double bound;
    bool ok;
    int k;  // inferred tail-overlap excess
};

/// Checks the cylinder-mass bound on one instance: measured is the mass of
/// (lambda * delta_y) on the cylinder of the last N letters of x_tail, and k
/// is inferred as (common tail length of y and x_tail) - N, which must be
/// nonnegative. Throws std::invalid_argument when the hypothesis fails.
EstimateCheck verify_estimate(const AtomicMeasure& lam, const Word& y, const Word& x_tail,
                              std::size_t N, QParam q);

/// Pushes a measure on words through iterated right convolution by a step
/// measure, representing each atom only by its last `max_tracked` letters.
///
/// Convolution weights depend on a word only through quantum-dimension ratios
/// d(z') / d(z), and these equal [m]_q / [m+1]_q with m the length of the
/// maximal alternating suffix of z. The tracked tail therefore determines all
/// transition weights exactly, except in two rare situations that are charged
/// to a conservative `lost_mass` bucket: an atom erodes through its entire
/// tracked tail, or the whole tracked tail of a truncated atom alternates so
/// m is only known to be >= the tracked length (ratio ambiguity <= q^{2m+1}).
///
/// Cylinder masses over suffixes up to max_tracked letters are exact within
/// lost_mass. Cross-checked against convolve_power where that is feasible.
class TailWalker {
public:
    TailWalker(const AtomicMeasure& start, QParam q, int max_tracked = 16);

    /// One right convolution by mu (an arbitrary finitely supported measure).
    void step(const AtomicMeasure& mu);
    void run(const AtomicMeasure& mu, int n);

    double cylinder_mass(const Cylinder& c) const;
    /// Mass of atoms whose membership in the cylinder is undecidable (tail
    /// eroded shorter than the suffix). Zero in ordinary regimes.
    double cylinder_uncertainty(const Cylinder& c) const;

    double lost_mass() const noexcept { return lost_; }
    double total_mass() const;
    std::size_t state_count() const noexcept { return dist_.size(); }
    int max_tracked() const noexcept { return max_tracked_; }

private:
    // State key: bit 63 = truncated flag, bits 32..62 = tracked length,
    // bits 0..len-1 = letters with the *last* letter at bit 0 ('a'=0,'b'=1).
    using Key = std::uint64_t;
    static Key make_key(bool truncated, int len, std::uint64_t bits);
    static bool key_truncated(Key k) { return (k >> 63) != 0; }
    static int key_len(Key k) { return static_cast<int>((k >> 32) & 0x7fffffffu); }
    static std::uint64_t key_bits(Key k) { return k & 0xffffffffu; }

    QParam q_;
    int max_tracked_;
    double lost_ = 0.0;
    std::unordered_map<Key, double> dist_;

    struct StepAtom;  // preprocessed mu atom
    void scatter(Key key, double mass, const std::vector<StepAtom>& atoms,
                 std::unordered_map<Key, double>& next);
};

struct StationarityReport {
    double gap = 0.0;        // max cylinder-mass difference vs the delta_e run
    double lost = 0.0;       // combined lost-mass bound of the two runs
    std::vector<double> masses;      // cylinder masses for the lambda run
    std::vector<double> ref_masses;  // cylinder masses for the delta_e run
};

/// Empirical stationarity/uniqueness witness: compares the cylinder masses of
/// lambda * mu^{*n} with those of delta_e * mu^{*n} over the given suffixes
/// and reports the largest difference.
StationarityReport stationarity_report(const AtomicMeasure& lam, const AtomicMeasure& mu, int n,
                                       const std::vector<Cylinder>& suffixes, QParam q,
                                       int max_tracked = 16);

double stationarity_gap(const AtomicMeasure& lam, const AtomicMeasure& mu, int n,
                        const std::vector<Cylinder>& suffixes, QParam q, int max_tracked = 16);

/// (delta_x * mu^{*n})(cylinder c), a finite-step approximation of the
/// harmonic measure of the cylinder as seen from x.
double hitting_estimate(const Word& x, const Cylinder& c, const AtomicMeasure& mu, int n,
                        QParam q, int max_tracked = 16);

/// All words of length <= maxlen in length-lexicographic order.
std::vector<Word> words_up_to(std::size_t maxlen);

/// A randomized admissible instance for verify_estimate: a shared tail of
/// length N + k (k in 0..4), a point y extending it, x_tail equal to it, and
/// a random normalized start measure on words of length <= maxlen.
/// Deterministic in (seed, trial).
struct EstimateInstance {
    AtomicMeasure lam;
    Word y;
    Word x_tail;
    std::size_t N = 0;
};

EstimateInstance random_estimate_instance(QParam q, std::uint64_t seed, std::uint64_t trial,
                                          std::size_t maxlen, std::size_t N);

}  // namespace fusionwalk
