#include "fusionwalk/boundary.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fusionwalk/fusion.hpp"
#include "fusionwalk/sampling.hpp"

namespace fusionwalk {

double estimate_bound(QParam q, int k) {
    if (k < 0) throw std::invalid_argument("estimate_bound: k must be nonnegative");
    const double qq = q.q();
    return 1.0 - std::pow(qq, 2 * (k + 1)) / (1.0 - qq * qq);
}

EstimateCheck verify_estimate(const AtomicMeasure& lam, const Word& y, const Word& x_tail,
                              std::size_t N, QParam q) {
    if (x_tail.size() < N)
        throw std::invalid_argument("verify_estimate: |x_tail| must be at least N");
    const std::size_t common = y.common_tail_length(x_tail);
    if (common < N)
        throw std::invalid_argument(
            "verify_estimate: y and x_tail share fewer than N tail letters");
    const int k = static_cast<int>(common - N);
    EstimateCheck out;
    out.k = k;
    out.bound = estimate_bound(q, k);
    out.measured = cylinder_mass(convolve(lam, AtomicMeasure::point(y), q),
                                 Cylinder{tail_word(x_tail, N)});
    out.ok = out.measured >= out.bound - 1e-12;
    return out;
}

namespace {

std::uint64_t low_mask(int n) { return n >= 64 ? ~0ull : ((1ull << n) - 1); }

// Packs a word with its last letter at bit 0 ('a' = 0, 'b' = 1).
std::uint64_t pack_word(const Word& w) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.at(w.size() - 1 - i) == 'b') bits |= 1ull << i;
    return bits;
}

// Length of the maximal alternating suffix of a packed word.
int alt_suffix_len(std::uint64_t bits, int len) {
    if (len <= 1) return len;
    const std::uint64_t x = (bits ^ (bits >> 1)) & low_mask(len - 1);
    const int run = std::countr_one(x);
    return std::min(run, len - 1) + 1;
}

}  // namespace

struct TailWalker::StepAtom {
    std::string letters;
    double mass;
    double dim;
    // u_packed[j] = packed involute of the first j letters of the step word;
    // the length-j middle u of z must equal it for the branch to apply.
    std::vector<std::uint64_t> u_packed;
};

TailWalker::Key TailWalker::make_key(bool truncated, int len, std::uint64_t bits) {
    return (truncated ? (1ull << 63) : 0) | (static_cast<std::uint64_t>(len) << 32) |
           (bits & 0xffffffffu);
}

TailWalker::TailWalker(const AtomicMeasure& start, QParam q, int max_tracked)
    : q_(q), max_tracked_(max_tracked) {
    if (max_tracked < 2 || max_tracked > 28)
        throw std::invalid_argument("TailWalker: max_tracked must be in [2, 28]");
    for (const auto& [w, m] : start.atoms()) {
        const bool trunc = w.size() > static_cast<std::size_t>(max_tracked_);
        const int len = trunc ? max_tracked_ : static_cast<int>(w.size());
        const std::uint64_t bits = pack_word(w) & low_mask(len);
        dist_[make_key(trunc, len, bits)] += m;
    }
    lost_ += start.pruned_mass();
}

void TailWalker::scatter(Key key, double mass, const std::vector<StepAtom>& atoms,
                         std::unordered_map<Key, double>& next) {
    const bool trunc0 = key_truncated(key);
    const int len0 = key_len(key);
    const std::uint64_t bits0 = key_bits(key);
    const double delta = q_.delta();
    const double qq = q_.q();

    double expected = 0.0;
    double assigned = 0.0;
    for (const auto& sa : atoms) {
        expected += sa.mass;
        const int slen = static_cast<int>(sa.letters.size());
        // Branches that would pop the whole tracked tail of a truncated atom
        // are undecidable; their weight falls into the conservation deficit.
        const int jcap = trunc0 ? std::min(slen, len0 - 1) : std::min(slen, len0);
        for (int j = 0; j <= jcap; ++j) {
            if (j > 0 && (bits0 & low_mask(j)) != sa.u_packed[j]) continue;

            double weight = 1.0;
            double rel_err = 0.0;
            std::uint64_t bits = bits0;
            int len = len0;
            bool trunc = trunc0;
            for (int t = 0; t < j; ++t) {  // pop the middle
                const int m = alt_suffix_len(bits, len);
                if (trunc && m == len) rel_err += 2.0 * std::pow(qq, 2 * m);
                weight *= qint(m, q_) / qint(m + 1, q_);
                bits >>= 1;
                --len;
            }
            for (int p = j; p < slen; ++p) {  // append the step remainder
                const int g = sa.letters[p] == 'b' ? 1 : 0;
                if (len == 0) {
                    weight *= delta;
                } else if (static_cast<int>(bits & 1ull) == g) {
                    weight *= delta;
                } else {
                    const int m = alt_suffix_len(bits, len);
                    if (trunc && m == len) rel_err += 2.0 * std::pow(qq, 2 * m);
                    weight *= delta - qint(m, q_) / qint(m + 1, q_);
                }
                bits = (bits << 1) | static_cast<std::uint64_t>(g);
                ++len;
                if (len > max_tracked_) {
                    bits &= low_mask(max_tracked_);
                    len = max_tracked_;
                    trunc = true;
                }
            }
            weight /= sa.dim;
            const double out = mass * sa.mass * weight;
            next[make_key(trunc, len, bits)] += out;
            assigned += sa.mass * weight;
            if (rel_err > 0.0) lost_ += out * std::min(1.0, rel_err);
        }
    }
    if (assigned < expected) lost_ += mass * (expected - assigned);
}

void TailWalker::step(const AtomicMeasure& mu) {
    std::vector<StepAtom> atoms;
    atoms.reserve(mu.atoms().size());
    for (const auto& [s, m] : mu.atoms()) {
        StepAtom sa;
        sa.letters = s.letters();
        sa.mass = m;
        sa.dim = qdim(s, q_);
        sa.u_packed.resize(s.size() + 1, 0);
        for (std::size_t j = 1; j <= s.size(); ++j)
            sa.u_packed[j] = pack_word(s.prefix(j).involute());
        atoms.push_back(std::move(sa));
    }
    lost_ += total_mass() * mu.pruned_mass();

    std::vector<Key> keys;
    keys.reserve(dist_.size());
    for (const auto& [k, v] : dist_) keys.push_back(k);
    std::sort(keys.begin(), keys.end());

    std::unordered_map<Key, double> next;
    next.reserve(dist_.size() * 2);
    for (Key k : keys) scatter(k, dist_.at(k), atoms, next);
    dist_ = std::move(next);
}

void TailWalker::run(const AtomicMeasure& mu, int n) {
    for (int i = 0; i < n; ++i) step(mu);
}

double TailWalker::cylinder_mass(const Cylinder& c) const {
    const int lc = static_cast<int>(c.suffix.size());
    if (lc > max_tracked_)
        throw std::invalid_argument("TailWalker: cylinder suffix longer than tracked tail");
    const std::uint64_t target = pack_word(c.suffix);
    double s = 0.0;
    for (const auto& [k, v] : dist_)
        if (key_len(k) >= lc && (key_bits(k) & low_mask(lc)) == target) s += v;
    return s;
}

double TailWalker::cylinder_uncertainty(const Cylinder& c) const {
    const int lc = static_cast<int>(c.suffix.size());
    double s = 0.0;
    for (const auto& [k, v] : dist_)
        if (key_truncated(k) && key_len(k) < lc) s += v;
    return s;
}

double TailWalker::total_mass() const {
    double s = 0.0;
    for (const auto& [k, v] : dist_) s += v;
    return s;
}

StationarityReport stationarity_report(const AtomicMeasure& lam, const AtomicMeasure& mu, int n,
                                       const std::vector<Cylinder>& suffixes, QParam q,
                                       int max_tracked) {
    TailWalker wa(lam, q, max_tracked);
    TailWalker we(AtomicMeasure::point(Word{}), q, max_tracked);
    wa.run(mu, n);
    we.run(mu, n);
    StationarityReport rep;
    rep.lost = wa.lost_mass() + we.lost_mass();
    for (const auto& c : suffixes) {
        rep.masses.push_back(wa.cylinder_mass(c));
        rep.ref_masses.push_back(we.cylinder_mass(c));
        rep.lost += wa.cylinder_uncertainty(c) + we.cylinder_uncertainty(c);
        rep.gap = std::max(rep.gap, std::abs(rep.masses.back() - rep.ref_masses.back()));
    }
    return rep;
}

double stationarity_gap(const AtomicMeasure& lam, const AtomicMeasure& mu, int n,
                        const std::vector<Cylinder>& suffixes, QParam q, int max_tracked) {
    return stationarity_report(lam, mu, n, suffixes, q, max_tracked).gap;
}

double hitting_estimate(const Word& x, const Cylinder& c, const AtomicMeasure& mu, int n,
                        QParam q, int max_tracked) {
    TailWalker w(AtomicMeasure::point(x), q, max_tracked);
    w.run(mu, n);
    return w.cylinder_mass(c);
}

EstimateInstance random_estimate_instance(QParam q, std::uint64_t seed, std::uint64_t trial,
                                          std::size_t maxlen, std::size_t N) {
    (void)q;
    CounterRng rng(seed, trial);
    auto random_word = [&rng](std::size_t len) {
        std::string s(len, 'a');
        for (auto& c : s)
            if (rng.below(2)) c = 'b';
        return Word{std::move(s)};
    };
    EstimateInstance inst;
    inst.N = N;
    const std::size_t k = rng.below(5);
    inst.x_tail = random_word(N + k);
    inst.y = random_word(rng.below(4)) + inst.x_tail;
    const std::size_t natoms = 1 + rng.below(6);
    double total = 0.0;
    std::vector<std::pair<Word, double>> atoms;
    for (std::size_t i = 0; i < natoms; ++i) {
        const double mass = rng.uniform() + 1e-3;
        atoms.emplace_back(random_word(rng.below(maxlen + 1)), mass);
        total += mass;
    }
    for (auto& [w, m] : atoms) inst.lam.add(w, m / total);
    return inst;
}

std::vector<Word> words_up_to(std::size_t maxlen) {
    std::vector<Word> out;
    for (std::size_t len = 0; len <= maxlen; ++len) {
        for (std::uint64_t v = 0; v < (1ull << len); ++v) {
            std::string s(len, 'a');
            for (std::size_t p = 0; p < len; ++p)
                if ((v >> (len - 1 - p)) & 1ull) s[p] = 'b';
            out.push_back(Word{std::move(s)});
        }
    }
    return out;
}

}  // namespace fusionwalk
