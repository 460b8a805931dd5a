#include "fusionwalk/measure.hpp"

#include <string>

#include "fusionwalk/fusion.hpp"

namespace fusionwalk {

AtomicMeasure convolve_point(const Word& z, const Word& y, QParam q) {
    AtomicMeasure out;
    const double dz = qdim(z, q);
    const double dy = qdim(y, q);
    const std::size_t jmax = std::min(z.size(), y.size());
    for (std::size_t j = 0; j <= jmax; ++j) {
        const Word u = z.suffix(j);
        if (!y.starts_with(u.involute())) continue;
        Word atom = z.prefix(z.size() - j) + y.drop_first(j);
        const double w = qdim(atom, q) / (dz * dy);
        out.add(atom, w);
    }
    return out;
}

AtomicMeasure convolve(const AtomicMeasure& lam, const AtomicMeasure& m, QParam q) {
    AtomicMeasure out;
    for (const auto& [z, mz] : lam.atoms())
        for (const auto& [y, my] : m.atoms()) {
            const AtomicMeasure part = convolve_point(z, y, q);
            for (const auto& [w, p] : part.atoms()) out.add(w, mz * my * p);
        }
    out.add_pruned(lam.pruned_mass() + m.pruned_mass());
    return out;
}

AtomicMeasure convolve_power(const AtomicMeasure& m, int n, double prune_eps, QParam q,
                             std::size_t support_cap) {
    if (n < 0) throw std::invalid_argument("convolve_power: n must be nonnegative");
    AtomicMeasure acc = AtomicMeasure::point(Word{});
    for (int k = 0; k < n; ++k) {
        acc = convolve(acc, m, q);
        acc.prune(prune_eps);
        if (acc.support_size() > support_cap)
            throw SupportOverflowError(
                "convolve_power: support exceeded " + std::to_string(support_cap) +
                " atoms at step " + std::to_string(k + 1) +
                "; raise the prune threshold or lower n");
    }
    return acc;
}

double cylinder_mass(const AtomicMeasure& lam, const Cylinder& c) {
    double s = 0.0;
    for (const auto& [w, m] : lam.atoms())
        if (w.ends_with(c.suffix)) s += m;
    return s;
}

Word tail_word(const Word& z, std::size_t N) {
    if (z.size() < N) throw std::invalid_argument("tail_word: word shorter than N");
    return z.suffix(N);
}

}  // namespace fusionwalk
