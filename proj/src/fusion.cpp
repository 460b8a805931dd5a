#include "fusionwalk/fusion.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fusionwalk {

double DimCache::operator()(const Word& w) {
    // Evaluate on the smaller of w and involute(w): the two dimensions agree,
    // and a single representative makes the equality exact in floating point.
    Word canon = w;
    if (Word inv = w.involute(); inv < canon) canon = std::move(inv);
    if (auto it = ids_.find(canon.letters()); it != ids_.end()) return dims_[it->second];
    // Fill the whole prefix chain, reusing the longest cached prefix.
    const std::string& s = canon.letters();
    std::size_t k = s.size();
    while (k > 0 && !ids_.count(s.substr(0, k))) --k;
    const double delta = q_.delta();
    double prev = 0.0;  // d of the length-(k-1) prefix, unused at k == 0
    double cur = 1.0;   // d of the length-k prefix
    if (k > 0) {
        cur = dims_[ids_.at(s.substr(0, k))];
        prev = (k == 1) ? 1.0 : dims_[ids_.at(s.substr(0, k - 1))];
    } else {
        auto [it, fresh] = ids_.emplace(std::string{}, static_cast<std::uint32_t>(dims_.size()));
        if (fresh) dims_.push_back(1.0);
    }
    for (; k < s.size(); ++k) {
        const char g = s[k];
        double next = cur * delta;
        if (k > 0 && s[k - 1] == Word::swap_letter(g)) next -= prev;
        prev = cur;
        cur = next;
        ids_.emplace(s.substr(0, k + 1), static_cast<std::uint32_t>(dims_.size()));
        dims_.push_back(cur);
    }
    if (!(cur >= 1.0) || !std::isfinite(cur))
        throw std::logic_error("DimCache: dimension left the valid range [1, inf)");
    return cur;
}

double qdim(const Word& w, QParam q) {
    thread_local std::map<double, DimCache> caches;
    auto it = caches.find(q.q());
    if (it == caches.end()) it = caches.emplace(q.q(), DimCache{q}).first;
    return it->second(w);
}

void FusionMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    assert(x.size() == size());
    y.assign(size(), 0.0);
    for (std::size_t t = 0; t < cols.size(); ++t)
        for (const auto& [s, m] : cols[t]) y[s] += m * x[t];
}

void FusionMatrix::apply_transpose(const std::vector<double>& x, std::vector<double>& y) const {
    assert(x.size() == size());
    y.assign(size(), 0.0);
    for (std::size_t t = 0; t < cols.size(); ++t)
        for (const auto& [s, m] : cols[t]) y[t] += m * x[s];
}

}  // namespace fusionwalk
