#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fusionwalk/qparam.hpp"
#include "fusionwalk/word.hpp"

namespace fusionwalk {

/// Memoized quantum dimensions for free-monoid words at a fixed q.
///
/// The generators have dimension delta = q + 1/q, and appending a letter g to
/// a word x obeys
///     d(x g) = delta d(x) - d(x')   if x ends in the swapped letter of g,
///     d(x g) = delta d(x)           otherwise,
/// with x' = x minus its last letter. This recursion is forced by additivity
/// of d over the tensor decomposition of x (x) g: the product either stays
/// irreducible or splits off exactly the length-(|x|-1) prefix word.
///
/// Words are interned to dense integer ids; dimensions live in a flat array
/// indexed by id. Each word is evaluated through the smaller of itself and
/// its involution, so d(involute(w)) = d(w) holds exactly. Instances are not
/// thread safe; qdim() keeps one per thread.
class DimCache {
public:
    explicit DimCache(QParam q) : q_(q) {}

    double operator()(const Word& w);

    QParam q() const noexcept { return q_; }

private:
    QParam q_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<double> dims_;
};

/// Quantum dimension of a free-monoid word; always >= 1 and finite.
/// Uses a per-thread cache keyed by q.
double qdim(const Word& w, QParam q);

/// Fusion data of the free unitary family: labels are free-monoid words,
/// the unit is the empty word, conjugation is the word involution, and
/// x (x) y decomposes along common middles u with x = x0 u, y = involute(u) y0.
struct AufSystem {
    using Label = Word;

    Word unit() const { return Word{}; }
    Word conj(const Word& x) const { return x.involute(); }
    bool valid(const Word&) const { return true; }
    double dim(const Word& x, QParam q) const { return qdim(x, q); }
    std::string label_str(const Word& x) const { return x.str(); }
    Word parse_label(const std::string& s) const { return Word::parse(s); }
    std::string name() const { return "auf"; }

    /// Decomposition of x (x) y, multiplicity free, summand per admissible
    /// middle u in order of increasing |u| (so decreasing summand length).
    std::vector<std::pair<Word, int>> tensor(const Word& x, const Word& y) const {
        std::vector<std::pair<Word, int>> out;
        const std::size_t jmax = std::min(x.size(), y.size());
        for (std::size_t j = 0; j <= jmax; ++j) {
            const Word u = x.suffix(j);
            if (y.starts_with(u.involute()))
                out.emplace_back(x.prefix(x.size() - j) + y.drop_first(j), 1);
        }
        return out;
    }
};

/// Temperley-Lieb fusion data with spin-doubled integer labels (fundamental
/// object = 1, d(n) = [n+1]_q). With even_only set this is the integer-spin
/// restriction to even labels, the SO_q(3)-type fusion ring.
struct TemperleyLiebSystem {
    using Label = int;

    bool even_only = false;

    int unit() const { return 0; }
    int conj(int x) const { return x; }
    bool valid(int x) const { return x >= 0 && (!even_only || x % 2 == 0); }
    double dim(int x, QParam q) const { return qint(x + 1, q); }
    std::string label_str(int x) const { return std::to_string(x); }
    int parse_label(const std::string& s) const { return std::stoi(s); }
    std::string name() const { return even_only ? "spin" : "tl"; }

    std::vector<std::pair<int, int>> tensor(int x, int y) const {
        std::vector<std::pair<int, int>> out;
        for (int k = std::abs(x - y); k <= x + y; k += 2) out.emplace_back(k, 1);
        return out;
    }
};

template <typename S>
concept FusionSystemLike = requires(const S& s, const typename S::Label& x, QParam q) {
    { s.unit() } -> std::convertible_to<typename S::Label>;
    { s.conj(x) } -> std::convertible_to<typename S::Label>;
    { s.valid(x) } -> std::convertible_to<bool>;
    { s.dim(x, q) } -> std::convertible_to<double>;
    { s.tensor(x, x) } -> std::convertible_to<std::vector<std::pair<typename S::Label, int>>>;
    { s.label_str(x) } -> std::convertible_to<std::string>;
};

/// Multiplicity of z in x (x) y.
template <FusionSystemLike S>
int tensor_multiplicity(const S& sys, const typename S::Label& x,
                        const typename S::Label& y, const typename S::Label& z) {
    for (const auto& [w, m] : sys.tensor(x, y))
        if (w == z) return m;
    return 0;
}

/// |sum_z N_{x,y}^z d(z) - d(x) d(y)|, the defect of the dimension-function
/// axiom on one tensor product.
template <FusionSystemLike S>
double dimension_identity_residual(const S& sys, const typename S::Label& x,
                                   const typename S::Label& y, QParam q) {
    double lhs = 0.0;
    for (const auto& [z, m] : sys.tensor(x, y)) lhs += m * sys.dim(z, q);
    return std::abs(lhs - sys.dim(x, q) * sys.dim(y, q));
}

/// Sparse nonnegative integer matrix Gamma indexed by a truncated label list:
/// entry (s,t) is the multiplicity of label s in U (x) t. Stored by column.
/// Entries pointing outside the truncation are dropped (a corner of the full
/// fusion matrix).
struct FusionMatrix {
    std::string tensoring_label;            // U, serialized
    std::vector<std::string> labels;        // truncation, serialized, row/col order
    // cols[t] lists (row index s, multiplicity), ascending in s.
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cols;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t nonzeros() const noexcept {
        std::size_t n = 0;
        for (const auto& c : cols) n += c.size();
        return n;
    }

    int entry(std::size_t s, std::size_t t) const {
        for (const auto& [r, m] : cols.at(t))
            if (r == s) return static_cast<int>(m);
        return 0;
    }

    /// y = Gamma x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    /// y = Gamma^T x
    void apply_transpose(const std::vector<double>& x, std::vector<double>& y) const;
};

template <FusionSystemLike S>
FusionMatrix fusion_matrix(const S& sys, const typename S::Label& U,
                           const std::vector<typename S::Label>& labels) {
    std::unordered_map<std::string, std::uint32_t> index;
    FusionMatrix gamma;
    gamma.tensoring_label = sys.label_str(U);
    gamma.labels.reserve(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        auto key = sys.label_str(labels[i]);
        if (!index.emplace(key, i).second)
            throw std::invalid_argument("fusion_matrix: truncation labels must be distinct");
        gamma.labels.push_back(std::move(key));
    }
    gamma.cols.resize(labels.size());
    for (std::uint32_t t = 0; t < labels.size(); ++t) {
        for (const auto& [s, mult] : sys.tensor(U, labels[t])) {
            auto it = index.find(sys.label_str(s));
            if (it != index.end())
                gamma.cols[t].emplace_back(it->second, static_cast<std::uint32_t>(mult));
        }
        std::sort(gamma.cols[t].begin(), gamma.cols[t].end());
    }
    return gamma;
}

}  // namespace fusionwalk
