#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionwalk/fusion.hpp"
#include "fusionwalk/qparam.hpp"

namespace fusionwalk {

/// Row-stochastic-up-to-leak transition matrix on a truncated label set.
/// Row x holds p(x, w) for the targets w inside the truncation; `leak[x]` is
/// the mass stepping outside it. Row sum plus leak is 1 within 1e-12.
struct TransitionKernel {
    std::vector<std::string> labels;  // serialized labels, row/column order
    std::string step_desc;            // the driving step measure, serialized
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
    std::vector<double> leak;

    std::size_t size() const noexcept { return labels.size(); }

    double prob(std::size_t x, std::size_t w) const {
        for (const auto& [c, p] : rows.at(x))
            if (c == w) return p;
        return 0.0;
    }

    /// Left action of the kernel on a row vector: out[w] = sum_x v[x] p(x,w).
    /// Returns the mass lost through the leak.
    double apply_left(std::span<const double> v, std::vector<double>& out) const {
        if (v.size() != size()) throw std::invalid_argument("TransitionKernel: size mismatch");
        out.assign(size(), 0.0);
        double lost = 0.0;
        for (std::size_t x = 0; x < size(); ++x) {
            for (const auto& [c, p] : rows[x]) out[c] += v[x] * p;
            lost += v[x] * leak[x];
        }
        return lost;
    }
};

/// Transition kernel of the fusion random walk driven by a step measure mu:
///     p(x, w) = sum_s mu(s) N_{x,s}^w d(w) / (d(x) d(s)),
/// the classical shadow of the convolution operator on the truncation.
template <FusionSystemLike S>
TransitionKernel walk_kernel(const S& sys,
                             const std::vector<std::pair<typename S::Label, double>>& mu,
                             const std::vector<typename S::Label>& labels, QParam q) {
    std::unordered_map<std::string, std::uint32_t> index;
    TransitionKernel k;
    k.labels.reserve(labels.size());
    for (std::uint32_t i = 0; i < labels.size(); ++i) {
        auto key = sys.label_str(labels[i]);
        if (!index.emplace(key, i).second)
            throw std::invalid_argument("walk_kernel: truncation labels must be distinct");
        k.labels.push_back(std::move(key));
    }
    for (const auto& [s, ms] : mu) {
        if (!k.step_desc.empty()) k.step_desc += ',';
        k.step_desc += sys.label_str(s);
    }
    k.rows.resize(labels.size());
    k.leak.assign(labels.size(), 0.0);
    for (std::uint32_t x = 0; x < labels.size(); ++x) {
        const double dx = sys.dim(labels[x], q);
        std::unordered_map<std::uint32_t, double> row;
        for (const auto& [s, ms] : mu) {
            if (!sys.valid(s)) throw std::invalid_argument("walk_kernel: invalid step label");
            const double ds = sys.dim(s, q);
            for (const auto& [w, mult] : sys.tensor(labels[x], s)) {
                const double p = ms * mult * sys.dim(w, q) / (dx * ds);
                auto it = index.find(sys.label_str(w));
                if (it == index.end())
                    k.leak[x] += p;
                else
                    row[it->second] += p;
            }
        }
        k.rows[x].assign(row.begin(), row.end());
        std::sort(k.rows[x].begin(), k.rows[x].end());
    }
    return k;
}

/// Max over interior rows (leak < 1e-9) of |sum_w p(x,w) f(w) - f(x)|, the
/// harmonicity defect of f on the truncation. f is indexed like kernel.labels.
double harmonic_residual(std::span<const double> f, const TransitionKernel& kernel);

}  // namespace fusionwalk
