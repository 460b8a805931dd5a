#include "fusionwalk/sampling.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fusionwalk/fusion.hpp"

namespace fusionwalk {

namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mul_hi_lo(kPhiloxM4x32A, ctr[0], lo0, hi0);
        mul_hi_lo(kPhiloxM4x32B, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW32A;
        key[1] += kPhiloxW32B;
    }
    return ctr;
}

double counter_uniform(std::uint64_t seed, std::uint64_t path, std::uint32_t step,
                       std::uint32_t draw) {
    const auto r = Philox4x32::block({static_cast<std::uint32_t>(path),
                                      static_cast<std::uint32_t>(path >> 32), step, draw},
                                     {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)});
    const std::uint64_t u = (static_cast<std::uint64_t>(r[0]) << 32) | r[1];
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

namespace {

// Walk state with the suffix-dimension stack dims[k] = d(last k letters),
// updated in O(|step word|) per move.
struct WalkState {
    std::string letters;
    std::vector<double> dims;  // size letters.size() + 1, dims[0] = 1

    explicit WalkState() : dims{1.0} {}

    double dim() const { return dims.back(); }
};

struct Candidate {
    double weight;
    int drop_front;                // letters removed from the front of x
    const std::string* step_word;  // s
    int keep_step;                 // |s0| = leading letters of s to prepend
    double new_dim_cache[64];      // dims of the prepended segment, outermost last
};

// Enumerates the atoms of mu * delta_x. For each step word s and middle u
// (s = s0 u, involute(u) a prefix of x) the outcome is s0 x0 with weight
// mu(s) d(s0 x0) / (d(s) d(x)).
void enumerate_moves(const WalkState& st, const std::vector<std::pair<Word, double>>& mu_atoms,
                     const std::vector<double>& mu_dims, QParam q,
                     std::vector<Candidate>& out) {
    out.clear();
    const double delta = q.delta();
    const std::string& x = st.letters;
    const int xlen = static_cast<int>(x.size());
    for (std::size_t ai = 0; ai < mu_atoms.size(); ++ai) {
        const std::string& s = mu_atoms[ai].first.letters();
        const double ms = mu_atoms[ai].second;
        const double ds = mu_dims[ai];
        const int slen = static_cast<int>(s.size());
        for (int j = 0; j <= std::min(slen, xlen); ++j) {
            // u = last j letters of s; involute(u) must be a prefix of x.
            bool admissible = true;
            for (int t = 0; t < j; ++t) {
                if (x[t] != Word::swap_letter(s[slen - 1 - t])) {
                    admissible = false;
                    break;
                }
            }
            if (!admissible) continue;
            Candidate c;
            c.drop_front = j;
            c.step_word = &s;
            c.keep_step = slen - j;
            if (c.keep_step >= 60) throw std::invalid_argument("sample_path: step word too long");
            // Prepend s0 right-to-left onto x0; d(g v) = delta d(v) - d(v')
            // when v starts with the swapped letter of g.
            double cur = st.dims[xlen - j];
            double prev = (xlen - j >= 1) ? st.dims[xlen - j - 1] : 0.0;
            char front = (xlen - j >= 1) ? x[j] : '\0';
            for (int t = c.keep_step - 1; t >= 0; --t) {
                const char g = s[t];
                double next = delta * cur;
                if (front != '\0' && front == Word::swap_letter(g)) next -= prev;
                prev = cur;
                cur = next;
                front = g;
                c.new_dim_cache[c.keep_step - 1 - t] = cur;
            }
            c.weight = ms * cur / (ds * st.dim());
            out.push_back(c);
        }
    }
}

void apply_move(WalkState& st, const Candidate& c) {
    st.dims.resize(st.dims.size() - c.drop_front);
    st.letters.erase(0, c.drop_front);
    for (int t = 0; t < c.keep_step; ++t) st.dims.push_back(c.new_dim_cache[t]);
    st.letters.insert(0, c.step_word->substr(0, c.keep_step));
}

std::optional<int> find_stabilize_step(const std::vector<Word>& states, int tail_N) {
    const Word& last = states.back();
    if (last.size() < static_cast<std::size_t>(tail_N)) return std::nullopt;
    const Word target = last.suffix(tail_N);
    int m = static_cast<int>(states.size()) - 1;
    for (int i = m; i >= 0; --i) {
        if (states[i].size() >= static_cast<std::size_t>(tail_N) &&
            states[i].ends_with(target))
            m = i;
        else
            break;
    }
    return m;
}

}  // namespace

PathSample sample_path(const AtomicMeasure& mu, int steps, std::uint64_t seed, QParam q,
                       int tail_N, std::uint64_t path_index) {
    if (steps < 0) throw std::invalid_argument("sample_path: steps must be nonnegative");
    if (tail_N < 1) throw std::invalid_argument("sample_path: tail_N must be positive");

    std::vector<std::pair<Word, double>> mu_atoms(mu.atoms().begin(), mu.atoms().end());
    std::vector<double> mu_dims;
    mu_dims.reserve(mu_atoms.size());
    for (const auto& [s, m] : mu_atoms) mu_dims.push_back(qdim(s, q));

    PathSample out;
    out.seed = seed;
    out.path_index = path_index;
    out.states.reserve(steps + 1);
    WalkState st;
    out.states.push_back(Word{});
    std::vector<Candidate> moves;
    for (int step = 0; step < steps; ++step) {
        enumerate_moves(st, mu_atoms, mu_dims, q, moves);
        double total = 0.0;
        for (const auto& c : moves) total += c.weight;
        const double u = counter_uniform(seed, path_index, static_cast<std::uint32_t>(step));
        double acc = 0.0;
        const Candidate* pick = &moves.back();
        for (const auto& c : moves) {
            acc += c.weight;
            if (u * total < acc) {
                pick = &c;
                break;
            }
        }
        apply_move(st, *pick);
        out.states.push_back(Word{st.letters});
    }
    out.stabilize_step = find_stabilize_step(out.states, tail_N);
    return out;
}

PathBatch run_paths(const AtomicMeasure& mu, std::uint64_t paths, int steps, std::uint64_t seed,
                    QParam q, int tail_N, int workers) {
    if (workers < 1) workers = 1;
    PathBatch batch;
    batch.rows.resize(paths);
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            PathSample p = sample_path(mu, steps, seed, q, tail_N, i);
            batch.rows[i] = PathBatchRow{i, p.states.back(), p.stabilize_step};
        }
    };
    if (workers == 1 || paths < 2) {
        work(0, paths);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::uint64_t b = std::min<std::uint64_t>(paths, w * chunk);
            const std::uint64_t e = std::min<std::uint64_t>(paths, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& t : pool) t.join();
    }
    std::uint64_t stabilized = 0;
    for (const auto& r : batch.rows)
        if (r.stabilize_step && *r.stabilize_step < steps) ++stabilized;
    batch.stabilized_fraction = paths == 0 ? 0.0 : static_cast<double>(stabilized) / paths;
    return batch;
}

}  // namespace fusionwalk
