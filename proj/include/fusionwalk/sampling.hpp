#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "fusionwalk/measure.hpp"
#include "fusionwalk/qparam.hpp"
#include "fusionwalk/word.hpp"

namespace fusionwalk {

/// Philox-4x32-10 counter-based generator (Salmon et al., SC 2011). Stateless:
/// every 128-bit counter/64-bit key pair maps to four independent 32-bit
/// outputs, so draws keyed by (seed, path, step) are reproducible under any
/// scheduling of the work.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

/// One uniform double in [0,1) from the (seed, path, step, draw) cell.
double counter_uniform(std::uint64_t seed, std::uint64_t path, std::uint32_t step,
                       std::uint32_t draw = 0);

/// Sequential facade over the counter generator: a stream is (seed, stream id)
/// and draws advance an internal counter. Used for randomized test instances.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    double uniform() {
        const std::uint32_t n = next_++;
        return counter_uniform(seed_, stream_, n >> 2, n & 3);
    }

    /// Uniform integer in [0, bound) by 64-bit multiply-shift.
    std::uint32_t below(std::uint32_t bound) {
        const auto u = static_cast<std::uint64_t>(uniform() * 4294967296.0);
        return static_cast<std::uint32_t>((u * bound) >> 32);
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint32_t next_ = 0;
};

/// One sampled trajectory of the fusion walk. Steps act by left convolution,
/// x_{m+1} ~ mu * delta_{x_m}, so letters accumulate away from the tail and
/// the last letters freeze as the path escapes to the boundary.
struct PathSample {
    std::uint64_t seed = 0;
    std::uint64_t path_index = 0;
    std::vector<Word> states;  // x_0 = e, ..., x_steps
    /// First step index m such that the last tail_N letters of x_m exist and
    /// never change afterwards; empty if that never happens within the run.
    std::optional<int> stabilize_step;
};

/// Samples one path of `steps` steps. Deterministic in (seed, path_index).
PathSample sample_path(const AtomicMeasure& mu, int steps, std::uint64_t seed, QParam q,
                       int tail_N, std::uint64_t path_index = 0);

struct PathBatchRow {
    std::uint64_t path_index;
    Word final_word;
    std::optional<int> stabilize_step;
};

struct PathBatch {
    std::vector<PathBatchRow> rows;  // ordered by path_index
    double stabilized_fraction = 0.0;
};

/// Samples `paths` trajectories on `workers` threads. Rows are keyed by the
/// counter generator, so the result is identical for any worker count.
PathBatch run_paths(const AtomicMeasure& mu, std::uint64_t paths, int steps, std::uint64_t seed,
                    QParam q, int tail_N, int workers = 1);

}  // namespace fusionwalk
