#pragma once

// Non-additivity of the knowledge measure, rater comparison, and the contrast
// with Shannon entropy.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kentropy/core_model.hpp"
#include "kentropy/records.hpp"

namespace kentropy {

struct AdditivityReport {
    std::size_t n = 0;
    std::vector<double> k_values;
    double k_sum = 0.0;
    /// W with K(W) = k_sum over n objects, i.e. n^(2 - k_sum).
    double implied_cardinality = 0.0;
    /// implied_cardinality lies in [n, n^2] (within 1e-12 relative).
    bool feasible = false;
    /// Only for decompositions: K of the whole partition and k_sum - k_whole.
    std::optional<double> k_whole;
    std::optional<double> gap;
};

/// W realizing knowledge level `k` over `n` objects. Not clamped.
double implied_cardinality(std::size_t n, double k);

/// Can one partition over n objects carry the summed knowledge of two raters?
/// Throws DomainError unless n >= 2 and both levels are in [0, 1].
AdditivityReport pairwise_additivity_check(double k_a, double k_b, std::size_t n);

/// K on the whole set against the sum of K over the restrictions to `blocks`.
/// Blocks must be disjoint, cover p's base and hold at least 2 objects each
/// (DomainError for smaller blocks, InputError otherwise).
AdditivityReport decomposition_check(const Partition& p, std::span<const ObjectSet> blocks);

/// -sum P_i ln P_i. Weights must be positive and sum to 1 within 1e-9
/// (InputError otherwise).
double shannon_entropy(std::span<const double> weights);

/// Relative class sizes |c| / n of a partition, in canonical class order.
std::vector<double> class_size_distribution(const Partition& p);

struct AdditivityContrast {
    AdditivityReport knowledge;

    double entropy_whole = 0.0;
    std::vector<double> entropy_blocks;
    double entropy_block_sum = 0.0;
    /// entropy_block_sum - entropy_whole
    double entropy_gap = 0.0;
    bool entropy_gap_nonzero = false;

    double shannon_whole = 0.0;
    /// |block| / n
    std::vector<double> block_weights;
    std::vector<double> shannon_blocks;
    /// H(block_weights) + sum_b w_b * shannon_blocks[b]
    double shannon_decomposed = 0.0;
    /// shannon_decomposed - shannon_whole; zero whenever blocks_respect_classes.
    double shannon_gap = 0.0;
    /// Every class of p lies inside a single block.
    bool blocks_respect_classes = false;
};

/// Side-by-side decomposition of Shannon entropy (class-size distribution)
/// and knowledge entropy over the same blocks. Same preconditions as
/// decomposition_check.
AdditivityContrast additivity_contrast_report(const Partition& p, std::span<const ObjectSet> blocks);

/// Sorted by descending knowledge, ties broken by ascending rater_id.
/// Throws InputError when records span different object sets or repeat an id.
std::vector<RaterRecord> rank_raters(std::vector<RaterRecord> records);

}  // namespace kentropy
