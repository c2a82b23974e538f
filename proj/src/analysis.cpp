#include "kentropy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "kentropy/measures.hpp"

namespace kentropy {

namespace {

constexpr double kFeasibleSlack = 1e-12;

bool within_range(double w, std::size_t n) {
    const double lo = static_cast<double>(n);
    const double hi = lo * lo;
    return w >= lo * (1.0 - kFeasibleSlack) && w <= hi * (1.0 + kFeasibleSlack);
}

void check_blocks(const Partition& p, std::span<const ObjectSet> blocks) {
    if (blocks.empty()) {
        throw InputError("decomposition needs at least one block");
    }
    std::vector<bool> seen(p.size(), false);
    for (const auto& block : blocks) {
        for (const auto& id : block.members()) {
            auto i = p.base().index_of(id.str());
            if (i == p.size()) {
                throw InputError("block object '" + id.str() + "' is not in the partition's object set");
            }
            if (seen[i]) {
                throw InputError("blocks overlap on object '" + id.str() + "'");
            }
            seen[i] = true;
        }
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!seen[i]) {
            throw InputError("blocks do not cover object '" + p.base()[i].str() + "'");
        }
    }
}

}  // namespace

double implied_cardinality(std::size_t n, double k) {
    return std::exp((2.0 - k) * std::log(static_cast<double>(n)));
}

AdditivityReport pairwise_additivity_check(double k_a, double k_b, std::size_t n) {
    if (n < 2) {
        throw DomainError("additivity check needs n >= 2");
    }
    for (double k : {k_a, k_b}) {
        if (!(k >= 0.0 && k <= 1.0)) {
            throw DomainError("knowledge level " + std::to_string(k) + " outside [0, 1]");
        }
    }
    AdditivityReport r;
    r.n = n;
    r.k_values = {k_a, k_b};
    r.k_sum = k_a + k_b;
    r.implied_cardinality = implied_cardinality(n, r.k_sum);
    r.feasible = within_range(r.implied_cardinality, n);
    return r;
}

AdditivityReport decomposition_check(const Partition& p, std::span<const ObjectSet> blocks) {
    check_blocks(p, blocks);
    // Unreachable while ObjectSet enforces n >= 2.
    for (const auto& block : blocks) {
        if (block.size() < 2) {
            throw DomainError("knowledge is undefined on a block of fewer than 2 objects");
        }
    }

    AdditivityReport r;
    r.n = p.size();
    for (const auto& block : blocks) {
        r.k_values.push_back(knowledge_of_partition(restrict_to(p, block)));
    }
    r.k_sum = std::accumulate(r.k_values.begin(), r.k_values.end(), 0.0);
    r.implied_cardinality = implied_cardinality(r.n, r.k_sum);
    r.feasible = within_range(r.implied_cardinality, r.n);
    r.k_whole = knowledge_of_partition(p);
    r.gap = r.k_sum - *r.k_whole;
    return r;
}

double shannon_entropy(std::span<const double> weights) {
    if (weights.empty()) {
        throw InputError("shannon entropy needs at least one weight");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InputError("shannon weights must be positive, got " + std::to_string(w));
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InputError("shannon weights sum to " + std::to_string(total) + ", not 1");
    }
    double h = 0.0;
    for (double w : weights) h -= w * std::log(w);
    return h;
}

std::vector<double> class_size_distribution(const Partition& p) {
    std::vector<double> out;
    out.reserve(p.classes().size());
    const double n = static_cast<double>(p.size());
    for (const auto& c : p.classes()) out.push_back(static_cast<double>(c.size()) / n);
    return out;
}

AdditivityContrast additivity_contrast_report(const Partition& p, std::span<const ObjectSet> blocks) {
    AdditivityContrast c;
    c.knowledge = decomposition_check(p, blocks);

    c.entropy_whole = knowledge_entropy_of_partition(p);
    const double n = static_cast<double>(p.size());
    c.blocks_respect_classes = true;
    for (const auto& block : blocks) {
        const auto sub = restrict_to(p, block);
        c.entropy_blocks.push_back(knowledge_entropy_of_partition(sub));
        c.block_weights.push_back(static_cast<double>(block.size()) / n);
        const auto dist = class_size_distribution(sub);
        c.shannon_blocks.push_back(shannon_entropy(dist));
        for (const auto& cls : sub.classes()) {
            const auto& whole_cls = p.classes()[p.class_of(p.base().index_of(block[cls.front()].str()))];
            if (whole_cls.size() != cls.size()) c.blocks_respect_classes = false;
        }
    }
    c.entropy_block_sum = std::accumulate(c.entropy_blocks.begin(), c.entropy_blocks.end(), 0.0);
    c.entropy_gap = c.entropy_block_sum - c.entropy_whole;
    c.entropy_gap_nonzero = std::abs(c.entropy_gap) > kIdentityTolerance;

    c.shannon_whole = shannon_entropy(class_size_distribution(p));
    c.shannon_decomposed = shannon_entropy(c.block_weights);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        c.shannon_decomposed += c.block_weights[b] * c.shannon_blocks[b];
    }
    c.shannon_gap = c.shannon_decomposed - c.shannon_whole;
    return c;
}

std::vector<RaterRecord> rank_raters(std::vector<RaterRecord> records) {
    if (!records.empty()) {
        const auto& base = base_of(records.front().source);
        std::set<std::string> ids;
        for (const auto& r : records) {
            if (!(base_of(r.source) == base)) {
                throw InputError("rater '" + r.rater_id + "' judged a different object set");
            }
            if (!ids.insert(r.rater_id).second) {
                throw InputError("duplicate rater id '" + r.rater_id + "'");
            }
        }
    }
    std::sort(records.begin(), records.end(), [](const RaterRecord& a, const RaterRecord& b) {
        if (a.metrics.knowledge != b.metrics.knowledge) return a.metrics.knowledge > b.metrics.knowledge;
        return a.rater_id < b.rater_id;
    });
    return records;
}

}  // namespace kentropy
