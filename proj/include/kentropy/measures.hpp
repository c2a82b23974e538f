#pragma once

// Knowledge K, ignorance I and knowledge entropy S computed from the
// cardinality of a partition (W) or a preference sequence (|PS|):
//
//   K = ln(n^2 / W) / ln n      I = ln(W / n) / ln n      S = ln W / ln n
//
// so that K + I = 1 and S = I + 1. K and I are each evaluated from their own
// formula; the identities are checked, not assumed.

#include <cstddef>
#include <string_view>

#include "kentropy/core_model.hpp"

namespace kentropy {

/// Tolerance for the algebraic identities between measures.
inline constexpr double kIdentityTolerance = 1e-12;

enum class SourceKind { partition_based, preference_based };

std::string_view to_string(SourceKind kind) noexcept;

struct KnowledgeMetrics {
    std::size_t n = 0;
    Cardinality cardinality = 0;
    double knowledge = 0.0;
    double ignorance = 0.0;
    double entropy = 0.0;
    SourceKind source_kind = SourceKind::partition_based;

    /// |K + I - 1|
    double complement_residual() const noexcept;
    /// |S - I - 1|
    double entropy_residual() const noexcept;
};

// Cardinality-level formulas. Throw DomainError unless n >= 2 and n <= w <= n^2.
double knowledge_from_cardinality(std::size_t n, Cardinality w);
double ignorance_from_cardinality(std::size_t n, Cardinality w);
double entropy_from_cardinality(std::size_t n, Cardinality w);

double knowledge_of_partition(const Partition& p);
double ignorance_of_partition(const Partition& p);
double knowledge_entropy_of_partition(const Partition& p);

double knowledge_of_ps(const PreferenceSequence& ps);
double ignorance_of_ps(const PreferenceSequence& ps);
double entropy_of_ps(const PreferenceSequence& ps);

KnowledgeMetrics metrics(const Partition& p);
KnowledgeMetrics metrics(const PreferenceSequence& ps);

/// [K(after) - K(before)] - [S(before) - S(after)]. Zero up to rounding for
/// any two partitions over the same set: a gain in knowledge is exactly a
/// loss of knowledge entropy. Throws InputError on mismatched object sets.
double entropy_exchange_residual(const Partition& before, const Partition& after);

}  // namespace kentropy
