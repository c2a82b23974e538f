#include "kentropy/measures.hpp"

#include <cmath>
#include <string>

namespace kentropy {

namespace {

void check_cardinality(std::size_t n, Cardinality w) {
    if (n < 2) {
        throw DomainError("measures need n >= 2, got n = " + std::to_string(n));
    }
    const auto n2 = static_cast<Cardinality>(n) * n;
    if (w < n || w > n2) {
        throw DomainError("cardinality " + std::to_string(w) + " outside [" + std::to_string(n) + ", " +
                          std::to_string(n2) + "]");
    }
}

KnowledgeMetrics bundle(std::size_t n, Cardinality w, SourceKind kind) {
    KnowledgeMetrics m;
    m.n = n;
    m.cardinality = w;
    m.knowledge = knowledge_from_cardinality(n, w);
    m.ignorance = ignorance_from_cardinality(n, w);
    m.entropy = entropy_from_cardinality(n, w);
    m.source_kind = kind;
    return m;
}

}  // namespace

std::string_view to_string(SourceKind kind) noexcept {
    switch (kind) {
        case SourceKind::partition_based: return "partition";
        case SourceKind::preference_based: return "preference";
    }
    return "unknown";
}

double KnowledgeMetrics::complement_residual() const noexcept { return std::abs(knowledge + ignorance - 1.0); }

double KnowledgeMetrics::entropy_residual() const noexcept { return std::abs(entropy - ignorance - 1.0); }

double knowledge_from_cardinality(std::size_t n, Cardinality w) {
    check_cardinality(n, w);
    const double nd = static_cast<double>(n);
    return std::log(nd * nd / static_cast<double>(w)) / std::log(nd);
}

double ignorance_from_cardinality(std::size_t n, Cardinality w) {
    check_cardinality(n, w);
    const double nd = static_cast<double>(n);
    return std::log(static_cast<double>(w) / nd) / std::log(nd);
}

double entropy_from_cardinality(std::size_t n, Cardinality w) {
    check_cardinality(n, w);
    return std::log(static_cast<double>(w)) / std::log(static_cast<double>(n));
}

double knowledge_of_partition(const Partition& p) { return knowledge_from_cardinality(p.size(), uncertainty_W(p)); }

double ignorance_of_partition(const Partition& p) { return ignorance_from_cardinality(p.size(), uncertainty_W(p)); }

double knowledge_entropy_of_partition(const Partition& p) {
    return entropy_from_cardinality(p.size(), uncertainty_W(p));
}

double knowledge_of_ps(const PreferenceSequence& ps) { return knowledge_from_cardinality(ps.size(), ps_cardinality(ps)); }

double ignorance_of_ps(const PreferenceSequence& ps) { return ignorance_from_cardinality(ps.size(), ps_cardinality(ps)); }

double entropy_of_ps(const PreferenceSequence& ps) { return entropy_from_cardinality(ps.size(), ps_cardinality(ps)); }

KnowledgeMetrics metrics(const Partition& p) { return bundle(p.size(), uncertainty_W(p), SourceKind::partition_based); }

KnowledgeMetrics metrics(const PreferenceSequence& ps) {
    return bundle(ps.size(), ps_cardinality(ps), SourceKind::preference_based);
}

double entropy_exchange_residual(const Partition& before, const Partition& after) {
    if (!(before.base() == after.base())) {
        throw InputError("entropy exchange needs partitions over the same object set");
    }
    const double k_gain = knowledge_of_partition(after) - knowledge_of_partition(before);
    const double s_loss = knowledge_entropy_of_partition(before) - knowledge_entropy_of_partition(after);
    return k_gain - s_loss;
}

}  // namespace kentropy
