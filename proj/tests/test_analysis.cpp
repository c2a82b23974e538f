#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kentropy/analysis.hpp"
#include "oracles.hpp"

using namespace kentropy;

namespace {

ObjectSet xs(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return ObjectSet::from_names(names);
}

Partition cassie() { return Partition::from_names(xs(4), {{"x1"}, {"x2", "x3"}, {"x4"}}); }

std::vector<ObjectSet> cassie_blocks() {
    return {ObjectSet::from_names({"x1", "x4"}), ObjectSet::from_names({"x2", "x3"})};
}

}  // namespace

TEST_CASE("pairwise additivity: two raters over three objects") {
    const double k_alan = std::log(9.0 / 5.0) / std::log(3.0);
    const double k_barbara = std::log(9.0 / 3.0) / std::log(3.0);
    CHECK(k_barbara == doctest::Approx(1.0).epsilon(1e-15));
    const auto r = pairwise_additivity_check(k_alan, k_barbara, 3);
    CHECK(r.n == 3);
    CHECK(r.k_values.size() == 2);
    CHECK(r.k_sum == doctest::Approx(k_alan + k_barbara));
    CHECK(std::abs(r.implied_cardinality - 15.0 / 9.0) < 1e-9);
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.k_whole.has_value());
}

TEST_CASE("pairwise additivity: zero knowledge is the identity") {
    const auto zero = pairwise_additivity_check(0.0, 0.0, 3);
    CHECK(zero.implied_cardinality == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(zero.feasible);

    const auto john = pairwise_additivity_check(0.6348, 0.0, 5);
    CHECK(std::abs(john.implied_cardinality - 9.0) < 1e-3);
    CHECK(john.feasible);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = 2 + rng() % 100;
        const double k = unit(rng);
        const auto r = pairwise_additivity_check(k, 0.0, n);
        CHECK(r.feasible);
        CHECK(r.implied_cardinality == doctest::Approx(std::pow(static_cast<double>(n), 2.0 - k)).epsilon(1e-12));
    }
}

TEST_CASE("pairwise additivity rejects bad levels") {
    CHECK_THROWS_AS(pairwise_additivity_check(1.2, 0.0, 3), DomainError);
    CHECK_THROWS_AS(pairwise_additivity_check(0.5, -0.1, 3), DomainError);
    CHECK_THROWS_AS(pairwise_additivity_check(0.5, 0.5, 1), DomainError);
}

TEST_CASE("decomposition: Cassie's four objects") {
    const auto blocks = cassie_blocks();
    const auto r = decomposition_check(cassie(), blocks);
    REQUIRE(r.k_whole.has_value());
    CHECK(std::abs(*r.k_whole - std::log(16.0 / 6.0) / std::log(4.0)) < 1e-12);
    CHECK(std::abs(*r.k_whole - 0.7075) < 5e-5);
    REQUIRE(r.k_values.size() == 2);
    CHECK(r.k_values[0] == 1.0);
    CHECK(r.k_values[1] == 0.0);
    CHECK(r.k_sum == 1.0);
    REQUIRE(r.gap.has_value());
    CHECK(std::abs(*r.gap - 0.2925) < 5e-5);
    CHECK(r.feasible);  // K = 1 is realizable on four objects, just not by Cassie
}

TEST_CASE("decomposition: degenerate cases") {
    const auto blocks = cassie_blocks();
    const auto fine = decomposition_check(Partition::singletons(xs(4)), blocks);
    CHECK(*fine.k_whole == 1.0);
    CHECK(fine.k_sum == 2.0);
    CHECK(*fine.gap == 1.0);

    const auto coarse = decomposition_check(Partition::single_class(xs(4)), blocks);
    CHECK(*coarse.k_whole == 0.0);
    CHECK(coarse.k_sum == 0.0);
    CHECK(*coarse.gap == 0.0);
}

TEST_CASE("decomposition input errors") {
    const auto p = cassie();
    std::vector<ObjectSet> overlap{ObjectSet::from_names({"x1", "x2"}), ObjectSet::from_names({"x2", "x3", "x4"})};
    CHECK_THROWS_AS(decomposition_check(p, overlap), InputError);
    std::vector<ObjectSet> partial{ObjectSet::from_names({"x1", "x2"})};
    CHECK_THROWS_AS(decomposition_check(p, partial), InputError);
    std::vector<ObjectSet> foreign{ObjectSet::from_names({"x1", "x2"}), ObjectSet::from_names({"x3", "y"})};
    CHECK_THROWS_AS(decomposition_check(p, foreign), InputError);
    CHECK_THROWS_AS(decomposition_check(p, std::vector<ObjectSet>{}), InputError);
    // One-object blocks cannot even be formed.
    CHECK_THROWS_AS(ObjectSet::from_names({"x1"}), ConstructionError);
}

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(std::vector<double>{1.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(shannon_entropy(std::vector<double>{0.2, 0.4, 0.4}) == doctest::Approx(1.0549201679861442).epsilon(1e-14));
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{0.5, 0.6}), InputError);
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{1.0, 0.0}), InputError);
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{1.5, -0.5}), InputError);
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{}), InputError);

    const auto john = Partition::from_names(xs(5), {{"x1"}, {"x2", "x3"}, {"x4", "x5"}});
    CHECK(shannon_entropy(class_size_distribution(john)) == doctest::Approx(1.0549201679861442).epsilon(1e-14));
}

TEST_CASE("shannon entropy peaks at the uniform distribution") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    for (std::size_t m = 1; m <= 20; ++m) {
        const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
        const double peak = shannon_entropy(uniform);
        CHECK(peak == doctest::Approx(std::log(static_cast<double>(m))).epsilon(1e-12));
        for (int t = 0; t < 50; ++t) {
            std::vector<double> w(m);
            double total = 0;
            for (auto& x : w) total += (x = unit(rng));
            for (auto& x : w) x /= total;
            CHECK(shannon_entropy(w) <= peak + 1e-12);
        }
    }
}

TEST_CASE("additivity contrast: Cassie") {
    const auto blocks = cassie_blocks();
    const auto c = additivity_contrast_report(cassie(), blocks);
    CHECK(c.entropy_whole == doctest::Approx(2.0 - 0.7075187496394219).epsilon(1e-12));
    CHECK(c.entropy_block_sum == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(c.entropy_gap_nonzero);
    CHECK(c.blocks_respect_classes);
    CHECK(std::abs(c.shannon_gap) < 1e-12);
    CHECK(c.block_weights == std::vector<double>{0.5, 0.5});
}

TEST_CASE("additivity contrast: single class") {
    const auto blocks = cassie_blocks();
    const auto c = additivity_contrast_report(Partition::single_class(xs(4)), blocks);
    CHECK(*c.knowledge.gap == 0.0);
    CHECK(c.shannon_whole == 0.0);
    // The blocks split the one class, so the Shannon chain rule adds H(weights).
    CHECK_FALSE(c.blocks_respect_classes);
    CHECK(c.shannon_decomposed == doctest::Approx(std::log(2.0)));
    // Knowledge entropy of a single class is 2 on every set, so it is not additive either.
    CHECK(c.entropy_whole == doctest::Approx(2.0));
    CHECK(c.entropy_block_sum == doctest::Approx(4.0));
}

TEST_CASE("shannon decomposes exactly whenever blocks are unions of classes") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 4 + rng() % 20;
        const auto base = oracle::objects(n);
        const auto labels = oracle::random_labels(n, rng);
        const auto p = oracle::partition_of(base, labels);
        // two blocks made of whole classes; skip draws that leave a block too small
        std::vector<std::string> a, b;
        for (std::size_t i = 0; i < n; ++i) (labels[i] % 2 == 0 ? a : b).push_back(base[i].str());
        if (a.size() < 2 || b.size() < 2) continue;
        const std::vector<ObjectSet> blocks{ObjectSet::from_names(a), ObjectSet::from_names(b)};
        const auto c = additivity_contrast_report(p, blocks);
        CHECK(c.blocks_respect_classes);
        CHECK(std::abs(c.shannon_gap) < 1e-12);
    }
}

TEST_CASE("rank raters") {
    const auto base = xs(5);
    std::vector<RaterRecord> records;
    records.push_back(make_record("Expert1", WeakOrder::from_names(base, {{"x1"}, {"x2", "x3"}, {"x4", "x5"}})));
    records.push_back(make_record("Expert2", WeakOrder::from_names(base, {{"x1"}, {"x2", "x3", "x4"}, {"x5"}})));
    records.push_back(make_record("Expert3", WeakOrder::from_names(base, {{"x1", "x2"}, {"x3"}, {"x4"}, {"x5"}})));

    const auto ranked = rank_raters(records);
    REQUIRE(ranked.size() == 3);
    CHECK(ranked[0].rater_id == "Expert3");
    CHECK(ranked[1].rater_id == "Expert1");
    CHECK(ranked[2].rater_id == "Expert2");

    SUBCASE("invariant under input permutation") {
        auto shuffled = records;
        std::sort(shuffled.begin(), shuffled.end(),
                  [](const RaterRecord& a, const RaterRecord& b) { return a.rater_id < b.rater_id; });
        do {
            const auto again = rank_raters(shuffled);
            for (std::size_t i = 0; i < 3; ++i) CHECK(again[i].rater_id == ranked[i].rater_id);
        } while (std::next_permutation(shuffled.begin(), shuffled.end(),
                                       [](const RaterRecord& a, const RaterRecord& b) { return a.rater_id < b.rater_id; }));
    }
    SUBCASE("single record") {
        const auto one = rank_raters({records[1]});
        REQUIRE(one.size() == 1);
        CHECK(one[0].rater_id == "Expert2");
    }
    SUBCASE("ties break by id") {
        const auto p = Partition::from_names(base, {{"x1", "x2"}, {"x3", "x4", "x5"}});
        const auto tied = rank_raters({make_record("zed", p), make_record("amy", p)});
        CHECK(tied[0].rater_id == "amy");
        CHECK(tied[1].rater_id == "zed");
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(rank_raters({records[0], make_record("other", Partition::singletons(xs(4)))}), InputError);
        CHECK_THROWS_AS(rank_raters({records[0], records[0]}), InputError);
    }
    CHECK(rank_raters({}).empty());
}
