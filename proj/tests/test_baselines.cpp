#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>

#include "pairplan/baselines.hpp"

using namespace pairplan;

namespace {

FeatureVector feature(std::initializer_list<double> values, int view) {
    FeatureVector f;
    f.values = values;
    f.source_view = view;
    return f;
}

std::set<std::pair<int, int>> as_set(const std::vector<std::pair<int, int>>& pairs) {
    return {pairs.begin(), pairs.end()};
}

}  // namespace

TEST_CASE("complete_pairs counts match n(n-1)") {
    CHECK(complete_pairs(3).size() == 6);
    CHECK(complete_pairs(6).size() == 30);
    CHECK(complete_pairs(9).size() == 72);
    CHECK(complete_pairs(12).size() == 132);
    CHECK(complete_pairs(1).empty());
}

TEST_CASE("complete_pairs ordering and uniqueness") {
    const auto pairs = complete_pairs(4);
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : pairs) {
        CHECK(i != j);
        CHECK(seen.insert({i, j}).second);
    }
    CHECK(pairs.front() == std::pair<int, int>{0, 1});
    CHECK(pairs.back() == std::pair<int, int>{3, 2});
}

TEST_CASE("oneref_pairs counts match 2(n-1)") {
    CHECK(oneref_pairs(3, 1).size() == 4);
    CHECK(oneref_pairs(6, 3).size() == 10);
    CHECK(oneref_pairs(9, 4).size() == 16);
    CHECK(oneref_pairs(12, 6).size() == 22);
    CHECK(oneref_pairs(1, 0).empty());
    CHECK_THROWS_AS(oneref_pairs(3, 3), ValidationError);
    CHECK_THROWS_AS(oneref_pairs(3, -1), ValidationError);
}

TEST_CASE("oneref_pairs touches the reference in every pair") {
    const int ref = 2;
    for (const auto& [s, t] : oneref_pairs(5, ref)) {
        CHECK((s == ref || t == ref));
        CHECK(s != t);
    }
}

TEST_CASE("window_pairs examples") {
    CHECK(window_pairs(4, 1).size() == 6);
    CHECK(window_pairs(3, 5).size() == 6);
    CHECK(window_pairs(2, 1).size() == 2);
    CHECK(as_set(window_pairs(3, 5)) == as_set(complete_pairs(3)));
    // no cycle wrap: (0, n-1) only when the window reaches it
    const auto w1 = as_set(window_pairs(5, 1));
    CHECK(w1.count({0, 4}) == 0);
    CHECK(w1.count({4, 0}) == 0);
}

TEST_CASE("window_pairs equals complete for any window >= n-1") {
    for (int n = 2; n <= 8; ++n)
        CHECK(as_set(window_pairs(n, n - 1)) == as_set(complete_pairs(n)));
}

TEST_CASE("cosine_pairs identical and orthogonal vectors") {
    const auto both = cosine_pairs({feature({1.0, 0.0}, 0), feature({1.0, 0.0}, 1)}, 1, 0.5);
    CHECK(as_set(both) == std::set<std::pair<int, int>>{{0, 1}, {1, 0}});

    const auto none = cosine_pairs({feature({1.0, 0.0}, 0), feature({0.0, 1.0}, 1)}, 1, 0.5);
    CHECK(none.empty());
}

TEST_CASE("cosine_pairs links each view to its best neighbor") {
    // v0.v1 ~ 0.9, v0.v2 ~ 0.2, v1.v2 lower than both
    const std::vector<FeatureVector> features{
        feature({1.0, 0.0}, 0), feature({0.9, std::sqrt(1.0 - 0.81)}, 1),
        feature({0.2, -std::sqrt(1.0 - 0.04)}, 2)};
    const auto pairs = as_set(cosine_pairs(features, 1, 0.0));
    CHECK(pairs.count({0, 1}) == 1);
    CHECK(pairs.count({1, 0}) == 1);
    // v2's best admissible neighbor is v0 (v1 is negative)
    CHECK(pairs.count({0, 2}) == 1);
    CHECK(pairs.count({2, 0}) == 1);
    CHECK(pairs.count({1, 2}) == 0);
}

TEST_CASE("cosine_pairs input validation") {
    CHECK_THROWS_AS(cosine_pairs({feature({1.0}, 0)}, 1, 0.0), ValidationError);
    CHECK_THROWS_AS(cosine_pairs({feature({1.0}, 0), feature({1.0, 2.0}, 1)}, 1, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(cosine_pairs({feature({1.0}, 0), feature({0.0}, 1)}, 1, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(cosine_pairs({feature({1.0}, 0), feature({1.0}, 1)}, 0, 0.0),
                    ValidationError);
    CHECK_THROWS_AS(cosine_pairs({feature({1.0}, 0), feature({1.0}, 1)}, 1, 1.5),
                    ValidationError);
}

TEST_CASE("cosine_pairs permutation consistency") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 5);
        std::vector<FeatureVector> features;
        for (int i = 0; i < n; ++i) {
            FeatureVector f;
            f.source_view = i;
            for (int k = 0; k < 6; ++k) f.values.push_back(dist(rng));
            double norm = 0.0;
            for (double v : f.values) norm += v * v;
            if (norm == 0.0) f.values[0] = 1.0;
            features.push_back(f);
        }
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<FeatureVector> permuted(features.size());
        for (int i = 0; i < n; ++i) {
            permuted[static_cast<std::size_t>(perm[i])] = features[static_cast<std::size_t>(i)];
            permuted[static_cast<std::size_t>(perm[i])].source_view = perm[i];
        }

        const auto base = cosine_pairs(features, 2, -1.0);
        const auto after = cosine_pairs(permuted, 2, -1.0);
        std::set<std::pair<int, int>> relabeled;
        for (const auto& [s, t] : base)
            relabeled.emplace(perm[static_cast<std::size_t>(s)],
                              perm[static_cast<std::size_t>(t)]);
        CHECK(relabeled == as_set(after));
    }
}

TEST_CASE("strategy outputs have no self-pairs or duplicates") {
    for (const auto& pairs :
         {complete_pairs(7), oneref_pairs(7, 3), window_pairs(7, 2)}) {
        std::set<std::pair<int, int>> seen;
        for (const auto& pr : pairs) {
            CHECK(pr.first != pr.second);
            CHECK(seen.insert(pr).second);
        }
    }
}

TEST_CASE("estimate_inference_cost linearity") {
    CHECK(estimate_inference_cost(0, 100.0, 2000.0) == 2000.0);
    CHECK(estimate_inference_cost(10, 100.0, 2000.0) == 3000.0);
    CHECK(estimate_inference_cost(30, 100.0, 2000.0) == 5000.0);
    // affine increments are exact
    for (int a = 0; a < 20; a += 3)
        CHECK(estimate_inference_cost(a + 7, 96.0, 1024.0) -
                  estimate_inference_cost(a, 96.0, 1024.0) ==
              7 * 96.0);
    CHECK_THROWS_AS(estimate_inference_cost(-1, 100.0, 0.0), ValidationError);
    CHECK_THROWS_AS(estimate_inference_cost(1, 0.0, 0.0), ValidationError);
}
