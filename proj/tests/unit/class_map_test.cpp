#include <catch_amalgamated.hpp>

#include <random>

#include "graceful/class_map.hpp"
#include "graceful/search.hpp"
#include "oracles.hpp"

using namespace graceful;

TEST_CASE("root map", "[class_map]") {
    const auto m = ClassMap::root(9);
    CHECK(m.label_count() == 9);
    CHECK(m.level() == 8);
    CHECK(m.size() == 1);
    CHECK(m.node_sum() == Count(1));
    const auto* p = m.find(encode(new_root(9)));
    REQUIRE(p != nullptr);
    CHECK(*p == MultiplicityPair{Count(1), Count(0)});
    CHECK_THROWS_AS(ClassMap(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(ClassMap(0, 0), std::invalid_argument);
}

TEST_CASE("add merges equal keys", "[class_map]") {
    std::mt19937_64 rng(99);
    const int n = 30;
    ClassMap m(n, 20);
    std::map<CanonicalKey, MultiplicityPair> model;
    for (int i = 0; i < 20000; ++i) {
        const auto s = graceful::testing::random_reachable(n, 9, rng);
        if (s.next_edge_label() != 20) continue;
        const auto key = canonicalize(s).key;
        const MultiplicityPair p{Count(rng() % 5 + 1), Count(rng() % 3)};
        m.add(key, p);
        model[key] += p;
    }
    REQUIRE(m.size() == model.size());
    Count sum;
    for (const auto& [key, pair] : model) {
        const auto* found = m.find(key);
        REQUIRE(found != nullptr);
        CHECK(*found == pair);
        sum += pair.total();
    }
    CHECK(m.node_sum() == sum);

    const auto sorted = m.sorted_entries();
    REQUIRE(sorted.size() == model.size());
    auto it = model.begin();
    for (const auto& [key, pair] : sorted) {
        CHECK(key == it->first);
        CHECK(pair == it->second);
        ++it;
    }

    ClassMap copy(n, 20);
    for (auto e = sorted.rbegin(); e != sorted.rend(); ++e) copy.add(e->first, e->second);
    CHECK(copy == m);
    copy.add(sorted.front().first, {Count(1), Count(0)});
    CHECK_FALSE(copy == m);
}

TEST_CASE("release_shard empties a shard", "[class_map]") {
    auto m = ClassMap::root(12);
    for (int i = 0; i < 3; ++i) m = expand_level(m, Constraint::none());
    const auto before = m.size();
    std::size_t removed = 0;
    for (std::size_t s = 0; s < ClassMap::kShards; ++s) {
        removed += m.shard_size(s);
        m.release_shard(s);
        CHECK(m.shard_size(s) == 0);
    }
    CHECK(removed == before);
    CHECK(m.empty());
}
