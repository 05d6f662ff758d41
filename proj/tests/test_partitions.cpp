#include <algorithm>
#include <map>
#include <set>

#include "catch2/catch_amalgamated.hpp"
#include "fdb/partitions.hpp"
#include "test_support.hpp"

using namespace fdb;

namespace {

std::vector<std::string> block_forms(const std::vector<Partition>& parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.push_back(p.to_block_form());
    return out;
}

}  // namespace

TEST_CASE("enumerate_partitions small cases") {
    CHECK(block_forms(enumerate_partitions(0)) == std::vector<std::string>{""});
    CHECK(block_forms(enumerate_partitions(1)) == std::vector<std::string>{"{1}"});

    auto p3 = block_forms(enumerate_partitions(3));
    CHECK(p3 == std::vector<std::string>{"{1,2,3}", "{1,2}{3}", "{1,3}{2}", "{1}{2,3}",
                                         "{1}{2}{3}"});
}

TEST_CASE("enumerate_partitions is RGS-lexicographic and canonical") {
    for (int n = 0; n <= 7; ++n) {
        auto parts = enumerate_partitions(n);
        CHECK(parts.size() == bell_number(n));
        std::vector<std::string> rgs;
        for (const auto& p : parts) {
            CHECK(p.is_canonical());
            rgs.push_back(p.to_rgs());
        }
        CHECK(std::is_sorted(rgs.begin(), rgs.end()));
        CHECK(std::set<std::string>(rgs.begin(), rgs.end()).size() == parts.size());
    }
}

TEST_CASE("enumerate_partitions cap") {
    CHECK_THROWS_AS(enumerate_partitions(kMaxOrder + 1), size_error);
    CHECK_THROWS_WITH(enumerate_partitions(13), Catch::Matchers::ContainsSubstring("kMaxOrder=12"));
}

TEST_CASE("extend_partition examples") {
    Partition two{2, {{1}, {2}}};
    auto succ = extend_partitions({two});
    CHECK(block_forms(succ) == std::vector<std::string>{"{1,3}{2}", "{1}{2,3}", "{1}{2}{3}"});

    Partition one{1, {{1}}};
    CHECK(block_forms(extend_partitions({one})) == std::vector<std::string>{"{1,2}", "{1}{2}"});
}

TEST_CASE("extend_partitions reproduces the next enumeration") {
    for (int n = 0; n <= 7; ++n) {
        auto extended = extend_partitions(enumerate_partitions(n));
        auto expected = enumerate_partitions(n + 1);
        CHECK(extended.size() == expected.size());
        std::set<std::string> got, want;
        for (const auto& p : extended) {
            CHECK(p.is_canonical());
            got.insert(p.to_rgs());
        }
        for (const auto& p : expected) want.insert(p.to_rgs());
        CHECK(got.size() == extended.size());  // no duplicates
        CHECK(got == want);
    }
}

TEST_CASE("extend_partitions rejects mixed ground sets") {
    CHECK_THROWS_AS(extend_partitions({Partition{1, {{1}}}, Partition{2, {{1, 2}}}}),
                    contract_error);
}

TEST_CASE("bell numbers against independent oracles") {
    auto oracle = fdb_test::bell_triangle_oracle(kMaxOrder);
    const std::uint64_t known[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (int n = 0; n <= 8; ++n) {
        CHECK(bell_number(n) == known[n]);
        CHECK(bell_number(n) == oracle[static_cast<std::size_t>(n)]);
    }
    CHECK(bell_number(12) == oracle[12]);
    CHECK_THROWS_AS(bell_number(13), size_error);
}

TEST_CASE("stirling2 recursion and edge cases") {
    CHECK(stirling2(4, 2) == 7);
    CHECK(stirling2(3, 0) == 0);
    CHECK(stirling2(0, 0) == 1);
    for (int n = 0; n <= kMaxOrder; ++n) CHECK(stirling2(n, n) == 1);
    for (int n = 0; n <= 9; ++n)
        for (int k = 0; k <= n; ++k) CHECK(stirling2(n, k) == fdb_test::stirling_oracle(n, k));
    for (int n = 0; n <= 8; ++n) {
        std::uint64_t sum = 0;
        for (int k = 0; k <= n; ++k) sum += stirling2(n, k);
        CHECK(sum == bell_number(n));
    }
}

TEST_CASE("block-size signatures of n=4 match the classical multiplicities") {
    std::map<std::vector<std::size_t>, int> counts;
    for (const auto& p : enumerate_partitions(4)) {
        std::vector<std::size_t> sig;
        for (const auto& b : p.blocks) sig.push_back(b.size());
        std::sort(sig.rbegin(), sig.rend());
        counts[sig]++;
    }
    CHECK(counts[{1, 1, 1, 1}] == 1);
    CHECK(counts[{2, 1, 1}] == 6);
    CHECK(counts[{2, 2}] == 3);
    CHECK(counts[{3, 1}] == 4);
    CHECK(counts[{4}] == 1);
}

TEST_CASE("textual forms") {
    Partition p{4, {{1, 2}, {3}, {4}}};
    CHECK(p.to_block_form() == "{1,2}{3}{4}");
    CHECK(p.to_rgs() == "0012");
    CHECK(Partition::from_rgs({0, 0, 1, 2}) == p);

    auto p4 = enumerate_partitions(4);
    CHECK(p4.front().to_rgs() == "0000");
    CHECK(p4.back().to_rgs() == "0123");
}
