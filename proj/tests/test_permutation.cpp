#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracle.hpp"
#include "patlim/permutation.hpp"

using namespace patlim;

namespace {

int digits(Pattern sigma) {
    auto v = pattern_values(sigma);
    return v[0] * 100 + v[1] * 10 + v[2];
}

}  // namespace

TEST_CASE("Permutation validation and access") {
    Permutation pi({2, 3, 1});
    CHECK(pi.size() == 3);
    CHECK(pi(1) == 2);
    CHECK(pi(3) == 1);
    CHECK(pi.to_string() == "(2,3,1)");
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
    CHECK(permutation_from_json(to_json(pi)) == pi);
    CHECK(to_json(pi).dump() == "[2,3,1]");
}

TEST_CASE("pattern names") {
    for (Pattern sigma : kAllPatterns) CHECK(parse_pattern(pattern_name(sigma)) == sigma);
    CHECK_FALSE(parse_pattern("111").has_value());
    CHECK_FALSE(parse_pattern("1234").has_value());
}

TEST_CASE("contains examples") {
    CHECK(contains(Permutation({2, 3, 1}), Pattern::p231));
    CHECK_FALSE(contains(Permutation({1, 2, 3, 4}), Pattern::p321));
    CHECK(contains(Permutation({4, 1, 3, 2}), Pattern::p132));
    CHECK_FALSE(contains(Permutation({1, 2}), Pattern::p123));
}

TEST_CASE("contains agrees with the oracle on all of S_6") {
    std::vector<int> v(6);
    std::iota(v.begin(), v.end(), 1);
    do {
        for (Pattern sigma : kAllPatterns) CHECK(contains(v, sigma) == oracle::contains(v, digits(sigma)));
    } while (std::next_permutation(v.begin(), v.end()));
}

TEST_CASE("enumerate_avoiders") {
    for (Pattern sigma : kAllPatterns) {
        auto one = enumerate_avoiders(1, sigma);
        REQUIRE(one.size() == 1);
        CHECK(one[0] == Permutation({1}));
        CHECK(enumerate_avoiders(4, sigma).size() == 14);
    }
    auto av = enumerate_avoiders(3, Pattern::p321);
    CHECK(av.size() == 5);
    CHECK(std::find(av.begin(), av.end(), Permutation({3, 2, 1})) == av.end());
    CHECK_THROWS_AS(enumerate_avoiders(0, Pattern::p123), std::invalid_argument);
    CHECK_THROWS_WITH_AS(enumerate_avoiders(13, Pattern::p123), "exhaustion bound exceeded", std::out_of_range);
}

TEST_CASE("enumerate_avoiders matches a filter over all permutations") {
    for (int n = 1; n <= 7; ++n) {
        std::vector<int> v(static_cast<std::size_t>(n));
        std::iota(v.begin(), v.end(), 1);
        std::vector<std::vector<int>> all;
        do all.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
        for (Pattern sigma : kAllPatterns) {
            std::vector<Permutation> expected;
            for (const auto& p : all)
                if (!oracle::contains(p, digits(sigma))) expected.emplace_back(p);
            auto got = enumerate_avoiders(n, sigma);
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
        }
    }
}

TEST_CASE("Catalan counts") {
    for (int n = 0; n <= 30; ++n) CHECK(catalan(n) == oracle::catalan_binomial(n));
    CHECK(catalan(35) == 3116285494907301262ULL);
    CHECK(catalan(9) == 4862);
    for (int n = 1; n <= 10; ++n)
        for (Pattern sigma : kAllPatterns) CHECK(enumerate_avoiders(n, sigma).size() == catalan(n));
}

TEST_CASE("left-to-right maxima") {
    CHECK(ltr_maxima_indices(Permutation({1, 2, 3})) == std::vector<std::size_t>{1, 2, 3});
    CHECK(ltr_maxima_indices(Permutation({2, 1})) == std::vector<std::size_t>{1});
    CHECK(ltr_maxima_indices(Permutation({3, 1, 2, 4})) == std::vector<std::size_t>{1, 4});
    for (const auto& pi : enumerate_avoiders(6, Pattern::p132)) {
        auto m = ltr_maxima_indices(pi);
        CHECK(m.front() == 1);
        CHECK(pi(m.back()) == 6);
    }
}
