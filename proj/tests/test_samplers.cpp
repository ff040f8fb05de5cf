#include <doctest.h>

#include <cmath>
#include <map>

#include "oracle.hpp"
#include "patlim/offspring.hpp"
#include "patlim/rng.hpp"
#include "patlim/samplers.hpp"

using namespace patlim;

namespace {

double tree_probability(const OrderedTree& t, const OffspringDistribution& xi) {
    double p = 1.0;
    for (int d : t.degrees()) p *= xi.pmf(d);
    return p;
}

std::vector<std::uint64_t> tally(const std::vector<OrderedTree>& cells, const std::vector<OrderedTree>& draws) {
    std::map<OrderedTree, std::size_t> index;
    for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
    std::vector<std::uint64_t> counts(cells.size(), 0);
    for (const auto& t : draws) ++counts.at(index.at(t));
    return counts;
}

}  // namespace

TEST_CASE("splitmix64 reference values") {
    // First outputs of the reference SplitMix64 generator seeded with 0.
    SplitMix64 g(0);
    CHECK(g() == 0xE220A8397B1DCDAFULL);
    CHECK(g() == 0x6E789E6AA1B965F4ULL);
    CHECK(g() == 0x06C45D188009454FULL);
}

TEST_CASE("seed derivation and determinism") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 9) == derive_seed(5, 9));
    SeededRng a(42, 3), b(42, 3), c(42, 4);
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        CHECK(x == b());
        differs = differs || x != c();
    }
    CHECK(differs);
    for (int i = 0; i < 1000; ++i) CHECK(a.below(7) < 7);
}

TEST_CASE("uniform_below is uniform") {
    SeededRng rng(11);
    std::vector<std::uint64_t> counts(6, 0);
    for (int i = 0; i < 60000; ++i) ++counts[rng.below(6)];
    CHECK(oracle::chi_square_pvalue(counts, std::vector<double>(6, 1.0 / 6)) > 0.01);
}

TEST_CASE("geometric pmf") {
    CHECK(geometric_half_pmf(0) == 0.5);
    CHECK(geometric_half_pmf(3) == 1.0 / 16);
    CHECK(geometric_half_pmf(-1) == 0.0);
    double mass = 0, mean = 0;
    for (int k = 0; k < 200; ++k) {
        mass += geometric_half_pmf(k);
        mean += k * geometric_half_pmf(k);
    }
    CHECK(std::abs(mass - 1) < 1e-12);
    CHECK(std::abs(mean - 1) < 1e-12);
}

TEST_CASE("size-biased pmf") {
    auto xi = OffspringDistribution::geometric_half();
    CHECK(xi.is_critical());
    CHECK(xi.size_biased_pmf(1) == 0.25);
    CHECK(xi.size_biased_pmf(2) == 0.25);
    CHECK(xi.size_biased_pmf(0) == 0.0);
    double mass = 0;
    for (int k = 0; k < 200; ++k) mass += xi.size_biased_pmf(k);
    CHECK(std::abs(mass - 1) < 1e-12);

    auto sub = OffspringDistribution::from_pmf("sub", {0.6, 0.2, 0.2});
    CHECK_FALSE(sub.is_critical());
    CHECK_THROWS_WITH_AS(sub.size_biased_pmf(1), "not critical", std::domain_error);
    auto line = OffspringDistribution::from_pmf("line", {0.0, 1.0});
    CHECK_FALSE(line.is_critical());
    CHECK_THROWS_AS(OffspringDistribution::from_pmf("bad", {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(OffspringDistribution::from_pmf("neg", {1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(OffspringDistribution::from_pmf("empty", {}), std::invalid_argument);
}

TEST_CASE("offspring samplers match their laws") {
    SeededRng rng(3);
    auto geo = OffspringDistribution::geometric_half();
    auto table = OffspringDistribution::from_pmf("binary", {0.25, 0.5, 0.25});
    const int n = 200000;
    std::vector<std::uint64_t> g(13, 0), gb(13, 0), t(3, 0), tb(3, 0);
    for (int i = 0; i < n; ++i) {
        ++g[std::min(geo.sample(rng), 12)];
        ++gb[std::min(geo.sample_size_biased(rng), 12)];
        ++t[static_cast<std::size_t>(table.sample(rng))];
        ++tb[static_cast<std::size_t>(table.sample_size_biased(rng))];
    }
    std::vector<double> pg(13), pgb(13);
    for (int k = 0; k < 12; ++k) {
        pg[k] = geo.pmf(k);
        pgb[k] = geo.size_biased_pmf(k);
    }
    pg[12] = std::ldexp(1.0, -12);
    pgb[12] = 1.0;
    for (int k = 0; k < 12; ++k) pgb[12] -= pgb[k];
    CHECK(oracle::chi_square_pvalue(g, pg) > 0.01);
    CHECK(oracle::chi_square_pvalue(gb, pgb) > 0.01);
    CHECK(oracle::chi_square_pvalue(t, {0.25, 0.5, 0.25}) > 0.01);
    CHECK(tb[0] == 0);
    CHECK(oracle::chi_square_pvalue({tb[1], tb[2]}, {0.5, 0.5}) > 0.01);
}

TEST_CASE("enumerate_trees") {
    CHECK(enumerate_trees(1) == std::vector<OrderedTree>{OrderedTree()});
    auto three = enumerate_trees(3);
    CHECK(three.size() == 2);
    CHECK(std::count(three.begin(), three.end(), OrderedTree::from_degrees({2, 0, 0})) == 1);
    CHECK(std::count(three.begin(), three.end(), OrderedTree::from_degrees({1, 1, 0})) == 1);
    CHECK(enumerate_trees(6).size() == 42);
    for (std::size_t s = 1; s <= 12; ++s) {
        auto all = enumerate_trees(s);
        CHECK(all.size() == oracle::catalan_binomial(static_cast<int>(s) - 1));
        CHECK(std::set<OrderedTree>(all.begin(), all.end()).size() == all.size());
    }
    CHECK_THROWS_AS(enumerate_trees(13), std::out_of_range);
    CHECK_THROWS_AS(enumerate_trees(0), std::invalid_argument);
}

TEST_CASE("sample_gw") {
    SeededRng rng(5);
    auto dead = OffspringDistribution::from_pmf("dead", {1.0});
    for (int i = 0; i < 10; ++i) CHECK(std::get<OrderedTree>(sample_gw(dead, rng)) == OrderedTree());

    auto xi = OffspringDistribution::geometric_half();
    const int n = 100000;
    int single = 0, edge = 0, cherry = 0, path = 0, overflow = 0;
    const auto t_edge = OrderedTree::from_degrees({1, 0});
    const auto t_cherry = OrderedTree::from_degrees({2, 0, 0});
    const auto t_path = OrderedTree::from_degrees({1, 1, 0});
    for (int i = 0; i < n; ++i) {
        auto draw = sample_gw(xi, rng, 1000);
        if (std::holds_alternative<Overflow>(draw)) {
            ++overflow;
            continue;
        }
        const auto& t = std::get<OrderedTree>(draw);
        single += t.size() == 1;
        edge += t == t_edge;
        cherry += t == t_cherry;
        path += t == t_path;
    }
    auto within = [&](int count, double p) {
        const double sd = std::sqrt(p * (1 - p) / n);
        return std::abs(count / double(n) - p) < 3 * sd;
    };
    CHECK(within(single, 0.5));
    CHECK(within(edge, 1.0 / 8));
    CHECK(within(cherry, tree_probability(t_cherry, xi)));
    CHECK(within(path, tree_probability(t_path, xi)));
    CHECK(overflow > 0);
    CHECK(std::holds_alternative<Overflow>(sample_gw(OffspringDistribution::from_pmf("two", {0.0, 0.0, 1.0}), rng, 50)));
    CHECK_THROWS_AS(sample_gw(xi, rng, 0), std::invalid_argument);
}

TEST_CASE("same seed gives the same sample sequence") {
    auto xi = OffspringDistribution::geometric_half();
    SeededRng a(99), b(99);
    for (int i = 0; i < 200; ++i) {
        CHECK(sample_uniform_tree(30, a) == sample_uniform_tree(30, b));
        auto x = sample_gw(xi, a, 10000), y = sample_gw(xi, b, 10000);
        CHECK(x.index() == y.index());
        if (x.index() == 0) CHECK(std::get<OrderedTree>(x) == std::get<OrderedTree>(y));
    }
}

TEST_CASE("uniform tree sampler") {
    SeededRng rng(17);
    CHECK_THROWS_AS(sample_uniform_tree(0, rng), std::invalid_argument);
    CHECK(sample_uniform_tree(1, rng) == OrderedTree());
    for (int i = 0; i < 20; ++i) CHECK(sample_uniform_tree(2, rng) == OrderedTree::from_degrees({1, 0}));
    for (std::size_t size = 3; size <= 6; ++size) {
        const auto cells = enumerate_trees(size);
        std::map<OrderedTree, std::size_t> index;
        for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
        std::vector<std::uint64_t> counts(cells.size(), 0);
        for (int i = 0; i < 1000000; ++i) ++counts[index.at(sample_uniform_tree(size, rng))];
        CHECK(oracle::chi_square_pvalue(counts, std::vector<double>(cells.size(), 1.0 / cells.size())) > 0.01);
    }
    for (int i = 0; i < 100; ++i) CHECK(sample_uniform_tree(500, rng).size() == 500);
}

TEST_CASE("uniform sampler agrees with conditioned GW draws") {
    SeededRng rng(23);
    auto xi = OffspringDistribution::geometric_half();
    const auto cells = enumerate_trees(5);
    std::vector<OrderedTree> direct, conditioned;
    while (conditioned.size() < 100000) {
        auto draw = sample_gw(xi, rng, 6);
        if (auto* t = std::get_if<OrderedTree>(&draw); t && t->size() == 5) conditioned.push_back(*t);
    }
    for (int i = 0; i < 100000; ++i) direct.push_back(sample_uniform_tree(5, rng));
    CHECK(oracle::two_sample_pvalue(tally(cells, direct), tally(cells, conditioned)) > 0.01);
}

TEST_CASE("hashed GW trees are consistent under truncation") {
    auto xi = std::make_shared<const OffspringDistribution>(OffspringDistribution::geometric_half());
    int overflows = 0;
    for (std::uint64_t key = 0; key < 2000; ++key) {
        HashedGwTree h(derive_seed(key, 1), xi);
        auto full = h.realize(20000);
        if (std::holds_alternative<Overflow>(full)) {
            ++overflows;
            continue;
        }
        const auto& t = std::get<OrderedTree>(full);
        for (std::size_t m : {0, 1, 2, 5}) CHECK(h.realize_truncated(m) == truncate(t, m));
        auto e = h.extent(h.root_key(), 20000);
        REQUIRE(e.has_value());
        CHECK(e->size == t.size());
        CHECK(e->height == t.height());
        CHECK(h.degree_of(h.root_key()) == t.degree_at(0));
        if (t.size() > 1) CHECK_FALSE(h.extent(h.root_key(), t.size() - 1).has_value());
    }
    CHECK(overflows < 100);
}

TEST_CASE("hashed GW law") {
    auto xi = std::make_shared<const OffspringDistribution>(OffspringDistribution::geometric_half());
    const int n = 100000;
    std::vector<std::uint64_t> sizes(4, 0);
    for (int i = 0; i < n; ++i) {
        HashedGwTree h(derive_seed(77, static_cast<std::uint64_t>(i)), xi);
        auto e = h.extent(h.root_key(), 3);
        ++sizes[e ? e->size : 0];
    }
    // P(|T| = 1) = 1/2, P(|T| = 2) = 1/8, P(|T| = 3) = 2/32.
    const double p1 = 0.5, p2 = 0.125, p3 = 2.0 / 32;
    CHECK(oracle::chi_square_pvalue(sizes, {1 - p1 - p2 - p3, p1, p2, p3}) > 0.01);
}
