#include "patlim/samplers.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace patlim {

GwDraw sample_gw(const OffspringDistribution& xi, SeededRng& rng, std::size_t cap) {
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    std::vector<int> degrees;
    long pending = 1;
    while (pending > 0) {
        if (degrees.size() == cap) return Overflow{cap};
        int d = xi.sample(rng);
        degrees.push_back(d);
        pending += d - 1;
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

OrderedTree sample_uniform_tree(std::size_t size, SeededRng& rng) {
    if (size < 1) throw std::invalid_argument("tree size must be positive");
    const std::size_t n = size - 1;
    std::vector<signed char> steps(2 * n + 1, -1);
    std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(n), 1);
    for (std::size_t i = steps.size(); i > 1; --i) std::swap(steps[i - 1], steps[rng.below(i)]);

    std::size_t start = 0;
    long level = 0;
    long lowest = 0;
    for (std::size_t j = 0; j < steps.size(); ++j) {
        level += steps[j];
        if (level < lowest) {
            lowest = level;
            start = j + 1;
        }
    }

    std::vector<int> degrees{0};
    degrees.reserve(size);
    std::vector<std::size_t> stack{0};
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if (steps[(start + i) % steps.size()] > 0) {
            ++degrees[stack.back()];
            stack.push_back(degrees.size());
            degrees.push_back(0);
        } else {
            stack.pop_back();
        }
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

namespace {

void extend_degree_sequences(std::size_t size, long pending, std::vector<int>& prefix,
                             std::vector<OrderedTree>& out) {
    const long remaining = static_cast<long>(size - prefix.size());
    if (remaining == 0) {
        if (pending == 0) out.push_back(OrderedTree::from_degrees(prefix));
        return;
    }
    // After this vertex, pending - 1 + d open slots must fit in remaining - 1.
    for (long d = 0; pending - 1 + d <= remaining - 1; ++d) {
        long next = pending - 1 + d;
        if (next == 0 && remaining > 1) continue;
        prefix.push_back(static_cast<int>(d));
        extend_degree_sequences(size, next, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<OrderedTree> enumerate_trees(std::size_t size) {
    if (size < 1) throw std::invalid_argument("tree size must be positive");
    if (size > kMaxEnumeratedTreeSize) throw std::out_of_range("exhaustion bound exceeded");
    std::vector<OrderedTree> out;
    std::vector<int> prefix;
    extend_degree_sequences(size, 1, prefix, out);
    return out;
}

HashedGwTree::HashedGwTree(std::uint64_t key, std::shared_ptr<const OffspringDistribution> xi)
    : key_(key), xi_(std::move(xi)) {}

std::uint64_t HashedGwTree::child_key(std::uint64_t vertex_key, int i) {
    return splitmix64(vertex_key ^ (0xA0761D6478BD642FULL * static_cast<std::uint64_t>(i)));
}

int HashedGwTree::degree_of(std::uint64_t vertex_key) const {
    SplitMix64 gen(vertex_key);
    return xi_->sample(gen);
}

std::optional<HashedGwTree::Extent> HashedGwTree::extent(std::uint64_t vertex_key, std::size_t cap) const {
    std::vector<std::pair<std::uint64_t, int>> stack{{vertex_key, 0}};
    Extent e{0, 0};
    while (!stack.empty()) {
        auto [key, depth] = stack.back();
        stack.pop_back();
        if (++e.size > cap) return std::nullopt;
        e.height = std::max(e.height, depth);
        int d = degree_of(key);
        for (int i = d; i >= 1; --i) stack.emplace_back(child_key(key, i), depth + 1);
    }
    return e;
}

GwDraw HashedGwTree::realize(std::size_t cap) const {
    std::vector<int> degrees;
    std::vector<std::uint64_t> stack{key_};
    while (!stack.empty()) {
        if (degrees.size() == cap) return Overflow{cap};
        std::uint64_t key = stack.back();
        stack.pop_back();
        int d = degree_of(key);
        degrees.push_back(d);
        for (int i = d; i >= 1; --i) stack.push_back(child_key(key, i));
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

OrderedTree HashedGwTree::realize_truncated(std::size_t max_height) const {
    std::vector<int> degrees;
    std::vector<std::pair<std::uint64_t, std::size_t>> stack{{key_, 0}};
    while (!stack.empty()) {
        auto [key, depth] = stack.back();
        stack.pop_back();
        int d = depth < max_height ? degree_of(key) : 0;
        degrees.push_back(d);
        for (int i = d; i >= 1; --i) stack.emplace_back(child_key(key, i), depth + 1);
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

}  // namespace patlim
