#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "patlim/offspring.hpp"
#include "patlim/rng.hpp"
#include "patlim/tree.hpp"

namespace patlim {

inline constexpr std::size_t kDefaultVertexCap = 1'000'000;

// A draw that would have exceeded `cap` vertices.
struct Overflow {
    std::size_t cap;
};

using GwDraw = std::variant<OrderedTree, Overflow>;

// Galton-Watson tree generated depth-first: degrees are drawn in
// lexicographic vertex order until the tree closes.
GwDraw sample_gw(const OffspringDistribution& xi, SeededRng& rng, std::size_t cap = kDefaultVertexCap);

// Uniform element of the plane trees with `size` vertices, via the cycle
// lemma: shuffle n up-steps and n+1 down-steps, rotate to start just after
// the first minimum, drop the final down-step and read the Dyck path as a
// depth-first walk. Throws std::invalid_argument for size < 1.
OrderedTree sample_uniform_tree(std::size_t size, SeededRng& rng);

inline constexpr std::size_t kMaxEnumeratedTreeSize = 12;

// Every plane tree with `size` vertices, in increasing degree-sequence order.
// Throws std::out_of_range for size > 12.
std::vector<OrderedTree> enumerate_trees(std::size_t size);

// A Galton-Watson tree with random-access degrees: the degree of a vertex
// is drawn from SplitMix64 keyed by a hash of its label, so any traversal
// order (or any depth cut-off) sees the same tree.
class HashedGwTree {
public:
    struct Extent {
        std::size_t size;
        int height;  // relative to the queried vertex
    };

    HashedGwTree(std::uint64_t key, std::shared_ptr<const OffspringDistribution> xi);

    std::uint64_t root_key() const { return key_; }
    const OffspringDistribution& offspring() const { return *xi_; }

    static std::uint64_t child_key(std::uint64_t vertex_key, int i);
    int degree_of(std::uint64_t vertex_key) const;

    // Size and height of the fringe subtree at vertex_key, or nullopt once
    // more than `cap` vertices have been seen.
    std::optional<Extent> extent(std::uint64_t vertex_key, std::size_t cap) const;

    GwDraw realize(std::size_t cap = kDefaultVertexCap) const;
    // T^[max_height]; only vertices of height < max_height have their
    // degrees drawn.
    OrderedTree realize_truncated(std::size_t max_height) const;

private:
    std::uint64_t key_;
    std::shared_ptr<const OffspringDistribution> xi_;
};

}  // namespace patlim
