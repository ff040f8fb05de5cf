#pragma once

// Ulam-Harris vertex labels and finite rooted ordered (plane) trees.
//
// A tree is stored as the degree sequence of its vertices in lexicographic
// order. For Ulam-Harris labels the lexicographic order coincides with the
// depth-first preorder, so vertex rank i in this file always means "the i-th
// smallest vertex", with the root at rank 0.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace patlim {

class Vertex {
public:
    Vertex() = default;
    Vertex(std::initializer_list<int> path);
    explicit Vertex(std::vector<int> path);

    std::size_t height() const { return path_.size(); }
    bool is_root() const { return path_.empty(); }
    std::span<const int> path() const { return path_; }

    Vertex child(int i) const;
    // Precondition: !is_root().
    Vertex parent() const;
    Vertex concat(const Vertex& suffix) const;
    // True iff *this is in the ancestor set A_v (which contains v itself).
    bool is_ancestor_of(const Vertex& v) const;

    // Lexicographic; a proper prefix precedes its extensions.
    auto operator<=>(const Vertex&) const = default;
    bool operator==(const Vertex&) const = default;

    std::string to_string() const;

private:
    std::vector<int> path_;
};

std::strong_ordering lex_compare(const Vertex& u, const Vertex& v);

class OrderedTree {
public:
    // The single-vertex tree {∅}.
    OrderedTree();

    // Throws std::invalid_argument unless `degrees` is the lexicographic
    // degree sequence of a finite tree.
    static OrderedTree from_degrees(std::vector<int> degrees);
    // Depth of each vertex in lexicographic order. Throws on inconsistency.
    static OrderedTree from_depths(std::span<const int> depths);
    // Throws std::invalid_argument if the set violates the tree axioms.
    static OrderedTree from_vertices(const std::set<Vertex>& vertices);

    std::size_t size() const { return degrees_.size(); }
    int height() const;

    int degree_at(std::size_t rank) const { return degrees_[rank]; }
    int depth_at(std::size_t rank) const { return depths_[rank]; }
    // |t_v| for v the vertex of the given rank.
    std::size_t fringe_size_at(std::size_t rank) const { return sizes_[rank]; }
    // Precondition: rank > 0.
    std::size_t parent_at(std::size_t rank) const { return parents_[rank]; }
    // Rank of the j-th child (1-based) of the vertex at `rank`.
    std::size_t child_rank(std::size_t rank, int j) const;
    bool is_leaf_at(std::size_t rank) const { return degrees_[rank] == 0; }

    Vertex vertex_at(std::size_t rank) const;
    std::optional<std::size_t> rank_of(const Vertex& v) const;
    bool contains(const Vertex& v) const { return rank_of(v).has_value(); }

    std::span<const int> degrees() const { return degrees_; }
    std::span<const int> depths() const { return depths_; }
    std::vector<Vertex> vertices() const;
    std::set<Vertex> vertex_set() const;

    bool operator==(const OrderedTree& other) const { return degrees_ == other.degrees_; }
    auto operator<=>(const OrderedTree& other) const { return degrees_ <=> other.degrees_; }

private:
    explicit OrderedTree(std::vector<int> degrees, bool);

    std::vector<int> degrees_;
    std::vector<int> depths_;
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> parents_;
};

bool validate_tree(const std::set<Vertex>& vertices);

// Number of children of u, or -1 when u is not in t.
int degree(const OrderedTree& t, const Vertex& u);

// The descendants of u relabelled by stripping the prefix u.
// Throws std::out_of_range("vertex not in tree").
OrderedTree fringe(const OrderedTree& t, const Vertex& u);

// t^[m]: vertices of height at most m.
OrderedTree truncate(const OrderedTree& t, std::size_t m);

// #_k t
std::size_t count_at_height(const OrderedTree& t, std::size_t k);

std::vector<Vertex> vertex_order(const OrderedTree& t);
std::vector<Vertex> leaves(const OrderedTree& t);

// ⟨t_1,...,t_k⟩_{t,l}. Throws std::invalid_argument if l is not a leaf of t
// or `subtrees` is empty.
OrderedTree attach(const OrderedTree& t, const Vertex& l, std::span<const OrderedTree> subtrees);

// Local metric D(t,s) = Σ_i 2^{-i} (|d_t(f(i)) - d_s(f(i))| ∧ 1).
//
// f enumerates labels with every entry ≤ kMetricMaxLabel and height ≤
// kMetricMaxHeight breadth-first: by height, then lexicographically, with
// f(1) = ∅. Vertices outside that window are ignored. Terms are accumulated
// in double precision, so a difference whose index exceeds ~1074 underflows.
inline constexpr int kMetricMaxLabel = 8;
inline constexpr std::size_t kMetricMaxHeight = 16;
// f^{-1}(u), or nullopt if u lies outside the enumeration window.
std::optional<std::uint64_t> metric_index(const Vertex& u);
double local_distance(const OrderedTree& t, const OrderedTree& s);

// Children-array JSON encoding: {∅} = [], {∅,(1),(2)} = [[],[]].
nlohmann::json to_json(const OrderedTree& t);
// Throws std::invalid_argument on malformed input.
OrderedTree tree_from_json(const nlohmann::json& j);

}  // namespace patlim
