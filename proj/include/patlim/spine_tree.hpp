#pragma once

// Lazily grown size-biased Galton-Watson tree T̃ and the limit bijections
// evaluated on it.
//
// Growth follows the sequential spine construction: the spine vertex η_h
// receives K_h ~ ξ̃ children, the spine continues through a uniformly chosen
// child, and every other child roots an independent ξ-Galton-Watson tree.
// Side trees are HashedGwTree values, so any part of them can be explored in
// any order without disturbing the rest of the realization.
//
// Queries walk two cursors over the infinite tree:
//   * the left cursor lists v_0 < v_1 < ... (the vertices on or left of the
//     spine) in lexicographic order;
//   * the right cursor lists w_1 > w_2 > ... (the vertices right of the
//     spine) in decreasing lexicographic order.
// Both only ever need finitely many spine steps, so every value returned is
// exact: a fringe is infinite precisely when its root is on the spine.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "patlim/offspring.hpp"
#include "patlim/permutation.hpp"
#include "patlim/rng.hpp"
#include "patlim/samplers.hpp"
#include "patlim/tree.hpp"

namespace patlim {

// A value in ℕ ∪ {∞} with a + ∞ = ∞.
class ExtendedNat {
public:
    constexpr ExtendedNat() = default;
    constexpr explicit ExtendedNat(std::uint64_t value) : value_(value) {}
    static constexpr ExtendedNat infinity() {
        ExtendedNat e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    // Throws std::logic_error when infinite.
    std::uint64_t value() const;

    constexpr ExtendedNat operator+(ExtendedNat other) const {
        if (infinite_ || other.infinite_) return infinity();
        return ExtendedNat(value_ + other.value_);
    }
    constexpr std::strong_ordering operator<=>(const ExtendedNat& other) const {
        if (infinite_ != other.infinite_) return infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
        if (infinite_) return std::strong_ordering::equal;
        return value_ <=> other.value_;
    }
    constexpr bool operator==(const ExtendedNat& other) const { return (*this <=> other) == 0; }

    std::string to_string() const;

private:
    std::uint64_t value_ = 0;
    bool infinite_ = false;
};

// Integers as JSON numbers, ∞ as the string "inf".
nlohmann::json to_json(ExtendedNat e);
ExtendedNat extended_nat_from_json(const nlohmann::json& j);

struct SpineStep {
    int k = 1;            // K_h ~ ξ̃
    int spine_index = 1;  // i*, uniform on {1..k}
    // The k-1 side trees, left to right, skipping position spine_index.
    std::vector<HashedGwTree> side_trees;

    const HashedGwTree& side_tree_at(int position) const;
};

struct EvalLimits {
    // Largest fringe that is counted exactly.
    std::size_t fringe_cap = kDefaultVertexCap;
    // Largest number of vertices either cursor may list.
    std::size_t traversal_cap = kDefaultVertexCap;
    std::size_t spine_cap = kDefaultVertexCap;
};

// Raised when an evaluation would pass an EvalLimits bound. lower_bound()
// is a proven lower bound on the value that was being computed.
class EvaluationLimitExceeded : public std::runtime_error {
public:
    EvaluationLimitExceeded(const std::string& what, ExtendedNat lower_bound)
        : std::runtime_error(what), lower_bound_(lower_bound) {}
    ExtendedNat lower_bound() const { return lower_bound_; }

private:
    ExtendedNat lower_bound_;
};

struct Horizon {
    // Spine steps that the value depends on.
    std::size_t spine_height = 0;
    // A truncation height m such that T̃^[m] contains every vertex consulted,
    // together with whether it has children.
    std::size_t determining_height = 0;
};

class SpineTree {
public:
    // Throws std::domain_error("not critical") unless ξ has mean one.
    explicit SpineTree(std::uint64_t seed,
                       OffspringDistribution xi = OffspringDistribution::geometric_half(),
                       EvalLimits limits = {});

    std::uint64_t seed() const { return seed_; }
    const EvalLimits& limits() const { return limits_; }

    // Appends one spine step; realized_height() grows by one.
    void extend_spine();
    std::size_t realized_height() const { return steps_.size(); }
    const std::vector<SpineStep>& steps() const { return steps_; }
    // Grows the spine as needed.
    const SpineStep& step(std::size_t h);

    Vertex spine_vertex(std::size_t h);
    bool on_spine(const Vertex& v);

    // T̃^[m].
    OrderedTree truncate_spine(std::size_t m);

    // (v_0, ..., v_j)
    std::vector<Vertex> v_sequence(std::size_t j);
    // (w_1, ..., w_j), w_1 the lexicographically largest vertex.
    std::vector<Vertex> w_sequence(std::size_t j);

    // Φ^σ_{T̃}(k) for k ≥ 1. May throw EvaluationLimitExceeded.
    ExtendedNat phi(Pattern sigma, std::size_t k);
    std::size_t phi_321(std::size_t k);
    // Evaluates Φ^σ(k) and reports what it depended on.
    Horizon stability_horizon(Pattern sigma, std::size_t k);

private:
    struct LeftEntry {
        int depth;
        bool spine;
        bool leaf;
        std::size_t parent;
        int child;
        std::size_t step;
        std::uint64_t key;
    };
    struct LeftFrame {
        bool spine;
        std::size_t step;
        std::uint64_t key;
        int degree;
        int next_child;
        std::size_t entry;
    };
    struct RightEntry {
        int depth;
        std::size_t fringe;
        std::size_t step;
        std::vector<int> path;
    };
    struct RightFrame {
        std::uint64_t key;
        int depth;
        int next_child;
        std::size_t size;
    };
    struct Touch {
        int depth = 0;
        std::size_t steps = 0;
        void include(int d, std::size_t step_count) {
            depth = std::max(depth, d);
            steps = std::max(steps, step_count);
        }
    };

    void advance_left();
    void advance_right();
    const LeftEntry& left_at(std::size_t i);
    const RightEntry& right_at(std::size_t i);
    void touch_left(std::size_t i, Touch& touch);
    void touch_right(std::size_t i, Touch& touch);
    std::size_t emit_left(const LeftEntry& e);

    ExtendedNat evaluate(Pattern sigma, std::size_t k, Touch& touch);
    ExtendedNat evaluate_321(std::size_t k, Touch& touch);

    std::uint64_t seed_;
    std::shared_ptr<const OffspringDistribution> xi_;
    EvalLimits limits_;
    SeededRng rng_;
    HashedGwTree probe_;
    std::vector<SpineStep> steps_;

    std::vector<LeftEntry> left_;
    std::vector<int> left_max_depth_;
    std::vector<std::size_t> left_max_step_;
    std::vector<LeftFrame> left_stack_;
    std::vector<std::size_t> spine_left_index_;
    // (s_i - p_i + 1, s_i) for the leaves listed so far.
    std::vector<std::pair<std::size_t, std::size_t>> leaf_marks_;
    // Ranks ≥ 1 of non-leaf vertices listed so far: the complement of {s_i}.
    std::vector<std::size_t> non_leaf_ranks_;

    std::vector<RightEntry> right_;
    std::vector<int> right_max_depth_;
    std::vector<std::size_t> right_max_step_;
    std::vector<RightFrame> right_stack_;
    std::vector<int> right_path_;
    std::size_t right_step_ = 0;
    int right_next_position_ = -1;
};

}  // namespace patlim
