#include "patlim/spine_tree.hpp"

#include <algorithm>
#include <utility>

namespace patlim {

std::uint64_t ExtendedNat::value() const {
    if (infinite_) throw std::logic_error("value of an infinite ExtendedNat");
    return value_;
}

std::string ExtendedNat::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

nlohmann::json to_json(ExtendedNat e) {
    if (e.is_infinite()) return "inf";
    return e.value();
}

ExtendedNat extended_nat_from_json(const nlohmann::json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtendedNat::infinity();
    if (j.is_number_unsigned()) return ExtendedNat(j.get<std::uint64_t>());
    throw std::invalid_argument("expected a non-negative integer or \"inf\"");
}

const HashedGwTree& SpineStep::side_tree_at(int position) const {
    if (position < 1 || position > k || position == spine_index)
        throw std::out_of_range("no side tree at this position");
    return side_trees[static_cast<std::size_t>(position < spine_index ? position - 1 : position - 2)];
}

SpineTree::SpineTree(std::uint64_t seed, OffspringDistribution xi, EvalLimits limits)
    : seed_(seed),
      xi_(std::make_shared<const OffspringDistribution>(std::move(xi))),
      limits_(limits),
      rng_(seed, 0),
      probe_(0, xi_) {
    if (!xi_->is_critical()) throw std::domain_error("not critical");
}

void SpineTree::extend_spine() {
    SpineStep s;
    s.k = xi_->sample_size_biased(rng_);
    s.spine_index = 1 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(s.k)));
    const std::uint64_t base = derive_seed(seed_, steps_.size() + 1);
    s.side_trees.reserve(static_cast<std::size_t>(s.k - 1));
    for (int c = 1; c <= s.k; ++c) {
        if (c != s.spine_index) s.side_trees.emplace_back(derive_seed(base, static_cast<std::uint64_t>(c)), xi_);
    }
    steps_.push_back(std::move(s));
}

const SpineStep& SpineTree::step(std::size_t h) {
    while (steps_.size() <= h) {
        if (steps_.size() >= limits_.spine_cap)
            throw EvaluationLimitExceeded("spine cap exceeded", ExtendedNat(1));
        extend_spine();
    }
    return steps_[h];
}

Vertex SpineTree::spine_vertex(std::size_t h) {
    if (h > 0) step(h - 1);
    std::vector<int> path(h);
    for (std::size_t i = 0; i < h; ++i) path[i] = steps_[i].spine_index;
    return Vertex(std::move(path));
}

bool SpineTree::on_spine(const Vertex& v) {
    auto path = v.path();
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path[i] != step(i).spine_index) return false;
    }
    return true;
}

OrderedTree SpineTree::truncate_spine(std::size_t m) {
    if (m > 0) step(m - 1);
    std::vector<int> degrees;
    auto emit_side = [&](const HashedGwTree& tree, std::size_t root_depth) {
        std::vector<std::pair<std::uint64_t, std::size_t>> stack{{tree.root_key(), root_depth}};
        while (!stack.empty()) {
            auto [key, depth] = stack.back();
            stack.pop_back();
            int d = depth < m ? probe_.degree_of(key) : 0;
            degrees.push_back(d);
            for (int i = d; i >= 1; --i) stack.emplace_back(HashedGwTree::child_key(key, i), depth + 1);
        }
    };
    // Preorder: η_0, left side trees of step 0, η_1, ..., η_m, then the right
    // side trees from the top of the truncated spine back down to the root.
    for (std::size_t h = 0; h <= m; ++h) {
        if (h == m) {
            degrees.push_back(0);
            break;
        }
        const auto& s = steps_[h];
        degrees.push_back(s.k);
        for (int c = 1; c < s.spine_index; ++c) emit_side(s.side_tree_at(c), h + 1);
    }
    for (std::size_t h = m; h-- > 0;) {
        const auto& s = steps_[h];
        for (int c = s.spine_index + 1; c <= s.k; ++c) emit_side(s.side_tree_at(c), h + 1);
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

std::size_t SpineTree::emit_left(const LeftEntry& e) {
    if (left_.size() >= limits_.traversal_cap)
        throw EvaluationLimitExceeded("traversal cap exceeded", ExtendedNat(1));
    const std::size_t rank = left_.size();
    left_.push_back(e);
    left_max_depth_.push_back(rank ? std::max(left_max_depth_.back(), e.depth) : e.depth);
    left_max_step_.push_back(rank ? std::max(left_max_step_.back(), e.step + 1) : e.step + 1);
    if (e.leaf) {
        leaf_marks_.emplace_back(rank - static_cast<std::size_t>(e.depth) + 1, rank);
    } else if (rank >= 1) {
        non_leaf_ranks_.push_back(rank);
    }
    if (e.spine) spine_left_index_.push_back(rank);
    return rank;
}

void SpineTree::advance_left() {
    if (left_.empty()) {
        const int first = step(0).spine_index;
        const auto r = emit_left({0, true, false, 0, 0, 0, 0});
        left_stack_.push_back({true, 0, 0, first, 1, r});
        return;
    }
    for (;;) {
        auto& top = left_stack_.back();
        if (top.next_child > top.degree) {
            left_stack_.pop_back();
            continue;
        }
        const int c = top.next_child++;
        const std::size_t parent = top.entry;
        const std::size_t h = top.step;
        const int depth = left_[parent].depth + 1;
        std::uint64_t key;
        if (top.spine) {
            if (c == steps_[h].spine_index) {
                const int next_spine = step(h + 1).spine_index;
                const auto r = emit_left({depth, true, false, parent, c, h + 1, 0});
                // Everything below the old stack top is left of the spine and done.
                left_stack_.clear();
                left_stack_.push_back({true, h + 1, 0, next_spine, 1, r});
                return;
            }
            key = steps_[h].side_tree_at(c).root_key();
        } else {
            key = HashedGwTree::child_key(top.key, c);
        }
        const int d = probe_.degree_of(key);
        const auto r = emit_left({depth, false, d == 0, parent, c, h, key});
        left_stack_.push_back({false, h, key, d, 1, r});
        return;
    }
}

void SpineTree::advance_right() {
    for (;;) {
        if (right_stack_.empty()) {
            const SpineStep& s = step(right_step_);
            if (right_next_position_ < 0) right_next_position_ = s.k;
            if (right_next_position_ <= s.spine_index) {
                ++right_step_;
                right_next_position_ = -1;
                continue;
            }
            const int position = right_next_position_--;
            const std::uint64_t key = s.side_tree_at(position).root_key();
            right_path_.clear();
            for (std::size_t i = 0; i < right_step_; ++i) right_path_.push_back(steps_[i].spine_index);
            right_path_.push_back(position);
            right_stack_.push_back({key, static_cast<int>(right_step_) + 1, probe_.degree_of(key), 1});
            continue;
        }
        auto& top = right_stack_.back();
        if (top.next_child >= 1) {
            const int c = top.next_child--;
            const std::uint64_t key = HashedGwTree::child_key(top.key, c);
            const int depth = top.depth + 1;
            right_path_.push_back(c);
            right_stack_.push_back({key, depth, probe_.degree_of(key), 1});
            continue;
        }
        // All children listed: this vertex comes next in decreasing order.
        const RightFrame done = top;
        right_stack_.pop_back();
        if (right_.size() >= limits_.traversal_cap)
            throw EvaluationLimitExceeded("traversal cap exceeded", ExtendedNat(1));
        const std::size_t i = right_.size();
        right_.push_back({done.depth, done.size, right_step_, right_path_});
        right_max_depth_.push_back(i ? std::max(right_max_depth_.back(), done.depth) : done.depth);
        right_max_step_.push_back(i ? std::max(right_max_step_.back(), right_step_ + 1) : right_step_ + 1);
        right_path_.pop_back();
        if (!right_stack_.empty()) right_stack_.back().size += done.size;
        return;
    }
}

const SpineTree::LeftEntry& SpineTree::left_at(std::size_t i) {
    while (left_.size() <= i) advance_left();
    return left_[i];
}

const SpineTree::RightEntry& SpineTree::right_at(std::size_t i) {
    while (right_.size() <= i) advance_right();
    return right_[i];
}

void SpineTree::touch_left(std::size_t i, Touch& touch) { touch.include(left_max_depth_[i], left_max_step_[i]); }

void SpineTree::touch_right(std::size_t i, Touch& touch) {
    touch.include(right_max_depth_[i], right_max_step_[i]);
}

std::vector<Vertex> SpineTree::v_sequence(std::size_t j) {
    left_at(j);
    std::vector<Vertex> out;
    out.reserve(j + 1);
    for (std::size_t i = 0; i <= j; ++i) {
        std::vector<int> path(static_cast<std::size_t>(left_[i].depth));
        for (std::size_t r = i; r != 0; r = left_[r].parent)
            path[static_cast<std::size_t>(left_[r].depth) - 1] = left_[r].child;
        out.emplace_back(std::move(path));
    }
    return out;
}

std::vector<Vertex> SpineTree::w_sequence(std::size_t j) {
    std::vector<Vertex> out;
    out.reserve(j);
    for (std::size_t i = 0; i < j; ++i) out.emplace_back(right_at(i).path);
    return out;
}

ExtendedNat SpineTree::evaluate_321(std::size_t k, Touch& touch) {
    // Leaves not yet listed have s ≥ (number listed) and, because depth grows
    // by at most one per rank, s - p + 1 ≥ (number listed) - (last depth).
    // Once that bound passes k, the set {s_i - p_i + 1} ∩ [1, k] is final.
    for (;;) {
        if (!left_.empty()) {
            std::size_t bound = left_.size() - static_cast<std::size_t>(left_.back().depth);
            if (!leaf_marks_.empty()) bound = std::max(bound, leaf_marks_.back().first + 1);
            if (bound > k) break;
        }
        advance_left();
    }
    touch_left(left_.size() - 1, touch);

    auto it = std::lower_bound(leaf_marks_.begin(), leaf_marks_.end(), k,
                               [](const auto& mark, std::size_t value) { return mark.first < value; });
    if (it != leaf_marks_.end() && it->first == k) return ExtendedNat(it->second);

    // k is the alpha-th position outside {s_i - p_i + 1}; it maps to the
    // alpha-th value outside {s_i}, i.e. the alpha-th non-leaf rank ≥ 1.
    const std::size_t alpha = k - static_cast<std::size_t>(it - leaf_marks_.begin());
    while (non_leaf_ranks_.size() < alpha) advance_left();
    const std::size_t beta = non_leaf_ranks_[alpha - 1];
    touch_left(beta, touch);
    return ExtendedNat(beta);
}

ExtendedNat SpineTree::evaluate(Pattern sigma, std::size_t k, Touch& touch) {
    if (k == 0) throw std::invalid_argument("positions start at 1");
    switch (sigma) {
        case Pattern::p123:
        case Pattern::p132:
            return ExtendedNat::infinity();
        case Pattern::p321:
            return evaluate_321(k, touch);
        case Pattern::p231: {
            const LeftEntry e = left_at(k);
            touch_left(k, touch);
            if (e.spine) return ExtendedNat::infinity();
            auto ext = probe_.extent(e.key, limits_.fringe_cap);
            const auto depth = static_cast<std::size_t>(e.depth);
            if (!ext)
                throw EvaluationLimitExceeded("fringe cap exceeded",
                                              ExtendedNat(k + limits_.fringe_cap + 1 - depth));
            touch.include(e.depth + ext->height, e.step + 1);
            return ExtendedNat(k + ext->size - depth);
        }
        case Pattern::p213: {
            const LeftEntry e = left_at(k);
            touch_left(k, touch);
            if (!e.spine) return ExtendedNat::infinity();
            // v_k = η_h: everything outside its fringe is the k vertices before
            // it plus the side trees right of the spine below height h.
            std::size_t right_total = 0;
            for (std::size_t g = 0; g < e.step; ++g) {
                const SpineStep& s = steps_[g];
                for (int c = s.spine_index + 1; c <= s.k; ++c) {
                    auto ext = probe_.extent(s.side_tree_at(c).root_key(), limits_.fringe_cap - right_total);
                    if (!ext)
                        throw EvaluationLimitExceeded("fringe cap exceeded", ExtendedNat(limits_.fringe_cap + 1));
                    right_total += ext->size;
                    touch.include(static_cast<int>(g) + 1 + ext->height, g + 1);
                }
            }
            return ExtendedNat(right_total + static_cast<std::size_t>(e.depth));
        }
        case Pattern::p312: {
            const RightEntry& e = right_at(k - 1);
            touch_right(k - 1, touch);
            const std::size_t value = k + static_cast<std::size_t>(e.depth) - e.fringe;
            if (k + static_cast<std::size_t>(e.depth) <= e.fringe)
                throw std::logic_error("non-positive 312 value: tree outside the limit class");
            return ExtendedNat(value);
        }
    }
    throw std::invalid_argument("unknown pattern");
}

ExtendedNat SpineTree::phi(Pattern sigma, std::size_t k) {
    Touch touch;
    return evaluate(sigma, k, touch);
}

std::size_t SpineTree::phi_321(std::size_t k) { return static_cast<std::size_t>(phi(Pattern::p321, k).value()); }

Horizon SpineTree::stability_horizon(Pattern sigma, std::size_t k) {
    Touch touch;
    evaluate(sigma, k, touch);
    if (sigma == Pattern::p123 || sigma == Pattern::p132) return {};
    return {touch.steps, static_cast<std::size_t>(touch.depth) + 1};
}

}  // namespace patlim
