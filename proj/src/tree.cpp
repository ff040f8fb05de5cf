#include "patlim/tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace patlim {

Vertex::Vertex(std::initializer_list<int> path) : Vertex(std::vector<int>(path)) {}

Vertex::Vertex(std::vector<int> path) : path_(std::move(path)) {
    for (int i : path_) {
        if (i < 1) throw std::invalid_argument("vertex label entries must be positive");
    }
}

Vertex Vertex::child(int i) const {
    if (i < 1) throw std::invalid_argument("child index must be positive");
    Vertex v = *this;
    v.path_.push_back(i);
    return v;
}

Vertex Vertex::parent() const {
    Vertex v = *this;
    v.path_.pop_back();
    return v;
}

Vertex Vertex::concat(const Vertex& suffix) const {
    Vertex v = *this;
    v.path_.insert(v.path_.end(), suffix.path_.begin(), suffix.path_.end());
    return v;
}

bool Vertex::is_ancestor_of(const Vertex& v) const {
    return path_.size() <= v.path_.size() && std::equal(path_.begin(), path_.end(), v.path_.begin());
}

std::string Vertex::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < path_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(path_[i]);
    }
    return out + ")";
}

std::strong_ordering lex_compare(const Vertex& u, const Vertex& v) { return u <=> v; }

OrderedTree::OrderedTree() : OrderedTree(std::vector<int>{0}, true) {}

OrderedTree::OrderedTree(std::vector<int> degrees, bool)
    : degrees_(std::move(degrees)),
      depths_(degrees_.size(), 0),
      sizes_(degrees_.size(), 1),
      parents_(degrees_.size(), 0) {
    // (rank, children still to be placed)
    std::vector<std::pair<std::size_t, int>> open;
    open.reserve(64);
    for (std::size_t r = 0; r < degrees_.size(); ++r) {
        if (r > 0) {
            auto& top = open.back();
            parents_[r] = top.first;
            depths_[r] = depths_[top.first] + 1;
            if (--top.second == 0) open.pop_back();
        }
        if (degrees_[r] > 0) open.emplace_back(r, degrees_[r]);
    }
    for (std::size_t r = degrees_.size(); r-- > 1;) sizes_[parents_[r]] += sizes_[r];
}

OrderedTree OrderedTree::from_degrees(std::vector<int> degrees) {
    if (degrees.empty()) throw std::invalid_argument("a tree has at least one vertex");
    long pending = 1;
    for (std::size_t r = 0; r < degrees.size(); ++r) {
        if (pending == 0) throw std::invalid_argument("degree sequence closes before its end");
        if (degrees[r] < 0) throw std::invalid_argument("negative degree");
        pending += degrees[r] - 1;
    }
    if (pending != 0) throw std::invalid_argument("degree sequence leaves unfilled children");
    return OrderedTree(std::move(degrees), true);
}

OrderedTree OrderedTree::from_depths(std::span<const int> depths) {
    if (depths.empty() || depths[0] != 0) throw std::invalid_argument("depth sequence must start at the root");
    std::vector<int> degrees(depths.size(), 0);
    std::vector<std::size_t> last_at_depth{0};
    for (std::size_t r = 1; r < depths.size(); ++r) {
        int d = depths[r];
        if (d < 1 || d > depths[r - 1] + 1) throw std::invalid_argument("invalid preorder depth sequence");
        ++degrees[last_at_depth[d - 1]];
        last_at_depth.resize(d);
        last_at_depth.push_back(r);
    }
    return OrderedTree(std::move(degrees), true);
}

OrderedTree OrderedTree::from_vertices(const std::set<Vertex>& vertices) {
    if (!validate_tree(vertices)) throw std::invalid_argument("vertex set is not a rooted ordered tree");
    std::vector<int> depths;
    depths.reserve(vertices.size());
    for (const auto& v : vertices) depths.push_back(static_cast<int>(v.height()));
    return from_depths(depths);
}

int OrderedTree::height() const { return *std::max_element(depths_.begin(), depths_.end()); }

std::size_t OrderedTree::child_rank(std::size_t rank, int j) const {
    std::size_t c = rank + 1;
    for (int i = 1; i < j; ++i) c += sizes_[c];
    return c;
}

Vertex OrderedTree::vertex_at(std::size_t rank) const {
    std::vector<int> path(static_cast<std::size_t>(depths_[rank]));
    std::size_t r = rank;
    while (r != 0) {
        std::size_t p = parents_[r];
        int idx = 1;
        for (std::size_t c = p + 1; c != r; c += sizes_[c]) ++idx;
        path[static_cast<std::size_t>(depths_[r]) - 1] = idx;
        r = p;
    }
    return Vertex(std::move(path));
}

std::optional<std::size_t> OrderedTree::rank_of(const Vertex& v) const {
    std::size_t r = 0;
    for (int i : v.path()) {
        if (i > degrees_[r]) return std::nullopt;
        r = child_rank(r, i);
    }
    return r;
}

std::vector<Vertex> OrderedTree::vertices() const {
    std::vector<Vertex> out;
    out.reserve(size());
    std::vector<int> path;
    std::vector<int> next_child;  // next child index to assign at each depth
    for (std::size_t r = 0; r < size(); ++r) {
        auto d = static_cast<std::size_t>(depths_[r]);
        path.resize(d);
        if (d > 0) path[d - 1] = next_child[d - 1]++;
        next_child.resize(d);
        next_child.push_back(1);
        out.emplace_back(path);
    }
    return out;
}

std::set<Vertex> OrderedTree::vertex_set() const {
    auto vs = vertices();
    return {vs.begin(), vs.end()};
}

bool validate_tree(const std::set<Vertex>& vertices) {
    if (!vertices.contains(Vertex{})) return false;
    for (const auto& u : vertices) {
        if (u.is_root()) continue;
        if (!vertices.contains(u.parent())) return false;
        int last = u.path().back();
        if (last > 1 && !vertices.contains(u.parent().child(last - 1))) return false;
    }
    return true;
}

int degree(const OrderedTree& t, const Vertex& u) {
    auto r = t.rank_of(u);
    return r ? t.degree_at(*r) : -1;
}

OrderedTree fringe(const OrderedTree& t, const Vertex& u) {
    auto r = t.rank_of(u);
    if (!r) throw std::out_of_range("vertex not in tree");
    auto deg = t.degrees().subspan(*r, t.fringe_size_at(*r));
    return OrderedTree::from_degrees({deg.begin(), deg.end()});
}

OrderedTree truncate(const OrderedTree& t, std::size_t m) {
    std::vector<int> degrees;
    degrees.reserve(t.size());
    for (std::size_t r = 0; r < t.size(); ++r) {
        auto d = static_cast<std::size_t>(t.depth_at(r));
        if (d < m) degrees.push_back(t.degree_at(r));
        else if (d == m) degrees.push_back(0);
    }
    return OrderedTree::from_degrees(std::move(degrees));
}

std::size_t count_at_height(const OrderedTree& t, std::size_t k) {
    return static_cast<std::size_t>(
        std::count(t.depths().begin(), t.depths().end(), static_cast<int>(k)));
}

std::vector<Vertex> vertex_order(const OrderedTree& t) { return t.vertices(); }

std::vector<Vertex> leaves(const OrderedTree& t) {
    auto all = t.vertices();
    std::vector<Vertex> out;
    for (std::size_t r = 0; r < t.size(); ++r) {
        if (t.is_leaf_at(r)) out.push_back(std::move(all[r]));
    }
    return out;
}

OrderedTree attach(const OrderedTree& t, const Vertex& l, std::span<const OrderedTree> subtrees) {
    if (subtrees.empty()) throw std::invalid_argument("attach needs at least one subtree");
    auto r = t.rank_of(l);
    if (!r || !t.is_leaf_at(*r)) throw std::invalid_argument("attachment point is not a leaf");
    std::vector<int> degrees(t.degrees().begin(), t.degrees().begin() + static_cast<std::ptrdiff_t>(*r));
    degrees.push_back(static_cast<int>(subtrees.size()));
    for (const auto& s : subtrees) degrees.insert(degrees.end(), s.degrees().begin(), s.degrees().end());
    degrees.insert(degrees.end(), t.degrees().begin() + static_cast<std::ptrdiff_t>(*r) + 1, t.degrees().end());
    return OrderedTree::from_degrees(std::move(degrees));
}

std::optional<std::uint64_t> metric_index(const Vertex& u) {
    if (u.height() > kMetricMaxHeight) return std::nullopt;
    const std::uint64_t base = kMetricMaxLabel;
    std::uint64_t index = 1;
    std::uint64_t level = 1;
    for (std::size_t h = 0; h < u.height(); ++h) {
        index += level;
        level *= base;
    }
    std::uint64_t offset = 0;
    for (int i : u.path()) {
        if (i > kMetricMaxLabel) return std::nullopt;
        offset = offset * base + static_cast<std::uint64_t>(i - 1);
    }
    return index + offset;
}

double local_distance(const OrderedTree& t, const OrderedTree& s) {
    std::vector<std::uint64_t> differing;
    auto scan = [&](const OrderedTree& a, const OrderedTree& b, bool skip_shared) {
        auto vs = a.vertices();
        for (std::size_t r = 0; r < a.size(); ++r) {
            auto rb = b.rank_of(vs[r]);
            if (rb && (skip_shared || a.degree_at(r) == b.degree_at(*rb))) continue;
            if (auto idx = metric_index(vs[r])) differing.push_back(*idx);
        }
    };
    scan(t, s, false);
    scan(s, t, true);
    std::sort(differing.begin(), differing.end(), std::greater<>());
    double total = 0.0;
    for (auto idx : differing) {
        if (idx < 2000) total += std::ldexp(1.0, -static_cast<int>(idx));
    }
    return total;
}

namespace {

nlohmann::json encode_at(const OrderedTree& t, std::size_t rank) {
    auto out = nlohmann::json::array();
    std::size_t c = rank + 1;
    for (int j = 0; j < t.degree_at(rank); ++j) {
        out.push_back(encode_at(t, c));
        c += t.fringe_size_at(c);
    }
    return out;
}

void decode_into(const nlohmann::json& j, std::vector<int>& degrees) {
    if (!j.is_array()) throw std::invalid_argument("tree JSON must be nested arrays");
    degrees.push_back(static_cast<int>(j.size()));
    for (const auto& c : j) decode_into(c, degrees);
}

}  // namespace

nlohmann::json to_json(const OrderedTree& t) { return encode_at(t, 0); }

OrderedTree tree_from_json(const nlohmann::json& j) {
    std::vector<int> degrees;
    decode_into(j, degrees);
    return OrderedTree::from_degrees(std::move(degrees));
}

}  // namespace patlim
