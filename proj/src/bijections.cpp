#include "patlim/bijections.hpp"

#include <stdexcept>

namespace patlim {

namespace {

void require_nontrivial(const OrderedTree& t) {
    if (t.size() < 2) throw std::invalid_argument("tree too small");
}

int as_int(std::size_t v) { return static_cast<int>(v); }

// A permutation avoids 321 iff its entries that are not left-to-right maxima
// form an increasing sequence.
bool avoids_321(const Permutation& pi) {
    int best = 0;
    int last_other = 0;
    for (int v : pi.values()) {
        if (v > best) {
            best = v;
        } else {
            if (v < last_other) return false;
            last_other = v;
        }
    }
    return true;
}

}  // namespace

LeafStats leaf_stats(const OrderedTree& t) {
    require_nontrivial(t);
    LeafStats out;
    for (std::size_t r = 1; r < t.size(); ++r) {
        if (t.is_leaf_at(r)) {
            out.s.push_back(r);
            out.p.push_back(static_cast<std::size_t>(t.depth_at(r)));
        }
    }
    return out;
}

Permutation phi_321(const OrderedTree& t) {
    const auto stats = leaf_stats(t);
    const std::size_t n = t.size() - 1;
    std::vector<int> values(n, 0);
    std::vector<bool> in_a(n + 1, false);
    for (std::size_t i = 0; i < stats.s.size(); ++i) {
        values[stats.s[i] - stats.p[i]] = as_int(stats.s[i]);
        in_a[stats.s[i]] = true;
    }
    std::size_t next = 1;
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (values[pos] != 0) continue;
        while (in_a[next]) ++next;
        values[pos] = as_int(next++);
    }
    return Permutation(std::move(values));
}

Permutation phi_123(const OrderedTree& t) {
    auto base = phi_321(t);
    std::vector<int> values(base.values().begin(), base.values().end());
    for (int& v : values) v = as_int(t.size()) - v;
    return Permutation(std::move(values));
}

Permutation phi_231(const OrderedTree& t) {
    require_nontrivial(t);
    std::vector<int> values(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i)
        values[i - 1] = as_int(i + t.fringe_size_at(i)) - t.depth_at(i);
    return Permutation(std::move(values));
}

Permutation phi_213(const OrderedTree& t) {
    require_nontrivial(t);
    std::vector<int> values(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i)
        values[i - 1] = as_int(t.size() - t.fringe_size_at(i)) - as_int(i) + t.depth_at(i);
    return Permutation(std::move(values));
}

Permutation phi_312(const OrderedTree& t) {
    require_nontrivial(t);
    const std::size_t total = t.size();
    std::vector<int> values(total - 1);
    for (std::size_t i = 1; i < total; ++i) {
        const std::size_t w = total - i;
        values[i - 1] = as_int(i) - as_int(t.fringe_size_at(w)) + t.depth_at(w);
    }
    return Permutation(std::move(values));
}

Permutation phi_132(const OrderedTree& t) {
    require_nontrivial(t);
    const std::size_t total = t.size();
    std::vector<int> values(total - 1);
    for (std::size_t i = 1; i < total; ++i) {
        const std::size_t w = total - i;
        values[i - 1] = as_int(total - i + t.fringe_size_at(w)) - t.depth_at(w);
    }
    return Permutation(std::move(values));
}

Permutation phi(Pattern sigma, const OrderedTree& t) {
    switch (sigma) {
        case Pattern::p123: return phi_123(t);
        case Pattern::p132: return phi_132(t);
        case Pattern::p213: return phi_213(t);
        case Pattern::p231: return phi_231(t);
        case Pattern::p312: return phi_312(t);
        case Pattern::p321: return phi_321(t);
    }
    throw std::invalid_argument("unknown pattern");
}

OrderedTree inverse_phi_321(const Permutation& pi) {
    if (pi.size() == 0) throw std::invalid_argument("empty permutation");
    if (!avoids_321(pi)) throw std::invalid_argument("not 321-avoiding");
    const std::size_t n = pi.size();
    // Vertices strictly between consecutive leaves l_{i-1} < l_i in
    // lexicographic order form a downward path ending at l_i, so the depth of
    // the vertex of rank j ∈ (s_{i-1}, s_i] is p_i - (s_i - j).
    std::vector<int> depths(n + 1, 0);
    std::size_t prev_s = 0;
    for (std::size_t m : ltr_maxima_indices(pi)) {
        const auto s = static_cast<std::size_t>(pi(m));
        const long p = static_cast<long>(s) - static_cast<long>(m) + 1;
        for (std::size_t j = prev_s + 1; j <= s; ++j)
            depths[j] = static_cast<int>(p - static_cast<long>(s - j));
        prev_s = s;
    }
    auto t = OrderedTree::from_depths(depths);
    if (phi_321(t) != pi) throw std::logic_error("321 reconstruction failed to round-trip");
    return t;
}

}  // namespace patlim
