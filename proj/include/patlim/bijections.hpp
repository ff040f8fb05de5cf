#pragma once

// The six bijections from plane trees with n+1 vertices to Av_n(σ).
//
// For a tree t with vertices v_0 < v_1 < ... < v_n in lexicographic order,
// every map below is defined on positions i = 1..n. The reversed listing is
// w_i = v_{n+1-i}, so w_1 is the lexicographically largest vertex.

#include <cstddef>
#include <vector>

#include "patlim/permutation.hpp"
#include "patlim/tree.hpp"

namespace patlim {

// Leaves l_1 < ... < l_k with s_i = |{v ∈ t : v < l_i}| and p_i = |l_i|.
struct LeafStats {
    std::vector<std::size_t> s;
    std::vector<std::size_t> p;
};

// Throws std::invalid_argument("tree too small") when |t| = 1.
LeafStats leaf_stats(const OrderedTree& t);

// Sends s_i - p_i + 1 to s_i and fills the rest increasingly; maps leaves to
// left-to-right maxima.
Permutation phi_321(const OrderedTree& t);
// n + 1 - phi_321, with n = |t| - 1
Permutation phi_123(const OrderedTree& t);
// i + |t_{v_i}| - |v_i|
Permutation phi_231(const OrderedTree& t);
// |t \ t_{v_i}| - i + |v_i|
Permutation phi_213(const OrderedTree& t);
// i - |t_{w_i}| + |w_i|
Permutation phi_312(const OrderedTree& t);
// |t| - i + |t_{w_i}| - |w_i|
Permutation phi_132(const OrderedTree& t);

Permutation phi(Pattern sigma, const OrderedTree& t);

// Rebuilds the tree from the left-to-right maxima of pi: the maximum at
// position m_i gives the leaf with s_i = pi(m_i) and p_i = pi(m_i) - m_i + 1.
// Throws std::invalid_argument("not 321-avoiding").
OrderedTree inverse_phi_321(const Permutation& pi);

}  // namespace patlim
