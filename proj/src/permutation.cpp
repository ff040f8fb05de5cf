#include "patlim/permutation.hpp"

#include <stdexcept>
#include <utility>

namespace patlim {

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
    std::vector<bool> seen(values_.size() + 1, false);
    for (int v : values_) {
        if (v < 1 || static_cast<std::size_t>(v) > values_.size() || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("not a permutation of {1..n}");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

std::string Permutation::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values_[i]);
    }
    return out + ")";
}

std::string_view pattern_name(Pattern sigma) {
    switch (sigma) {
        case Pattern::p123: return "123";
        case Pattern::p132: return "132";
        case Pattern::p213: return "213";
        case Pattern::p231: return "231";
        case Pattern::p312: return "312";
        case Pattern::p321: return "321";
    }
    return "?";
}

std::optional<Pattern> parse_pattern(std::string_view name) {
    for (auto p : kAllPatterns) {
        if (pattern_name(p) == name) return p;
    }
    return std::nullopt;
}

std::array<int, 3> pattern_values(Pattern sigma) {
    auto name = pattern_name(sigma);
    return {name[0] - '0', name[1] - '0', name[2] - '0'};
}

namespace {

// True iff (a, b, c) is order-isomorphic to the pattern values.
bool matches(int a, int b, int c, const std::array<int, 3>& s) {
    return ((a < b) == (s[0] < s[1])) && ((a < c) == (s[0] < s[2])) && ((b < c) == (s[1] < s[2]));
}

void extend_avoiders(int n, const std::array<int, 3>& s, std::vector<int>& prefix, std::vector<bool>& used,
                     std::vector<Permutation>& out) {
    if (prefix.size() == static_cast<std::size_t>(n)) {
        out.emplace_back(prefix);
        return;
    }
    for (int x = 1; x <= n; ++x) {
        if (used[static_cast<std::size_t>(x)]) continue;
        bool creates = false;
        for (std::size_t a = 0; a < prefix.size() && !creates; ++a) {
            for (std::size_t b = a + 1; b < prefix.size(); ++b) {
                if (matches(prefix[a], prefix[b], x, s)) {
                    creates = true;
                    break;
                }
            }
        }
        if (creates) continue;
        used[static_cast<std::size_t>(x)] = true;
        prefix.push_back(x);
        extend_avoiders(n, s, prefix, used, out);
        prefix.pop_back();
        used[static_cast<std::size_t>(x)] = false;
    }
}

}  // namespace

bool contains(std::span<const int> pi, Pattern sigma) {
    auto s = pattern_values(sigma);
    for (std::size_t i = 0; i < pi.size(); ++i)
        for (std::size_t j = i + 1; j < pi.size(); ++j)
            for (std::size_t k = j + 1; k < pi.size(); ++k)
                if (matches(pi[i], pi[j], pi[k], s)) return true;
    return false;
}

std::vector<Permutation> enumerate_avoiders(int n, Pattern sigma) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (n > kMaxEnumerationLength) throw std::out_of_range("exhaustion bound exceeded");
    std::vector<Permutation> out;
    std::vector<int> prefix;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    extend_avoiders(n, pattern_values(sigma), prefix, used, out);
    return out;
}

std::vector<std::size_t> ltr_maxima_indices(const Permutation& pi) {
    std::vector<std::size_t> out;
    int best = 0;
    for (std::size_t i = 1; i <= pi.size(); ++i) {
        if (pi(i) > best) {
            best = pi(i);
            out.push_back(i);
        }
    }
    return out;
}

std::uint64_t catalan(int n) {
    if (n < 0 || n > 35) throw std::out_of_range("catalan index out of range");
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = 1;
    for (int m = 1; m <= n; ++m)
        for (int i = 0; i < m; ++i) c[static_cast<std::size_t>(m)] += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(m - 1 - i)];
    return c[static_cast<std::size_t>(n)];
}

nlohmann::json to_json(const Permutation& pi) { return nlohmann::json(std::vector<int>(pi.values().begin(), pi.values().end())); }

Permutation permutation_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("permutation JSON must be an array");
    return Permutation(j.get<std::vector<int>>());
}

}  // namespace patlim
