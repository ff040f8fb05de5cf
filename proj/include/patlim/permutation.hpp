#pragma once

// Permutations in one-line notation and a brute-force oracle for
// length-3 pattern containment.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace patlim {

class Permutation {
public:
    Permutation() = default;
    // Throws std::invalid_argument unless values is a bijection of {1..n}.
    explicit Permutation(std::vector<int> values);

    std::size_t size() const { return values_.size(); }
    // 1-based: pi(i) for 1 ≤ i ≤ n.
    int operator()(std::size_t i) const { return values_[i - 1]; }
    std::span<const int> values() const { return values_; }

    auto operator<=>(const Permutation&) const = default;
    bool operator==(const Permutation&) const = default;

    std::string to_string() const;

private:
    std::vector<int> values_;
};

enum class Pattern { p123, p132, p213, p231, p312, p321 };

inline constexpr std::array<Pattern, 6> kAllPatterns{Pattern::p123, Pattern::p132, Pattern::p213,
                                                     Pattern::p231, Pattern::p312, Pattern::p321};

std::string_view pattern_name(Pattern sigma);
std::optional<Pattern> parse_pattern(std::string_view name);
std::array<int, 3> pattern_values(Pattern sigma);

// Exhaustive scan over index triples.
bool contains(std::span<const int> pi, Pattern sigma);
inline bool contains(const Permutation& pi, Pattern sigma) { return contains(pi.values(), sigma); }

inline constexpr int kMaxEnumerationLength = 12;

// Av_n(σ) in lexicographic order. Throws std::invalid_argument for n < 1 and
// std::out_of_range("exhaustion bound exceeded") for n > 12.
std::vector<Permutation> enumerate_avoiders(int n, Pattern sigma);

// 1-based positions m with pi(m) > pi(j) for every j < m.
std::vector<std::size_t> ltr_maxima_indices(const Permutation& pi);

// C_n from the convolution recurrence; exact for n ≤ 35.
std::uint64_t catalan(int n);

nlohmann::json to_json(const Permutation& pi);
Permutation permutation_from_json(const nlohmann::json& j);

}  // namespace patlim
