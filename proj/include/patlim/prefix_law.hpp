#pragma once

// Empirical law of a bucketed window (x_1, ..., x_k). Values above the
// bucket cap M and ∞ share the LARGE bucket.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "patlim/spine_tree.hpp"

namespace patlim {

// Bucket code 0 stands for LARGE; 1..M are themselves.
inline constexpr std::uint32_t kLarge = 0;

using Prefix = std::vector<std::uint32_t>;

std::uint32_t bucket_of(ExtendedNat value, std::uint32_t bucket_cap);

class PrefixLaw {
public:
    // Throws std::invalid_argument for k = 0 or bucket_cap = 0.
    PrefixLaw(std::size_t k, std::uint32_t bucket_cap);

    std::size_t k() const { return k_; }
    std::uint32_t bucket_cap() const { return bucket_cap_; }
    const std::map<Prefix, std::uint64_t>& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }
    // Samples that could not be evaluated; not part of total.
    std::uint64_t errors() const { return errors_; }

    // Throws std::invalid_argument on a wrong length or an out-of-range code.
    void add(const Prefix& prefix, std::uint64_t count = 1);
    void add_values(std::span<const ExtendedNat> values);
    void add_error(std::uint64_t count = 1) { errors_ += count; }

    // Exact count addition. Throws std::invalid_argument on a k or M mismatch.
    void merge(const PrefixLaw& other);

    double probability(const Prefix& prefix) const;
    std::uint64_t count(const Prefix& prefix) const;

    // Σ counts = total and every code is in range.
    bool check_invariants() const;

    bool operator==(const PrefixLaw&) const = default;

private:
    std::size_t k_;
    std::uint32_t bucket_cap_;
    std::map<Prefix, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t errors_ = 0;
};

// {"k", "bucket_cap", "total", "errors", "counts": [{"prefix": [3, "LARGE"], "count": 12}, ...]}
nlohmann::json to_json(const PrefixLaw& law);
PrefixLaw prefix_law_from_json(const nlohmann::json& j);

struct TvEstimate {
    double tv;
    // Delta-method standard error for two independent samples.
    double standard_error;
};

// ½ Σ |p - q| over the bucketed cells. Throws std::invalid_argument on a k or
// M mismatch or an empty law.
TvEstimate total_variation(const PrefixLaw& p, const PrefixLaw& q);

}  // namespace patlim
