#pragma once

// Experiment drivers behind the patlim command line.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "patlim/bijections.hpp"
#include "patlim/prefix_law.hpp"
#include "patlim/spine_tree.hpp"

namespace patlim {

inline constexpr int kMaxVerifySize = 9;
// Monte Carlo work is cut into shards of this many samples, each with its own
// stream, so the output does not depend on the number of workers.
inline constexpr std::size_t kShardSize = 1024;

using PhiTable = std::function<Permutation(Pattern, const OrderedTree&)>;

struct VerifyCheck {
    Pattern sigma;
    int n;
    std::string invariant;
    bool ok;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool passed() const;
    // First failing check, or nullptr.
    const VerifyCheck* first_failure() const;
};

// For every σ and n = 1..n_max: the images of the trees with n+1 vertices
// are distinct, σ-avoiding, number C_n and equal the brute-force Av_n(σ);
// for σ = 321 also inverse ∘ phi = id. Throws std::out_of_range("exhaustion
// bound exceeded") for n_max > 9 and std::invalid_argument for n_max < 1.
VerifyReport verify_bijections(int n_max, const PhiTable& table = phi);

nlohmann::json to_json(const VerifyReport& report);

struct RunOptions {
    std::uint64_t seed = 1;
    // 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
};

// Law of (Π_n(1), ..., Π_n(k)) with Π_n = phi_σ(uniform tree on n+1 vertices).
// Throws std::invalid_argument when k > n.
PrefixLaw sample_prefix_law(Pattern sigma, std::size_t n, std::uint64_t count, std::size_t k,
                            std::uint32_t bucket_cap, const RunOptions& options);

// The same law computed over every tree with n+1 vertices (n ≤ 11).
PrefixLaw exact_prefix_law(Pattern sigma, std::size_t n, std::size_t k, std::uint32_t bucket_cap);

// Seed of the i-th size-biased tree of a limit run.
std::uint64_t limit_tree_seed(std::uint64_t seed, std::uint64_t i);

// Φ^σ_{T̃}(1..k) bucketed at M. Values that are only known to exceed M go to
// LARGE; a sample whose bucket cannot be decided within the default caps is
// counted in errors().
PrefixLaw limit_prefix_law(Pattern sigma, std::uint64_t count, std::size_t k, std::uint32_t bucket_cap,
                           const RunOptions& options);

// One record per tree: {"seed", "sigma", "k", "values": [3, "inf", ...]}.
nlohmann::json limit_records(Pattern sigma, std::uint64_t count, std::size_t k, std::uint64_t seed);

struct ConvergeRow {
    std::size_t n;
    double tv;
    double tv_stderr;
    std::uint64_t samples;
    std::uint64_t errors;
};

struct ConvergeResult {
    PrefixLaw limit;
    std::vector<ConvergeRow> rows;
};

// Throws std::invalid_argument unless n_list is strictly increasing.
ConvergeResult converge(Pattern sigma, const std::vector<std::size_t>& n_list, std::uint64_t count,
                        std::size_t k, std::uint32_t bucket_cap, const RunOptions& options);

std::string converge_csv(const std::vector<ConvergeRow>& rows);
nlohmann::json to_json(const ConvergeRow& row);

nlohmann::json make_manifest(const std::string& command, std::uint64_t seed, const nlohmann::json& flags);

}  // namespace patlim
