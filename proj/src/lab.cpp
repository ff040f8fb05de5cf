#include "patlim/lab.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "patlim/rng.hpp"
#include "patlim/samplers.hpp"

namespace patlim {

bool VerifyReport::passed() const { return first_failure() == nullptr; }

const VerifyCheck* VerifyReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.ok) return &c;
    return nullptr;
}

namespace {

void record(VerifyReport& report, Pattern sigma, int n, std::string invariant, bool ok, std::string detail = {}) {
    report.checks.push_back({sigma, n, std::move(invariant), ok, std::move(detail)});
}

}  // namespace

VerifyReport verify_bijections(int n_max, const PhiTable& table) {
    if (n_max < 1) throw std::invalid_argument("n_max must be positive");
    if (n_max > kMaxVerifySize) throw std::out_of_range("exhaustion bound exceeded");
    VerifyReport report;
    for (int n = 1; n <= n_max; ++n) {
        const auto trees = enumerate_trees(static_cast<std::size_t>(n) + 1);
        for (Pattern sigma : kAllPatterns) {
            std::set<Permutation> image;
            bool valid = true, avoids = true;
            std::string detail;
            for (const auto& t : trees) {
                try {
                    Permutation pi = table(sigma, t);
                    if (pi.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("wrong length");
                    if (contains(pi, sigma) && avoids) {
                        avoids = false;
                        detail = pi.to_string();
                    }
                    image.insert(std::move(pi));
                } catch (const std::invalid_argument& e) {
                    valid = false;
                }
            }
            const bool injective = valid && image.size() == trees.size();
            record(report, sigma, n, "bijectivity", injective,
                   injective ? "" : std::to_string(image.size()) + " distinct images of " + std::to_string(trees.size()));
            record(report, sigma, n, "avoidance", avoids, detail);
            record(report, sigma, n, "catalan count", image.size() == catalan(n),
                   std::to_string(image.size()) + " vs " + std::to_string(catalan(n)));
            const auto oracle = enumerate_avoiders(n, sigma);
            const bool equal = std::equal(image.begin(), image.end(), oracle.begin(), oracle.end());
            record(report, sigma, n, "image equals avoiders", equal);

            if (sigma == Pattern::p321) {
                bool round_trip = valid;
                for (std::size_t i = 0; round_trip && i < trees.size(); ++i) {
                    try {
                        round_trip = inverse_phi_321(table(sigma, trees[i])) == trees[i];
                    } catch (const std::invalid_argument&) {
                        round_trip = false;
                    }
                }
                record(report, sigma, n, "321 round-trip", round_trip);
            }
        }
    }
    return report;
}

nlohmann::json to_json(const VerifyReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json j = {{"pattern", pattern_name(c.sigma)}, {"n", c.n}, {"invariant", c.invariant}, {"ok", c.ok}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        checks.push_back(j);
    }
    return {{"passed", report.passed()}, {"checks", checks}};
}

namespace {

unsigned resolve_workers(unsigned workers) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return workers;
}

// Runs shard(index, first, last) for every block of kShardSize samples and
// adds the results together.
template <class Shard>
PrefixLaw run_sharded(std::uint64_t count, std::size_t k, std::uint32_t bucket_cap, unsigned workers, Shard shard) {
    const std::uint64_t shards = (count + kShardSize - 1) / kShardSize;
    std::vector<PrefixLaw> parts(shards, PrefixLaw(k, bucket_cap));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::uint64_t s; (s = next.fetch_add(1)) < shards;) {
            try {
                const std::uint64_t first = s * kShardSize;
                shard(s, first, std::min(count, first + kShardSize), parts[s]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), std::max<std::uint64_t>(shards, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    PrefixLaw law(k, bucket_cap);
    for (const auto& part : parts) law.merge(part);
    return law;
}

constexpr std::uint64_t kSampleDomain = 0x73616d706c65ULL;
constexpr std::uint64_t kLimitDomain = 0x6c696d6974ULL;

}  // namespace

PrefixLaw sample_prefix_law(Pattern sigma, std::size_t n, std::uint64_t count, std::size_t k,
                            std::uint32_t bucket_cap, const RunOptions& options) {
    if (k > n) throw std::invalid_argument("k > n");
    const std::uint64_t domain = derive_seed(derive_seed(options.seed, kSampleDomain), n);
    return run_sharded(count, k, bucket_cap, options.workers,
                       [&](std::uint64_t shard, std::uint64_t first, std::uint64_t last, PrefixLaw& out) {
                           SeededRng rng(domain, shard);
                           std::vector<ExtendedNat> values(k);
                           for (std::uint64_t i = first; i < last; ++i) {
                               const Permutation pi = phi(sigma, sample_uniform_tree(n + 1, rng));
                               for (std::size_t j = 0; j < k; ++j)
                                   values[j] = ExtendedNat(static_cast<std::uint64_t>(pi(j + 1)));
                               out.add_values(values);
                           }
                       });
}

PrefixLaw exact_prefix_law(Pattern sigma, std::size_t n, std::size_t k, std::uint32_t bucket_cap) {
    if (k > n) throw std::invalid_argument("k > n");
    PrefixLaw law(k, bucket_cap);
    std::vector<ExtendedNat> values(k);
    for (const auto& t : enumerate_trees(n + 1)) {
        const Permutation pi = phi(sigma, t);
        for (std::size_t j = 0; j < k; ++j) values[j] = ExtendedNat(static_cast<std::uint64_t>(pi(j + 1)));
        law.add_values(values);
    }
    return law;
}

std::uint64_t limit_tree_seed(std::uint64_t seed, std::uint64_t i) {
    return derive_seed(derive_seed(seed, kLimitDomain), i);
}

namespace {

// Evaluates the window; a value cut off by a cap is replaced by its lower
// bound. Returns false when some cut-off value might still be ≤ M.
bool evaluate_window(SpineTree& tree, Pattern sigma, std::uint32_t bucket_cap, std::vector<ExtendedNat>& values) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        try {
            values[j] = tree.phi(sigma, j + 1);
        } catch (const EvaluationLimitExceeded& e) {
            if (e.lower_bound() <= ExtendedNat(bucket_cap)) return false;
            values[j] = e.lower_bound();
        }
    }
    return true;
}

}  // namespace

PrefixLaw limit_prefix_law(Pattern sigma, std::uint64_t count, std::size_t k, std::uint32_t bucket_cap,
                           const RunOptions& options) {
    // Exact fringe sizes are only needed up to about M; larger fringes are
    // settled by their lower bound.
    EvalLimits quick;
    quick.fringe_cap = 4 * (static_cast<std::size_t>(bucket_cap) + k) + 16;
    return run_sharded(count, k, bucket_cap, options.workers,
                       [&](std::uint64_t, std::uint64_t first, std::uint64_t last, PrefixLaw& out) {
                           std::vector<ExtendedNat> values(k);
                           for (std::uint64_t i = first; i < last; ++i) {
                               const std::uint64_t seed = limit_tree_seed(options.seed, i);
                               SpineTree tree(seed, OffspringDistribution::geometric_half(), quick);
                               bool ok = evaluate_window(tree, sigma, bucket_cap, values);
                               if (!ok) {
                                   SpineTree full(seed);
                                   ok = evaluate_window(full, sigma, bucket_cap, values);
                               }
                               if (ok)
                                   out.add_values(values);
                               else
                                   out.add_error();
                           }
                       });
}

nlohmann::json limit_records(Pattern sigma, std::uint64_t count, std::size_t k, std::uint64_t seed) {
    nlohmann::json records = nlohmann::json::array();
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t tree_seed = limit_tree_seed(seed, i);
        SpineTree tree(tree_seed);
        nlohmann::json values = nlohmann::json::array();
        for (std::size_t j = 1; j <= k; ++j) {
            try {
                values.push_back(to_json(tree.phi(sigma, j)));
            } catch (const EvaluationLimitExceeded& e) {
                values.push_back({{"at_least", to_json(e.lower_bound())}});
            }
        }
        records.push_back({{"seed", tree_seed}, {"sigma", pattern_name(sigma)}, {"k", k}, {"values", values}});
    }
    return records;
}

ConvergeResult converge(Pattern sigma, const std::vector<std::size_t>& n_list, std::uint64_t count,
                        std::size_t k, std::uint32_t bucket_cap, const RunOptions& options) {
    if (n_list.empty()) throw std::invalid_argument("empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("n list must be increasing");
    ConvergeResult result{limit_prefix_law(sigma, count, k, bucket_cap, options), {}};
    for (std::size_t n : n_list) {
        const PrefixLaw law = sample_prefix_law(sigma, n, count, k, bucket_cap, options);
        const TvEstimate tv = total_variation(law, result.limit);
        result.rows.push_back({n, tv.tv, tv.standard_error, law.total(), law.errors() + result.limit.errors()});
    }
    return result;
}

std::string converge_csv(const std::vector<ConvergeRow>& rows) {
    std::ostringstream out;
    out.precision(10);
    out << "n,tv,tv_stderr,samples,errors\n";
    for (const auto& r : rows) out << r.n << ',' << r.tv << ',' << r.tv_stderr << ',' << r.samples << ',' << r.errors << '\n';
    return out.str();
}

nlohmann::json to_json(const ConvergeRow& row) {
    return {{"n", row.n}, {"tv", row.tv}, {"tv_stderr", row.tv_stderr}, {"samples", row.samples}, {"errors", row.errors}};
}

nlohmann::json make_manifest(const std::string& command, std::uint64_t seed, const nlohmann::json& flags) {
    return {{"command", command},
            {"seed", seed},
            {"rng", std::string(kRngAlgorithm)},
            {"flags", flags},
            {"version", PATLIM_VERSION}};
}

}  // namespace patlim
