#include "patlim/prefix_law.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace patlim {

std::uint32_t bucket_of(ExtendedNat value, std::uint32_t bucket_cap) {
    if (value.is_infinite() || value.value() > bucket_cap) return kLarge;
    if (value.value() == 0) throw std::invalid_argument("window values start at 1");
    return static_cast<std::uint32_t>(value.value());
}

PrefixLaw::PrefixLaw(std::size_t k, std::uint32_t bucket_cap) : k_(k), bucket_cap_(bucket_cap) {
    if (k == 0) throw std::invalid_argument("window length must be positive");
    if (bucket_cap == 0) throw std::invalid_argument("bucket cap must be positive");
}

void PrefixLaw::add(const Prefix& prefix, std::uint64_t count) {
    if (prefix.size() != k_) throw std::invalid_argument("prefix has the wrong length");
    for (auto code : prefix)
        if (code > bucket_cap_) throw std::invalid_argument("bucket code out of range");
    if (count == 0) return;
    counts_[prefix] += count;
    total_ += count;
}

void PrefixLaw::add_values(std::span<const ExtendedNat> values) {
    if (values.size() != k_) throw std::invalid_argument("prefix has the wrong length");
    Prefix prefix(k_);
    for (std::size_t i = 0; i < k_; ++i) prefix[i] = bucket_of(values[i], bucket_cap_);
    add(prefix);
}

void PrefixLaw::merge(const PrefixLaw& other) {
    if (other.k_ != k_ || other.bucket_cap_ != bucket_cap_) throw std::invalid_argument("incompatible laws");
    for (const auto& [prefix, c] : other.counts_) counts_[prefix] += c;
    total_ += other.total_;
    errors_ += other.errors_;
}

std::uint64_t PrefixLaw::count(const Prefix& prefix) const {
    auto it = counts_.find(prefix);
    return it == counts_.end() ? 0 : it->second;
}

double PrefixLaw::probability(const Prefix& prefix) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(count(prefix)) / static_cast<double>(total_);
}

bool PrefixLaw::check_invariants() const {
    std::uint64_t sum = 0;
    for (const auto& [prefix, c] : counts_) {
        if (prefix.size() != k_) return false;
        for (auto code : prefix)
            if (code > bucket_cap_) return false;
        sum += c;
    }
    return sum == total_;
}

nlohmann::json to_json(const PrefixLaw& law) {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [prefix, c] : law.counts()) {
        nlohmann::json p = nlohmann::json::array();
        for (auto code : prefix) {
            if (code == kLarge)
                p.push_back("LARGE");
            else
                p.push_back(code);
        }
        counts.push_back({{"prefix", p}, {"count", c}});
    }
    return {{"k", law.k()},
            {"bucket_cap", law.bucket_cap()},
            {"total", law.total()},
            {"errors", law.errors()},
            {"counts", counts}};
}

PrefixLaw prefix_law_from_json(const nlohmann::json& j) {
    PrefixLaw law(j.at("k").get<std::size_t>(), j.at("bucket_cap").get<std::uint32_t>());
    for (const auto& entry : j.at("counts")) {
        Prefix prefix;
        for (const auto& code : entry.at("prefix")) {
            if (code.is_string()) {
                if (code.get<std::string>() != "LARGE") throw std::invalid_argument("unknown bucket");
                prefix.push_back(kLarge);
            } else {
                auto v = code.get<std::uint32_t>();
                if (v == 0) throw std::invalid_argument("bucket code out of range");
                prefix.push_back(v);
            }
        }
        law.add(prefix, entry.at("count").get<std::uint64_t>());
    }
    law.add_error(j.value("errors", std::uint64_t{0}));
    if (law.total() != j.at("total").get<std::uint64_t>()) throw std::invalid_argument("counts do not sum to total");
    return law;
}

TvEstimate total_variation(const PrefixLaw& p, const PrefixLaw& q) {
    if (p.k() != q.k() || p.bucket_cap() != q.bucket_cap()) throw std::invalid_argument("incompatible laws");
    if (p.total() == 0 || q.total() == 0) throw std::invalid_argument("empty law");
    std::set<Prefix> cells;
    for (const auto& [prefix, c] : p.counts()) cells.insert(prefix);
    for (const auto& [prefix, c] : q.counts()) cells.insert(prefix);

    // tv = ½ Σ s_c (p_c - q_c) with s_c the sign of p_c - q_c; each side
    // contributes Var(s(X)) / n.
    double tv = 0.0, mean_p = 0.0, mean_q = 0.0, sq_p = 0.0, sq_q = 0.0;
    for (const auto& cell : cells) {
        const double pc = p.probability(cell), qc = q.probability(cell);
        const double s = pc > qc ? 1.0 : (pc < qc ? -1.0 : 0.0);
        tv += std::abs(pc - qc);
        mean_p += s * pc;
        mean_q += s * qc;
        sq_p += s * s * pc;
        sq_q += s * s * qc;
    }
    const double var = (sq_p - mean_p * mean_p) / static_cast<double>(p.total()) +
                       (sq_q - mean_q * mean_q) / static_cast<double>(q.total());
    return {0.5 * tv, 0.5 * std::sqrt(std::max(var, 0.0))};
}

}  // namespace patlim
