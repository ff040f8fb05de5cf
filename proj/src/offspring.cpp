#include "patlim/offspring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace patlim {

double geometric_half_pmf(int k) { return k < 0 ? 0.0 : std::ldexp(1.0, -(k + 1)); }

OffspringDistribution OffspringDistribution::geometric_half() {
    OffspringDistribution d;
    d.label_ = "Geometric(1/2)";
    d.geometric_ = true;
    d.mean_ = 1.0;
    return d;
}

OffspringDistribution OffspringDistribution::from_pmf(std::string label, std::vector<double> pmf) {
    if (pmf.empty()) throw std::invalid_argument("empty offspring table");
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        if (pmf[k] < 0.0) throw std::invalid_argument("negative offspring probability");
        total += pmf[k];
        mean += static_cast<double>(k) * pmf[k];
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("offspring table does not sum to 1");

    OffspringDistribution d;
    d.label_ = std::move(label);
    d.table_ = std::move(pmf);
    d.mean_ = mean;
    double acc = 0.0;
    double biased = 0.0;
    for (std::size_t k = 0; k < d.table_.size(); ++k) {
        acc += d.table_[k];
        biased += static_cast<double>(k) * d.table_[k] / mean;
        d.cdf_.push_back(acc);
        d.biased_cdf_.push_back(biased);
    }
    return d;
}

double OffspringDistribution::pmf(int k) const {
    if (geometric_) return geometric_half_pmf(k);
    if (k < 0 || static_cast<std::size_t>(k) >= table_.size()) return 0.0;
    return table_[static_cast<std::size_t>(k)];
}

bool OffspringDistribution::is_critical() const { return std::abs(mean_ - 1.0) <= 1e-12 && pmf(1) < 1.0; }

double OffspringDistribution::size_biased_pmf(int k) const {
    if (!is_critical()) throw std::domain_error("not critical");
    return k < 1 ? 0.0 : k * pmf(k);
}

int OffspringDistribution::invert(const std::vector<double>& cdf, double u) {
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (idx == cdf.size()) {
        // Rounding in the last cumulative entry: take the top of the support.
        idx = cdf.size() - 1;
        while (idx > 0 && cdf[idx - 1] >= cdf[idx]) --idx;
    }
    return static_cast<int>(idx);
}

}  // namespace patlim
