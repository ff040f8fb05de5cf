#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "patlim/rng.hpp"

namespace patlim {

// 2^{-(k+1)}: the mean-one geometric law on {0, 1, 2, ...}.
double geometric_half_pmf(int k);

// Offspring law ξ on {0, 1, 2, ...}. Two flavours: the closed-form
// Geometric(1/2), sampled exactly from random bits, and a finite-support
// table sampled by inverse CDF.
class OffspringDistribution {
public:
    static OffspringDistribution geometric_half();
    // Throws std::invalid_argument if the table is empty, has negative
    // entries, or does not sum to 1 within 1e-12.
    static OffspringDistribution from_pmf(std::string label, std::vector<double> pmf);

    const std::string& label() const { return label_; }
    double pmf(int k) const;
    double mean() const { return mean_; }
    // Mean one within 1e-12 and ξ(1) < 1.
    bool is_critical() const;

    // ξ̃(k) = k ξ(k). Throws std::domain_error("not critical").
    double size_biased_pmf(int k) const;

    template <class Gen>
    int sample(Gen& gen) const {
        if (geometric_) return sample_geometric(gen);
        return invert(cdf_, uniform_unit(gen));
    }

    // Draw from ξ̃. Precondition: is_critical().
    template <class Gen>
    int sample_size_biased(Gen& gen) const {
        // k 2^{-(k+1)} is the law of 1 + G + G' for independent geometrics.
        if (geometric_) return 1 + sample_geometric(gen) + sample_geometric(gen);
        return invert(biased_cdf_, uniform_unit(gen));
    }

private:
    OffspringDistribution() = default;

    template <class Gen>
    static int sample_geometric(Gen& gen) {
        int k = 0;
        for (;;) {
            std::uint64_t w = gen();
            if (w != 0) return k + std::countr_zero(w);
            k += 64;
        }
    }

    static int invert(const std::vector<double>& cdf, double u);

    std::string label_;
    bool geometric_ = false;
    std::vector<double> table_;
    std::vector<double> cdf_;
    std::vector<double> biased_cdf_;
    double mean_ = 0.0;
};

}  // namespace patlim
