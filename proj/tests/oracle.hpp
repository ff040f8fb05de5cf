#pragma once

// Independent reference implementations used by the tests. Trees here are
// plain sets of label vectors; nothing from the library's rank arrays is used.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace oracle {

using Label = std::vector<int>;
using LabelSet = std::vector<Label>;  // sorted lexicographically

inline bool lex_less(const Label& a, const Label& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return a.size() < b.size();
}

inline bool is_prefix(const Label& p, const Label& u) {
    return p.size() <= u.size() && std::equal(p.begin(), p.end(), u.begin());
}

inline LabelSet sorted(LabelSet s) {
    std::sort(s.begin(), s.end(), lex_less);
    return s;
}

inline std::size_t fringe_size(const LabelSet& t, const Label& v) {
    return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [&](const Label& u) { return is_prefix(v, u); }));
}

inline bool is_leaf(const LabelSet& t, const Label& v) {
    Label c = v;
    c.push_back(1);
    return std::find(t.begin(), t.end(), c) == t.end();
}

// Φ^σ straight from the defining formulas; σ given as its digits, e.g. 231.
inline std::vector<int> phi(int sigma, LabelSet t) {
    t = sorted(std::move(t));
    const int size = static_cast<int>(t.size());
    const int n = size - 1;
    std::vector<int> out(static_cast<std::size_t>(n));
    if (sigma == 321 || sigma == 123) {
        std::vector<int> a, b;
        for (int r = 1; r <= n; ++r) {
            if (is_leaf(t, t[r])) {
                a.push_back(r);
                b.push_back(r - static_cast<int>(t[r].size()) + 1);
            }
        }
        std::vector<int> rest_pos, rest_val;
        for (int i = 1; i <= n; ++i) {
            if (std::find(b.begin(), b.end(), i) == b.end()) rest_pos.push_back(i);
            if (std::find(a.begin(), a.end(), i) == a.end()) rest_val.push_back(i);
        }
        for (std::size_t i = 0; i < a.size(); ++i) out[b[i] - 1] = a[i];
        for (std::size_t i = 0; i < rest_pos.size(); ++i) out[rest_pos[i] - 1] = rest_val[i];
        if (sigma == 123)
            for (int& v : out) v = n + 1 - v;
        return out;
    }
    for (int i = 1; i <= n; ++i) {
        const Label& v = t[i];
        const Label& w = t[size - i];
        const int fv = static_cast<int>(fringe_size(t, v)), dv = static_cast<int>(v.size());
        const int fw = static_cast<int>(fringe_size(t, w)), dw = static_cast<int>(w.size());
        switch (sigma) {
            case 231: out[i - 1] = i + fv - dv; break;
            case 213: out[i - 1] = (size - fv) - i + dv; break;
            case 312: out[i - 1] = i - fw + dw; break;
            case 132: out[i - 1] = size - i + fw - dw; break;
        }
    }
    return out;
}

// Contains σ (digits) as a pattern, checked over all index triples.
inline bool contains(const std::vector<int>& pi, int sigma) {
    const int s[3] = {sigma / 100, (sigma / 10) % 10, sigma % 10};
    const std::size_t n = pi.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const int x[3] = {pi[i], pi[j], pi[k]};
                bool ok = true;
                for (int a = 0; a < 3 && ok; ++a)
                    for (int b = 0; b < 3 && ok; ++b)
                        if ((s[a] < s[b]) != (x[a] < x[b])) ok = false;
                if (ok) return true;
            }
    return false;
}

// C(2n, n) / (n + 1), evaluated incrementally.
inline std::uint64_t catalan_binomial(int n) {
    std::uint64_t c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

// Pearson goodness of fit. Cells with expected count below 5 are pooled.
inline double chi_square_pvalue(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs) {
    double n = 0;
    for (auto o : observed) n += static_cast<double>(o);
    double stat = 0, pool_o = 0, pool_e = 0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = probs[i] * n;
        if (e < 5) {
            pool_o += static_cast<double>(observed[i]);
            pool_e += e;
            continue;
        }
        stat += (static_cast<double>(observed[i]) - e) * (static_cast<double>(observed[i]) - e) / e;
        ++cells;
    }
    if (pool_e > 0) {
        stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
        ++cells;
    }
    if (cells < 2) return 1.0;
    boost::math::chi_squared dist(cells - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// Two-sample homogeneity test on count vectors over the same cells.
inline double two_sample_pvalue(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    double na = 0, nb = 0;
    for (auto x : a) na += static_cast<double>(x);
    for (auto x : b) nb += static_cast<double>(x);
    double stat = 0;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double tot = static_cast<double>(a[i] + b[i]);
        if (tot == 0) continue;
        const double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
        ++cells;
    }
    if (cells < 2) return 1.0;
    boost::math::chi_squared dist(cells - 1);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace oracle
