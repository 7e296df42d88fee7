#include "vclass/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vclass {

namespace {

struct RankData {
    // Doubled mid-ranks are integers even with ties, so tail comparisons
    // stay exact.
    std::vector<long long> doubled;
    std::vector<long long> tie_sizes;
};

RankData doubled_midranks(std::span<const double> pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });

    RankData out;
    out.doubled.assign(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // ranks i+1 .. j+1 share mid-rank (i+j+2)/2, doubled: i+j+2
        const long long doubled = static_cast<long long>(i + j + 2);
        for (std::size_t k = i; k <= j; ++k) out.doubled[order[k]] = doubled;
        out.tie_sizes.push_back(static_cast<long long>(j - i + 1));
        i = j + 1;
    }
    return out;
}

double tie_cubed_sum(const std::vector<long long>& tie_sizes) {
    double s = 0.0;
    for (long long t : tie_sizes) {
        const double td = static_cast<double>(t);
        s += td * td * td - td;
    }
    return s;
}

constexpr int kExactAutoLimit = 16; // C(16, 8) = 12870 assignments
constexpr int kExactHardLimit = 64; // subset counts stay within uint64

struct TailCounts {
    unsigned long long lo = 0, hi = 0, total = 0;
};

// Number of size-m subsets of the pooled doubled ranks for every possible
// doubled rank sum; counts fit in uint64 for n <= 64.
TailCounts exact_tail_counts(const std::vector<long long>& doubled, std::size_t m,
                             long long observed) {
    const std::size_t n = doubled.size();
    long long max_sum = 0;
    std::vector<long long> sorted(doubled.begin(), doubled.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (std::size_t i = 0; i < m; ++i) max_sum += sorted[i];

    std::vector<std::vector<unsigned long long>> ways(
        m + 1, std::vector<unsigned long long>(static_cast<std::size_t>(max_sum) + 1, 0));
    ways[0][0] = 1;
    for (std::size_t item = 0; item < n; ++item) {
        const long long v = doubled[item];
        const std::size_t upper = std::min(item + 1, m);
        for (std::size_t k = upper; k >= 1; --k) {
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (long long w = max_sum - v; w >= 0; --w)
                if (src[static_cast<std::size_t>(w)])
                    dst[static_cast<std::size_t>(w + v)] += src[static_cast<std::size_t>(w)];
        }
    }

    TailCounts counts;
    for (long long w = 0; w <= max_sum; ++w) {
        const unsigned long long c = ways[m][static_cast<std::size_t>(w)];
        if (!c) continue;
        counts.total += c;
        if (w <= observed) counts.lo += c;
        if (w >= observed) counts.hi += c;
    }
    return counts;
}

double two_sided_from_tails(unsigned long long lo, unsigned long long hi,
                            unsigned long long total) {
    const double tail = static_cast<double>(std::min(lo, hi)) / static_cast<double>(total);
    return std::min(1.0, 2.0 * tail);
}

} // namespace

std::vector<double> midranks(std::span<const double> pooled) {
    RankData rd = doubled_midranks(pooled);
    std::vector<double> out(rd.doubled.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(rd.doubled[i]) / 2.0;
    return out;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Regularized upper incomplete gamma Q(a, x): series for the lower tail,
// Lentz continued fraction for the upper.
static double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) {
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
        }
        const double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return std::max(0.0, 1.0 - p);
    }
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chi_squared_sf(double x, double df) {
    if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    if (x <= 0.0) return 1.0;
    return gamma_q(df / 2.0, x / 2.0);
}

StatResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                             WilcoxonMode mode) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon_rank_sum needs two non-empty samples");
    const std::size_t m = a.size(), n = b.size(), N = m + n;

    std::vector<double> pooled;
    pooled.reserve(N);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    RankData rd = doubled_midranks(pooled);

    long long w2 = 0;
    for (std::size_t i = 0; i < m; ++i) w2 += rd.doubled[i];
    const double w = static_cast<double>(w2) / 2.0;

    bool exact = mode == WilcoxonMode::Exact ||
                 (mode == WilcoxonMode::Auto && N <= kExactAutoLimit);
    if (exact && N > kExactHardLimit)
        throw std::invalid_argument("exact mode supports at most 64 pooled observations");

    if (exact) {
        const TailCounts counts = exact_tail_counts(rd.doubled, m, w2);
        return StatResult{w, two_sided_from_tails(counts.lo, counts.hi, counts.total),
                          StatMethod::WilcoxonExact, false};
    }

    const double dm = static_cast<double>(m), dn = static_cast<double>(n),
                 dN = static_cast<double>(N);
    const double mean = dm * (dN + 1.0) / 2.0;
    const double tie_term = tie_cubed_sum(rd.tie_sizes) / (dN * (dN - 1.0));
    const double var = dm * dn / 12.0 * ((dN + 1.0) - tie_term);
    double p = 1.0;
    double z = 0.0;
    if (var > 0.0 && w != mean) {
        const double cc = w > mean ? 0.5 : -0.5; // continuity correction
        z = (w - mean - cc) / std::sqrt(var);
        p = std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
    }
    return StatResult{w, p, StatMethod::WilcoxonNormal, false};
}

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups,
                                   bool bonferroni) {
    const std::size_t k = groups.size();
    if (k < 2) throw std::invalid_argument("kruskal_wallis needs at least two groups");
    for (const auto& g : groups)
        if (g.empty()) throw std::invalid_argument("kruskal_wallis groups must be non-empty");

    std::vector<double> pooled;
    std::vector<std::size_t> label;
    for (std::size_t g = 0; g < k; ++g)
        for (double v : groups[g]) {
            pooled.push_back(v);
            label.push_back(g);
        }
    const double N = static_cast<double>(pooled.size());
    RankData rd = doubled_midranks(pooled);

    std::vector<double> rank_sum(k, 0.0);
    for (std::size_t i = 0; i < pooled.size(); ++i)
        rank_sum[label[i]] += static_cast<double>(rd.doubled[i]) / 2.0;

    double h = 0.0;
    for (std::size_t g = 0; g < k; ++g)
        h += rank_sum[g] * rank_sum[g] / static_cast<double>(groups[g].size());
    h = 12.0 / (N * (N + 1.0)) * h - 3.0 * (N + 1.0);

    const double correction = 1.0 - tie_cubed_sum(rd.tie_sizes) / (N * N * N - N);
    KruskalWallisResult result;
    if (correction <= 0.0) {
        // every pooled value tied: no rank variation at all
        result.omnibus = StatResult{0.0, 1.0, StatMethod::KruskalWallis, false};
    } else {
        h = std::max(0.0, h / correction);
        result.omnibus = StatResult{h, chi_squared_sf(h, static_cast<double>(k - 1)),
                                    StatMethod::KruskalWallis, false};
    }

    if (bonferroni) {
        const double comparisons = static_cast<double>(k * (k - 1) / 2);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                StatResult r = wilcoxon_rank_sum(groups[i], groups[j], WilcoxonMode::Auto);
                r.p_value = std::min(1.0, r.p_value * comparisons);
                r.corrected = true;
                result.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
                result.pairwise.push_back(r);
            }
    }
    return result;
}

std::string_view stat_method_name(StatMethod m) {
    switch (m) {
    case StatMethod::WilcoxonExact: return "wilcoxon-exact";
    case StatMethod::WilcoxonNormal: return "wilcoxon-normal";
    case StatMethod::KruskalWallis: return "kruskal-wallis";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Enumeration reference: walks every size-m subset of the pooled ranks.

namespace reference {

namespace {

std::vector<unsigned long long> binomial_table(unsigned n) {
    std::vector<unsigned long long> row(n + 1, 0);
    // C(n, k) for the fixed n, built iteratively
    row[0] = 1;
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned k = std::min(i, n); k >= 1; --k) row[k] += row[k - 1];
    return row;
}

// Lexicographic unranking of the idx-th size-m combination of {0..n-1}.
std::vector<int> unrank_combination(unsigned long long idx, int n, int m) {
    std::vector<int> comb(static_cast<std::size_t>(m));
    int value = 0;
    for (int slot = 0; slot < m; ++slot) {
        for (;; ++value) {
            unsigned long long with_value = 1;
            // count combinations starting with `value`: C(n - value - 1, m - slot - 1)
            {
                const int nn = n - value - 1;
                const int kk = m - slot - 1;
                if (kk > nn) {
                    with_value = 0;
                } else {
                    unsigned long long c = 1;
                    const int cap = std::min(kk, nn - kk);
                    for (int i = 1; i <= cap; ++i)
                        c = c * static_cast<unsigned long long>(nn - cap + i) /
                            static_cast<unsigned long long>(i);
                    with_value = c;
                }
            }
            if (idx < with_value) break;
            idx -= with_value;
        }
        comb[static_cast<std::size_t>(slot)] = value;
        ++value;
    }
    return comb;
}

bool next_combination(std::vector<int>& comb, int n) {
    const int m = static_cast<int>(comb.size());
    int i = m - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) return false;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

void count_range(const std::vector<long long>& doubled, int m, unsigned long long from,
                 unsigned long long to, long long observed, unsigned long long& lo,
                 unsigned long long& hi) {
    const int n = static_cast<int>(doubled.size());
    std::vector<int> comb = unrank_combination(from, n, m);
    unsigned long long local_lo = 0, local_hi = 0;
    for (unsigned long long idx = from; idx < to; ++idx) {
        long long sum = 0;
        for (int i : comb) sum += doubled[static_cast<std::size_t>(i)];
        if (sum <= observed) ++local_lo;
        if (sum >= observed) ++local_hi;
        if (idx + 1 < to) next_combination(comb, n);
    }
    lo += local_lo;
    hi += local_hi;
}

double exact_p_impl(std::span<const double> a, std::span<const double> b, bool parallel) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon reference needs two non-empty samples");
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(a.size() + b.size());
    if (n > 30)
        throw std::invalid_argument("enumeration reference supports at most 30 observations");

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    RankData rd = doubled_midranks(pooled);

    long long observed = 0;
    for (int i = 0; i < m; ++i) observed += rd.doubled[static_cast<std::size_t>(i)];

    const unsigned long long total =
        binomial_table(static_cast<unsigned>(n))[static_cast<unsigned>(m)];
    unsigned long long lo = 0, hi = 0;

    if (!parallel) {
        count_range(rd.doubled, m, 0, total, observed, lo, hi);
    } else {
        const long long chunks = 64;
#pragma omp parallel for schedule(dynamic) reduction(+ : lo, hi)
        for (long long chunk = 0; chunk < chunks; ++chunk) {
            const unsigned long long from =
                total * static_cast<unsigned long long>(chunk) / chunks;
            const unsigned long long to =
                total * static_cast<unsigned long long>(chunk + 1) / chunks;
            if (from < to) count_range(rd.doubled, m, from, to, observed, lo, hi);
        }
    }
    return two_sided_from_tails(lo, hi, total);
}

} // namespace

double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
    return exact_p_impl(a, b, true);
}

double wilcoxon_exact_p_serial(std::span<const double> a, std::span<const double> b) {
    return exact_p_impl(a, b, false);
}

} // namespace reference

} // namespace vclass
