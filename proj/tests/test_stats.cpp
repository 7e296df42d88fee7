#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "vclass/rng.hpp"
#include "vclass/stats.hpp"

using namespace vclass;

namespace {

// Brute-force oracle, independent of the library's recurrence and of the
// enumeration reference: recursively assigns m pooled positions to sample
// a and accumulates both tails of the rank-sum distribution.
struct OracleCounts {
    long long lo = 0, hi = 0, total = 0;
};

std::vector<double> oracle_midranks(std::vector<double> pooled) {
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks(pooled.size());
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < sorted.size(); ++j)
            if (sorted[j] == pooled[i]) {
                sum += static_cast<double>(j + 1);
                ++count;
            }
        ranks[i] = sum / count;
    }
    return ranks;
}

void oracle_recurse(const std::vector<double>& ranks, std::size_t next, int remaining,
                    double sum, double observed, OracleCounts& c) {
    if (remaining == 0) {
        c.total += 1;
        if (sum <= observed + 1e-12) c.lo += 1;
        if (sum >= observed - 1e-12) c.hi += 1;
        return;
    }
    if (ranks.size() - next < static_cast<std::size_t>(remaining)) return;
    oracle_recurse(ranks, next + 1, remaining - 1, sum + ranks[next], observed, c);
    oracle_recurse(ranks, next + 1, remaining, sum, observed, c);
}

double oracle_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = oracle_midranks(pooled);
    double observed = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) observed += ranks[i];
    OracleCounts c;
    oracle_recurse(ranks, 0, static_cast<int>(a.size()), 0.0, observed, c);
    const double tail =
        static_cast<double>(std::min(c.lo, c.hi)) / static_cast<double>(c.total);
    return std::min(1.0, 2.0 * tail);
}

} // namespace

TEST_CASE("midranks with ties") {
    const std::vector<double> pooled{1.0, 2.0, 2.0, 3.0};
    const std::vector<double> expect{1.0, 2.5, 2.5, 4.0};
    CHECK(midranks(pooled) == expect);
}

TEST_CASE("wilcoxon exact two-sided p for a=[1,2], b=[3,4] is 1/3") {
    const std::vector<double> a{1.0, 2.0}, b{3.0, 4.0};
    const StatResult r = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact);
    CHECK(r.method == StatMethod::WilcoxonExact);
    CHECK(r.statistic == doctest::Approx(3.0));
    CHECK(r.p_value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("wilcoxon is symmetric under swapping the samples") {
    RngStream r(99);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a, b;
        const int m = 1 + static_cast<int>(r.uniform_index(5));
        const int n = 1 + static_cast<int>(r.uniform_index(5));
        for (int i = 0; i < m; ++i) a.push_back(static_cast<double>(r.uniform_int(0, 9)));
        for (int i = 0; i < n; ++i) b.push_back(static_cast<double>(r.uniform_int(0, 9)));
        const double pab = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact).p_value;
        const double pba = wilcoxon_rank_sum(b, a, WilcoxonMode::Exact).p_value;
        CHECK(pab == doctest::Approx(pba).epsilon(1e-12));
    }
}

TEST_CASE("rank statistics are invariant under strictly monotone transforms") {
    const std::vector<double> a{0.5, 2.0, 3.5}, b{1.0, 4.0, 6.0, 7.5};
    auto cubed = [](const std::vector<double>& v) {
        std::vector<double> out;
        for (double x : v) out.push_back(x * x * x);
        return out;
    };
    const StatResult r1 = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact);
    const StatResult r2 = wilcoxon_rank_sum(cubed(a), cubed(b), WilcoxonMode::Exact);
    CHECK(r1.statistic == r2.statistic);
    CHECK(r1.p_value == r2.p_value);
}

TEST_CASE("exact p matches the brute-force oracle for all m+n <= 8") {
    RngStream r(2024);
    int checked = 0;
    for (int m = 1; m <= 7; ++m)
        for (int n = 1; m + n <= 8; ++n)
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<double> a, b;
                for (int i = 0; i < m; ++i)
                    a.push_back(static_cast<double>(r.uniform_int(0, 6)));
                for (int i = 0; i < n; ++i)
                    b.push_back(static_cast<double>(r.uniform_int(0, 6)));
                const double expect = oracle_exact_p(a, b);
                const double got = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact).p_value;
                REQUIRE(got == doctest::Approx(expect).epsilon(1e-12));
                ++checked;
            }
    CHECK(checked > 200);
}

TEST_CASE("enumeration reference agrees with the recurrence, serial and parallel") {
    RngStream r(7);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> a, b;
        const int m = 3 + static_cast<int>(r.uniform_index(4));
        const int n = 3 + static_cast<int>(r.uniform_index(4));
        for (int i = 0; i < m; ++i) a.push_back(static_cast<double>(r.uniform_int(0, 8)));
        for (int i = 0; i < n; ++i) b.push_back(static_cast<double>(r.uniform_int(0, 8)));
        const double dp = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact).p_value;
        CHECK(reference::wilcoxon_exact_p_serial(a, b) == doctest::Approx(dp).epsilon(1e-12));
        CHECK(reference::wilcoxon_exact_p(a, b) == doctest::Approx(dp).epsilon(1e-12));
    }
}

TEST_CASE("normal approximation converges to the exact p at m=n=20 without ties") {
    RngStream r(4711);
    for (int rep = 0; rep < 5; ++rep) {
        // distinct values, no ties
        std::vector<double> pool;
        for (int i = 0; i < 40; ++i) pool.push_back(i + r.uniform(0.0, 0.5));
        for (std::size_t i = pool.size(); i > 1; --i)
            std::swap(pool[i - 1], pool[r.uniform_index(static_cast<std::uint32_t>(i))]);
        const std::vector<double> a(pool.begin(), pool.begin() + 20);
        const std::vector<double> b(pool.begin() + 20, pool.end());
        const double exact = wilcoxon_rank_sum(a, b, WilcoxonMode::Exact).p_value;
        const double normal = wilcoxon_rank_sum(a, b, WilcoxonMode::NormalApprox).p_value;
        CHECK(std::fabs(exact - normal) < 0.01);
    }
}

TEST_CASE("auto mode switches on the pooled size") {
    const std::vector<double> small_a{1, 2, 3}, small_b{4, 5, 6};
    CHECK(wilcoxon_rank_sum(small_a, small_b).method == StatMethod::WilcoxonExact);
    std::vector<double> big_a, big_b;
    for (int i = 0; i < 12; ++i) {
        big_a.push_back(i);
        big_b.push_back(i + 0.5);
    }
    CHECK(wilcoxon_rank_sum(big_a, big_b).method == StatMethod::WilcoxonNormal);
}

TEST_CASE("wilcoxon rejects empty samples") {
    const std::vector<double> a{1.0}, empty;
    CHECK_THROWS_AS(wilcoxon_rank_sum(a, empty), std::invalid_argument);
    CHECK_THROWS_AS(wilcoxon_rank_sum(empty, a), std::invalid_argument);
}

TEST_CASE("chi-square survival function matches standard quantiles") {
    CHECK(chi_squared_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_squared_sf(5.991464547107979, 2.0) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(chi_squared_sf(0.0, 3.0) == doctest::Approx(1.0));
    CHECK(chi_squared_sf(11.344866730144373, 3.0) == doctest::Approx(0.01).epsilon(1e-9));
}

TEST_CASE("kruskal-wallis on identical constant groups gives H=0, p=1") {
    const std::vector<std::vector<double>> groups{{5, 5, 5}, {5, 5, 5}, {5, 5, 5}};
    const KruskalWallisResult r = kruskal_wallis(groups, false);
    CHECK(r.omnibus.statistic == 0.0);
    CHECK(r.omnibus.p_value == 1.0);
}

TEST_CASE("two-group tie-free kruskal-wallis H equals the squared rank-sum z") {
    RngStream rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        // tie-free samples via distinct jittered values
        std::vector<double> a, b;
        const int m = 3 + static_cast<int>(rng.uniform_index(8));
        const int n = 3 + static_cast<int>(rng.uniform_index(8));
        for (int i = 0; i < m; ++i) a.push_back(i * 10.0 + rng.uniform(0.0, 5.0));
        for (int i = 0; i < n; ++i) b.push_back(i * 10.0 + 5.0 + rng.uniform(0.0, 4.0));

        // z without continuity correction or tie terms
        std::vector<double> pooled = a;
        pooled.insert(pooled.end(), b.begin(), b.end());
        const std::vector<double> ranks = midranks(pooled);
        double w = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) w += ranks[i];
        const double N = static_cast<double>(m + n);
        const double mean = m * (N + 1.0) / 2.0;
        const double var = m * n * (N + 1.0) / 12.0;
        const double z = (w - mean) / std::sqrt(var);

        const KruskalWallisResult r = kruskal_wallis({a, b}, false);
        CHECK(r.omnibus.statistic == doctest::Approx(z * z).epsilon(1e-9));
        // and the omnibus p agrees with the two-sided normal tail of z
        CHECK(r.omnibus.p_value ==
              doctest::Approx(2.0 * normal_sf(std::fabs(z))).epsilon(1e-9));
    }
}

TEST_CASE("kruskal-wallis H is invariant under monotone transforms") {
    const std::vector<std::vector<double>> groups{{1, 2, 3}, {2.5, 4, 6}, {5, 7, 8, 9}};
    std::vector<std::vector<double>> cubed;
    for (const auto& g : groups) {
        std::vector<double> t;
        for (double v : g) t.push_back(v * v * v);
        cubed.push_back(t);
    }
    CHECK(kruskal_wallis(groups, false).omnibus.statistic ==
          kruskal_wallis(cubed, false).omnibus.statistic);
}

TEST_CASE("four groups produce exactly six bonferroni-corrected pairs") {
    const std::vector<std::vector<double>> groups{
        {1, 2, 3, 4}, {2, 3, 4, 5}, {5, 6, 7, 8}, {1, 5, 6, 9}};
    const KruskalWallisResult r = kruskal_wallis(groups, true);
    REQUIRE(r.pairwise.size() == 6);
    REQUIRE(r.pairs.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const auto [gi, gj] = r.pairs[i];
        const StatResult raw = wilcoxon_rank_sum(groups[static_cast<std::size_t>(gi)],
                                                 groups[static_cast<std::size_t>(gj)]);
        CHECK(r.pairwise[i].corrected);
        CHECK(r.pairwise[i].p_value ==
              doctest::Approx(std::min(1.0, raw.p_value * 6.0)).epsilon(1e-12));
    }
}

TEST_CASE("kruskal-wallis rejects degenerate inputs") {
    CHECK_THROWS_AS(kruskal_wallis({{1.0, 2.0}}, false), std::invalid_argument);
    CHECK_THROWS_AS(kruskal_wallis({{1.0}, {}}, false), std::invalid_argument);
}
