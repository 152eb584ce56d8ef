#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "cojump/compensated.hpp"
#include "cojump/estimators.hpp"
#include "cojump/panel.hpp"

using namespace cojump;

namespace {

// The worked three-interval panel used across the oracle checks.
SyncPanel example_panel() {
    return SyncPanel(TimeGrid::uniform(1.0, 3), {0.012, -0.02, 0.005}, {0.02, 0.01, 0.01});
}

SyncPanel random_panel(std::mt19937_64& rng, std::size_t max_n = 64, double scale = 1.0) {
    std::uniform_int_distribution<std::size_t> nd(1, max_n);
    std::normal_distribution<double> val(0.0, scale);
    const std::size_t n = nd(rng);
    std::vector<double> r1(n), r2(n);
    for (auto& v : r1) v = val(rng);
    for (auto& v : r2) v = val(rng);
    return SyncPanel(TimeGrid::uniform(1.0, n), std::move(r1), std::move(r2));
}

// O(m*k) reference for the asynchronous estimator, same accumulation type.
double hy_brute_force(const AsyncPanel& panel, double r_h) {
    const auto& g1 = panel.path1.grid;
    const auto& g2 = panel.path2.grid;
    const auto& v1 = panel.path1.values;
    const auto& v2 = panel.path2.values;
    CompensatedSum acc;
    for (std::size_t j = 1; j <= g1.intervals(); ++j) {
        for (std::size_t i = 1; i <= g2.intervals(); ++i) {
            if (g1[j - 1] < g2[i] && g2[i - 1] < g1[j]) {
                const double inc1 = v1[j] - v1[j - 1];
                const double inc2 = v2[i] - v2[i - 1];
                const double t1 = inc1 * inc1 <= r_h ? inc1 : 0.0;
                const double t2 = inc2 * inc2 <= r_h ? inc2 : 0.0;
                acc.add(t1 * t2);
            }
        }
    }
    return acc.value();
}

TimeGrid random_grid(std::mt19937_64& rng, std::size_t max_intervals) {
    std::uniform_int_distribution<std::size_t> nd(1, max_intervals);
    std::uniform_real_distribution<double> gap(0.01, 1.0);
    const std::size_t n = nd(rng);
    std::vector<double> stamps{0.0};
    for (std::size_t i = 0; i < n; ++i) stamps.push_back(stamps.back() + gap(rng));
    const double target = 1.0; // rescale to a unit horizon
    const double span = stamps.back();
    for (auto& t : stamps) t *= target / span;
    stamps.front() = 0.0;
    stamps.back() = target;
    return TimeGrid(std::move(stamps));
}

SampledPath random_path(std::mt19937_64& rng, std::size_t max_intervals) {
    const TimeGrid g = random_grid(rng, max_intervals);
    std::normal_distribution<double> step(0.0, 0.3);
    std::vector<double> vals(g.size());
    vals[0] = 0.0;
    for (std::size_t i = 1; i < vals.size(); ++i) vals[i] = vals[i - 1] + step(rng);
    return SampledPath(g, std::move(vals));
}

} // namespace

TEST_CASE("realized covariation oracle") {
    const SyncPanel p = example_panel();
    CHECK(realized_covariation(p) == doctest::Approx(9.0e-5).epsilon(1e-13));

    SyncPanel zero2(TimeGrid::uniform(1.0, 3), {0.012, -0.02, 0.005}, {0.0, 0.0, 0.0});
    CHECK(realized_covariation(zero2) == 0.0);

    SyncPanel same(TimeGrid::uniform(1.0, 3), {0.012, -0.02, 0.005}, {0.012, -0.02, 0.005});
    const double rv = 0.012 * 0.012 + 0.02 * 0.02 + 0.005 * 0.005;
    CHECK(realized_covariation(same) == doctest::Approx(rv).epsilon(1e-14));
}

TEST_CASE("truncated covariation oracle") {
    const SyncPanel p = example_panel();
    // r_h = 2.5e-4: only the third interval survives both indicators
    CHECK(threshold_ic(p, 2.5e-4) == doctest::Approx(5.0e-5).epsilon(1e-13));
    // huge threshold: indicators all one
    CHECK(threshold_ic(p, 1.0) == realized_covariation(p));
    CHECK(threshold_ic(p, std::numeric_limits<double>::infinity()) == realized_covariation(p));
    // threshold below every squared increment: all zero
    CHECK(threshold_ic(p, 1e-6) == 0.0);
    CHECK_THROWS_AS(threshold_ic(p, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold_ic(p, -1e-3), std::invalid_argument);
}

TEST_CASE("truncated variance oracle") {
    const std::vector<double> r{0.012, -0.02, 0.005};
    CHECK(threshold_iv(r, 2.5e-4) == doctest::Approx(1.69e-4).epsilon(1e-13));
    const double rv = 0.012 * 0.012 + 0.02 * 0.02 + 0.005 * 0.005;
    CHECK(threshold_iv(r, 4.1e-4) == doctest::Approx(rv).epsilon(1e-14));
    CHECK(threshold_iv(std::vector<double>{}, 1e-4) == 0.0);
}

TEST_CASE("cross power statistic") {
    const SyncPanel p = example_panel();
    const double h = 1.0 / 3.0;
    // (1,1) coincides with the truncated covariation (scale h^0 = 1)
    CHECK(threshold_cross_power(p, 1, 1, 2.5e-4, h) == threshold_ic(p, 2.5e-4));
    // (2,2) hand oracle: only interval 3 kept, h^{-1} * (0.005^2 * 0.01^2)
    CHECK(threshold_cross_power(p, 2, 2, 2.5e-4, h) == doctest::Approx(7.5e-9).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_cross_power(p, 0, 0, 2.5e-4, h), std::invalid_argument);
    CHECK_THROWS_AS(threshold_cross_power(p, 2, 2, 2.5e-4, 0.0), std::invalid_argument);

    // huge threshold equals the unthresholded statistic
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const SyncPanel q = random_panel(rng, 16, 0.05);
        const double hh = 1.0 / static_cast<double>(q.intervals());
        double plain = 0.0;
        for (std::size_t j = 0; j < q.intervals(); ++j)
            plain += q.returns1[j] * q.returns1[j] * q.returns2[j] * q.returns2[j];
        plain /= hh;
        CHECK(threshold_cross_power(q, 2, 2, 1e9, hh) == doctest::Approx(plain).epsilon(1e-12));
    }
}

TEST_CASE("adjacent cross statistic") {
    SUBCASE("single pair, all below threshold") {
        SyncPanel p(TimeGrid::uniform(1.0, 2), {0.01, -0.02}, {0.03, 0.01});
        const double h = 0.5;
        CHECK(threshold_adjacent_cross(p, 1.0, h) ==
              doctest::Approx(0.01 * -0.02 * 0.03 * 0.01 / h).epsilon(1e-14));
    }
    SUBCASE("truncated factor kills the pair") {
        SyncPanel p(TimeGrid::uniform(1.0, 2), {0.01, -0.02}, {0.03, 0.01});
        // 0.03^2 = 9e-4 > 8e-4: second process first increment truncated
        CHECK(threshold_adjacent_cross(p, 8.0e-4, 0.5) == 0.0);
    }
    SUBCASE("worked example is zero") {
        CHECK(threshold_adjacent_cross(example_panel(), 2.5e-4, 1.0 / 3.0) == 0.0);
    }
    SUBCASE("needs two intervals") {
        SyncPanel p(TimeGrid::uniform(1.0, 1), {0.01}, {0.02});
        CHECK_THROWS_AS(threshold_adjacent_cross(p, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("asymptotic variance estimate") {
    const SyncPanel p = example_panel();
    const double h = 1.0 / 3.0;
    const AvarEstimate av = avar_ic(p, 2.5e-4, h);
    CHECK(av.value == doctest::Approx(7.5e-9).epsilon(1e-12));
    CHECK(!av.clamped);

    // v~_{2,2} - w~ >= 0 holds for any panel and threshold; the brute-force
    // search over random small panels finds no violation, so the clamp is a
    // finite-precision guard only.
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> thr(1e-4, 10.0);
    for (int rep = 0; rep < 10000; ++rep) {
        SyncPanel q = random_panel(rng, 8);
        if (q.intervals() < 2) continue;
        const double hh = 1.0 / static_cast<double>(q.intervals());
        const AvarEstimate a = avar_ic(q, thr(rng), hh);
        CHECK(a.value >= 0.0);
        CHECK(!a.clamped);
    }
}

TEST_CASE("standardized error") {
    CHECK(*standardized_ic_error(0.7, 0.7, 3.0, 0.1) == 0.0);
    CHECK(*standardized_ic_error(1.0, 0.0, 1.0, 1.0) == doctest::Approx(1.0));
    CHECK(!standardized_ic_error(1.0, 0.0, 0.0, 1.0).has_value());
    CHECK_THROWS_AS(standardized_ic_error(1.0, 0.0, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(standardized_ic_error(1.0, 0.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("beta and rho") {
    const BetaRho br = beta_rho(0.5, 1.0, 1.0);
    CHECK(*br.beta12 == doctest::Approx(0.5));
    CHECK(*br.beta21 == doctest::Approx(0.5));
    CHECK(*br.rho == doctest::Approx(0.5));

    const BetaRho deg = beta_rho(0.5, 1.0, 0.0);
    CHECK(!deg.beta12.has_value());
    CHECK(deg.beta21.has_value());
    CHECK(!deg.rho.has_value());

    // |rho| <= 1 whenever defined, with the same threshold on both legs
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> thr(1e-3, 4.0);
    for (int rep = 0; rep < 2000; ++rep) {
        const SyncPanel q = random_panel(rng);
        const double r_h = thr(rng);
        const double ic = threshold_ic(q, r_h);
        const double iv1 = threshold_iv(q.returns1, r_h);
        const double iv2 = threshold_iv(q.returns2, r_h);
        CHECK(std::abs(ic) <= std::sqrt(iv1 * iv2) * (1.0 + 1e-12) + 1e-300);
        const BetaRho b = beta_rho(ic, iv1, iv2);
        if (b.rho) CHECK(std::abs(*b.rho) <= 1.0 + 1e-12);
    }
}

TEST_CASE("co-jump sum oracle and identity") {
    const SyncPanel p = example_panel();
    CHECK(cojump_sum(p, 2.5e-4) == doctest::Approx(4.0e-5).epsilon(1e-12));
    CHECK(cojump_sum(p, 1.0) == 0.0); // nothing truncated

    // exact decomposition on random panels and thresholds
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> thr(1e-4, 6.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const SyncPanel q = random_panel(rng, 1000);
        const double r_h = thr(rng);
        const double rc = realized_covariation(q);
        const double ic = threshold_ic(q, r_h);
        const double cj = cojump_sum(q, r_h);
        const double scale =
            std::max({std::abs(rc), std::abs(ic) + std::abs(cj), 1e-300});
        CHECK(std::abs(ic + cj - rc) <= 1e-12 * scale);

        // variant-5 per-interval estimates sum to the same quantity
        const CojumpEstimates est = single_cojumps(q, r_h);
        CompensatedSum v5;
        for (const auto& rec : est.records) v5.add(rec.full_minus_truncated);
        CHECK(std::abs(ic + v5.value() - rc) <= 1e-12 * scale);
    }
}

TEST_CASE("single co-jump variants: indicator algebra") {
    // both increments under the threshold
    SyncPanel under(TimeGrid::uniform(1.0, 1), {0.01}, {0.02});
    const auto eu = single_cojumps(under, 1.0).records[0];
    CHECK(eu.full_minus_truncated == 0.0);
    CHECK(eu.over_threshold_only == 0.0);
    CHECK(eu.plain_cross == doctest::Approx(2.0e-4));
    CHECK(!eu.flagged);

    // both above: all three coincide with the plain product
    SyncPanel over(TimeGrid::uniform(1.0, 1), {0.5}, {-0.4});
    const auto eo = single_cojumps(over, 1e-4).records[0];
    CHECK(eo.full_minus_truncated == eo.plain_cross);
    CHECK(eo.over_threshold_only == eo.plain_cross);
    CHECK(eo.flagged);

    // mixed: one leg flagged
    SyncPanel mixed(TimeGrid::uniform(1.0, 1), {0.5}, {0.001});
    const auto em = single_cojumps(mixed, 1e-4).records[0];
    CHECK(em.full_minus_truncated == em.plain_cross);
    CHECK(em.over_threshold_only == 0.0);
    CHECK(em.flagged);

    CHECK_THROWS_AS(cojump_variant_values(single_cojumps(mixed, 1e-4), 4),
                    std::invalid_argument);
    CHECK(cojump_variant_values(single_cojumps(mixed, 1e-4), 6)[0] == 0.0);
}

TEST_CASE("jump interval classification") {
    std::vector<double> zeros(10, 0.0);
    const auto none = classify_jump_intervals(zeros, 1e-4);
    for (bool f : none) CHECK(!f);

    const double r_h = 1e-4;
    std::vector<double> one(5, 0.0);
    one[3] = 2.0 * std::sqrt(r_h);
    const auto flags = classify_jump_intervals(one, r_h);
    CHECK(flags[3]);
    CHECK(!flags[0]);
    CHECK(!flags[4]);
}

TEST_CASE("asynchronous estimator") {
    SUBCASE("synchronous grids reduce to the panel estimator bitwise") {
        std::mt19937_64 rng(5);
        for (int rep = 0; rep < 50; ++rep) {
            const SampledPath p1 = random_path(rng, 40);
            SampledPath p2 = p1;
            std::normal_distribution<double> step(0.0, 0.2);
            for (auto& v : p2.values) v += step(rng);
            p2.values.front() = 0.0;
            const AsyncPanel ap(p1, p2);
            const SyncPanel sp = make_sync_panel(p1, p2);
            const double r_h = 0.25;
            CHECK(hy_threshold_ic(ap, r_h) == threshold_ic(sp, r_h));
        }
    }

    SUBCASE("constant second path gives zero") {
        const SampledPath p1(TimeGrid::uniform(1.0, 5), {0.0, 0.1, 0.3, 0.2, 0.5, 0.4});
        const SampledPath p2(TimeGrid({0.0, 0.4, 1.0}), {0.0, 0.0, 0.0});
        CHECK(hy_threshold_ic(AsyncPanel(p1, p2), 1.0) == 0.0);
    }

    SUBCASE("two-pointer sweep equals the double loop exactly") {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> thr(1e-3, 2.0);
        for (int rep = 0; rep < 200; ++rep) {
            const SampledPath p1 = random_path(rng, 50);
            const SampledPath p2 = random_path(rng, 50);
            const AsyncPanel ap(p1, p2);
            const double r_h = thr(rng);
            CHECK(hy_threshold_ic(ap, r_h) == hy_brute_force(ap, r_h));
        }
    }

    SUBCASE("horizon mismatch rejected") {
        const SampledPath p1(TimeGrid::uniform(1.0, 2), {0.0, 0.1, 0.2});
        const SampledPath p2(TimeGrid::uniform(0.9, 2), {0.0, 0.1, 0.2});
        CHECK_THROWS_AS(AsyncPanel(p1, p2), std::invalid_argument);
    }
}

TEST_CASE("scale equivariance with a stable index set") {
    // Scaling process 1 by lambda > 0 scales the truncated covariation by
    // lambda as long as no indicator flips; guard by choosing lambda so the
    // kept set is unchanged.
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 200; ++rep) {
        const SyncPanel q = random_panel(rng, 32);
        const double r_h = 0.8;
        const double lam = 0.5;
        std::vector<double> scaled1(q.returns1);
        bool same_set = true;
        for (std::size_t j = 0; j < scaled1.size(); ++j) {
            const bool before = q.returns1[j] * q.returns1[j] <= r_h;
            scaled1[j] *= lam;
            const bool after = scaled1[j] * scaled1[j] <= r_h;
            same_set = same_set && (before == after);
        }
        if (!same_set) continue;
        SyncPanel qs(q.grid, scaled1, q.returns2);
        CHECK(threshold_ic(qs, r_h) ==
              doctest::Approx(lam * threshold_ic(q, r_h)).epsilon(1e-12));
    }
}

TEST_CASE("monotonicity of the truncated variance in the threshold") {
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 200; ++rep) {
        const SyncPanel q = random_panel(rng);
        double rv = 0.0;
        for (double d : q.returns1) rv += d * d;
        double prev = 0.0;
        for (double r_h : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
            const double iv = threshold_iv(q.returns1, r_h);
            CHECK(iv >= prev);
            CHECK(iv <= rv * (1.0 + 1e-12));
            prev = iv;
        }
    }
}

TEST_CASE("cutoff restricts the summation window") {
    const SyncPanel p = example_panel(); // stamps at 1/3, 2/3, 1
    const double r_h = 2.5e-4;
    // keep the first two intervals only
    const double ic2 = threshold_ic(p, r_h, 0.7);
    SyncPanel prefix(TimeGrid::uniform(2.0 / 3.0, 2), {0.012, -0.02}, {0.02, 0.01});
    CHECK(ic2 == threshold_ic(prefix, r_h));
    CHECK(realized_covariation(p, 0.34) == doctest::Approx(0.012 * 0.02).epsilon(1e-14));

    const CovariationEstimates est = estimate_panel(p, r_h, 0.7);
    CHECK(est.n_used == 2);
}

TEST_CASE("per-leg thresholds") {
    const SyncPanel p = example_panel();
    // common threshold is the symmetric special case
    CHECK(threshold_ic_per_leg(p, 2.5e-4, 2.5e-4) == threshold_ic(p, 2.5e-4));
    // a loose second-leg threshold keeps 0.02 on leg 2: intervals 1 and 3 survive
    CHECK(threshold_ic_per_leg(p, 2.5e-4, 4.5e-4) ==
          doctest::Approx(0.012 * 0.02 + 0.005 * 0.01).epsilon(1e-13));
}

TEST_CASE("full panel estimate bundle") {
    const SyncPanel p = example_panel();
    const CovariationEstimates est = estimate_panel(p, 2.5e-4);
    CHECK(est.ic_hat == doctest::Approx(5.0e-5).epsilon(1e-12));
    CHECK(est.qcov == doctest::Approx(9.0e-5).epsilon(1e-12));
    CHECK(est.cojump_sum == doctest::Approx(4.0e-5).epsilon(1e-12));
    CHECK(est.iv1_hat == doctest::Approx(1.69e-4).epsilon(1e-12));
    CHECK(est.iv2_hat == doctest::Approx(2.0e-4).epsilon(1e-12)); // 0.01^2 + 0.01^2
    CHECK(est.avar_hat == doctest::Approx(7.5e-9).epsilon(1e-12));
    CHECK(est.rho_hat.has_value());
    CHECK(std::abs(*est.rho_hat) <= 1.0);
}
