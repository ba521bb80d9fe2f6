#include <catch2/catch_amalgamated.hpp>

#include "padicgb/harness.hpp"

using namespace padicgb;

TEST_CASE("random systems are deterministic per seed") {
    ExperimentConfig cfg;
    cfg.degrees = {3, 4, 7};
    cfg.p = 7;
    cfg.precision = 30;
    Field f(FieldKind::PAdic, 7);

    Rng r1(trial_seed(42, 0));
    Rng r2(trial_seed(42, 0));
    auto a = random_system(cfg, f, r1);
    auto b = random_system(cfg, f, r2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

    Rng r3(trial_seed(43, 0));
    auto c = random_system(cfg, f, r3);
    CHECK_FALSE(a[0] == c[0]);
}

TEST_CASE("random systems are dense with the predicted slot counts") {
    ExperimentConfig cfg;
    cfg.degrees = {3, 4, 7};
    cfg.p = 7;
    cfg.precision = 30;
    Field f(FieldKind::PAdic, 7);
    Rng rng(trial_seed(7, 3));
    auto sys = random_system(cfg, f, rng);
    REQUIRE(sys.size() == 3);
    CHECK(sys[0].terms().size() == 10);  // C(5,2)
    CHECK(sys[1].terms().size() == 15);
    CHECK(sys[2].terms().size() == 36);
    for (const auto& p : sys) {
        CHECK(p.is_homogeneous());
        for (const auto& t : p.terms()) CHECK(t.second.order() == 30);
    }
}

TEST_CASE("residue digits pass a chi-square uniformity check") {
    Rng rng(987654321);
    const long long p = 7;
    const int draws = 10000;
    std::vector<int> counts(p, 0);
    for (int i = 0; i < draws; ++i) {
        Int v = random_residue(rng, p, 30);
        ++counts[static_cast<int>((v % p).convert_to<long long>())];
    }
    double expected = static_cast<double>(draws) / p;
    double chi2 = 0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 6 degrees of freedom; 22.46 is the 0.1% quantile
    CHECK(chi2 < 22.46);
}

TEST_CASE("experiment statistics") {
    ExperimentConfig cfg;
    cfg.degrees = {2, 2};
    cfg.degree_cap = 3;
    cfg.p = 7;
    cfg.precision = 12;
    cfg.trials = 4;
    cfg.seed = 2024;
    ExperimentRun run = run_experiment(cfg);
    REQUIRE(run.trials.size() == 4);

    SECTION("aggregation is pure and recomputable") {
        ExperimentStats again = aggregate(run.trials);
        CHECK(again.max_loss == run.stats.max_loss);
        CHECK(again.mean_loss == run.stats.mean_loss);
        CHECK(again.gap == run.stats.gap);
        CHECK(again.failures == run.stats.failures);
    }
    SECTION("loss never exceeds the certified bound") {
        for (const auto& t : run.trials) {
            if (t.failed) continue;
            if (t.bound_certified) {
                CHECK(t.realized_max_loss <= t.bound);
                CHECK(t.bound - t.realized_max_loss >= 0);
            }
        }
        CHECK(run.stats.gap >= 0);
    }
    SECTION("identical configuration reproduces the run") {
        ExperimentRun run2 = run_experiment(cfg);
        REQUIRE(run2.trials.size() == run.trials.size());
        for (size_t i = 0; i < run.trials.size(); ++i) {
            CHECK(run.trials[i].seed == run2.trials[i].seed);
            CHECK(run.trials[i].realized_max_loss == run2.trials[i].realized_max_loss);
            CHECK(run.trials[i].bound == run2.trials[i].bound);
        }
        CHECK(experiment_table(run) == experiment_table(run2));
    }
}

TEST_CASE("power series experiments run through the same pipeline") {
    ExperimentConfig cfg;
    cfg.degrees = {1, 2};
    cfg.degree_cap = 2;
    cfg.p = 5;
    cfg.field_kind = FieldKind::PowerSeries;
    cfg.precision = 8;
    cfg.trials = 2;
    cfg.seed = 9;
    ExperimentRun run = run_experiment(cfg);
    for (const auto& t : run.trials) {
        if (t.failed) continue;
        CHECK(t.realized_max_loss <= t.bound);
    }
}
