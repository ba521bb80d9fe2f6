#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "padicgb/lifting.hpp"
#include "padicgb/sensitivity.hpp"

namespace padicgb {

/// Deterministic 64-bit stream (splitmix64); the per-trial generator is
/// seeded with splitmix64(master_seed ^ (trial_index + 1)) so trials are
/// independent and reproducible in any execution order.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform digit in [0, p); drawn as next() % p (the modulo bias at
    /// 64 bits is far below anything the chi-square check can see).
    long long digit(long long p) { return static_cast<long long>(next() % static_cast<uint64_t>(p)); }
};

inline uint64_t trial_seed(uint64_t master, int trial) {
    Rng r(master ^ static_cast<uint64_t>(trial + 1));
    return r.next();
}

struct ExperimentConfig {
    std::vector<int> degrees;
    int degree_cap = 0;  // 0: use the Macaulay bound of the degree list
    long long p = 7;
    FieldKind field_kind = FieldKind::PAdic;
    int nvars = 3;
    OrderKind order_kind = OrderKind::Grevlex;
    int precision = 30;
    int trials = 1;
    uint64_t seed = 0;
    GbMethod method = GbMethod::WeakMF5;
    int perturbation_order = -1;  // delta-f valuation for the comparison pipeline; -1: precision

    int effective_cap() const { return degree_cap > 0 ? degree_cap : macaulay_bound(degrees); }
};

inline Int random_residue(Rng& rng, long long p, int digits) {
    Int v = 0;
    for (int i = digits - 1; i >= 0; --i) v = v * p + rng.digit(p);
    return v;
}

/// Dense homogeneous system: every degree-d_i monomial slot receives a
/// coefficient uniform over Z/p^prec, interpreted as an element known at
/// O(pi^prec).  Values divisible by p^prec (indistinguishable from zero) are
/// allowed; they are counted in the trial records.
inline std::vector<Polynomial<Element>> random_system(const ExperimentConfig& cfg,
                                                      const Field& field, Rng& rng,
                                                      int* ball_slots = nullptr) {
    MonomialOrder order{cfg.order_kind, cfg.nvars};
    std::vector<Polynomial<Element>> out;
    for (int d : cfg.degrees) {
        std::vector<Polynomial<Element>::Term> terms;
        for (const auto& m : monomials_of_degree(cfg.nvars, d, order)) {
            Int v = random_residue(rng, cfg.p, cfg.precision);
            if (ball_slots && v == 0) ++(*ball_slots);
            terms.push_back({m, Element::from_int(field, v, cfg.precision)});
        }
        out.push_back(Polynomial<Element>(order, std::move(terms)));
    }
    return out;
}

/// The same draw as exact integers (for the oracle-side pipelines).
inline std::vector<PolyQ> random_system_exact(const ExperimentConfig& cfg, Rng& rng) {
    MonomialOrder order{cfg.order_kind, cfg.nvars};
    std::vector<PolyQ> out;
    for (int d : cfg.degrees) {
        std::vector<PolyQ::Term> terms;
        for (const auto& m : monomials_of_degree(cfg.nvars, d, order)) {
            Int v = random_residue(rng, cfg.p, cfg.precision);
            if (v != 0) terms.push_back({m, Rational(v)});
        }
        out.push_back(PolyQ(order, std::move(terms)));
    }
    return out;
}

struct TrialRecord {
    int index = 0;
    uint64_t seed = 0;
    bool failed = false;
    std::string failure;
    int ball_slots = 0;
    int basis_size = 0;
    int bound = 0;
    bool bound_certified = false;
    int realized_max_loss = 0;
    double mean_loss = 0.0;
    long long coefficient_count = 0;
    int min_output_order = 0;
};

struct ExperimentStats {
    int max_loss = 0;     // worst loss over all output coefficients of all trials
    double mean_loss = 0; // mean loss over all output coefficients
    int gap = 0;          // max over trials of (certified bound - realized loss)
    int failures = 0;
};

struct ExperimentRun {
    ExperimentConfig config;
    std::vector<TrialRecord> trials;
    ExperimentStats stats;
};

inline ExperimentStats aggregate(const std::vector<TrialRecord>& trials) {
    ExperimentStats st;
    double loss_sum = 0;
    long long coeffs = 0;
    for (const auto& t : trials) {
        if (t.failed) {
            ++st.failures;
            continue;
        }
        st.max_loss = std::max(st.max_loss, t.realized_max_loss);
        if (t.bound_certified)
            st.gap = std::max(st.gap, t.bound - t.realized_max_loss);
        loss_sum += t.mean_loss * static_cast<double>(t.coefficient_count);
        coeffs += t.coefficient_count;
    }
    if (coeffs > 0) st.mean_loss = loss_sum / static_cast<double>(coeffs);
    return st;
}

inline ExperimentRun run_experiment(const ExperimentConfig& cfg) {
    Field field(cfg.field_kind, cfg.p);
    ExperimentRun run;
    run.config = cfg;
    const int D = cfg.effective_cap();
    for (int t = 0; t < cfg.trials; ++t) {
        TrialRecord rec;
        rec.index = t;
        rec.seed = trial_seed(cfg.seed, t);
        Rng rng(rec.seed);
        auto F = random_system(cfg, field, rng, &rec.ball_slots);
        try {
            SystemInput in = SystemInput::create(field, std::move(F), D);
            GroebnerResult res =
                cfg.method == GbMethod::WeakMF5 ? weak_mf5(in) : weak_matrix(in);
            rec.basis_size = static_cast<int>(res.basis.size());
            rec.bound = res.report.bound;
            rec.bound_certified = res.report.bound_certified;
            rec.realized_max_loss = res.report.realized_max_loss;
            rec.mean_loss = res.report.realized_mean_loss;
            rec.min_output_order = res.min_coefficient_order();
            for (const auto& g : res.basis) rec.coefficient_count += g.terms().size();
        } catch (const Error& e) {
            rec.failed = true;
            rec.failure = e.what();
        }
        run.trials.push_back(std::move(rec));
    }
    run.stats = aggregate(run.trials);
    return run;
}

inline std::string experiment_table(const ExperimentRun& run) {
    std::ostringstream os;
    os << "d = [";
    for (size_t i = 0; i < run.config.degrees.size(); ++i)
        os << (i ? "," : "") << run.config.degrees[i];
    os << "]  D = " << run.config.effective_cap() << "  p = " << run.config.p
       << "  n_exp = " << run.config.trials << "  prec = " << run.config.precision << "\n";
    os << "max = " << run.stats.max_loss << "  mean = " << std::fixed << std::setprecision(2)
       << run.stats.mean_loss << "  gap = " << run.stats.gap << "  failures = "
       << run.stats.failures << "\n";
    return os.str();
}

/// One trial of the three-way sensitivity comparison: minimal output
/// precision of the direct computation, minimal valuation of the difference
/// of exact bases, minimal order of the differential estimate.
struct CompareTrial {
    int index = 0;
    uint64_t seed = 0;
    bool direct_failed = false;
    int direct_min = 0;
    bool lm_stable = true;
    int difference_min = 0;    // kInfPrec when the two bases coincide
    int differential_min = 0;  // kInfPrec when the differential vanishes
};

struct CompareRun {
    ExperimentConfig config;
    std::vector<CompareTrial> trials;
};

inline CompareRun compare_methods(const ExperimentConfig& cfg) {
    Field field(cfg.field_kind, cfg.p);
    if (cfg.field_kind != FieldKind::PAdic)
        throw Error("the sensitivity comparison needs exact integer lifts (p-adic fields only)");
    CompareRun run;
    run.config = cfg;
    const int D = cfg.effective_cap();
    const int k = cfg.perturbation_order > 0 ? cfg.perturbation_order : cfg.precision;
    MonomialOrder order{cfg.order_kind, cfg.nvars};
    for (int t = 0; t < cfg.trials; ++t) {
        CompareTrial rec;
        rec.index = t;
        rec.seed = trial_seed(cfg.seed, t);
        Rng rng(rec.seed);
        std::vector<PolyQ> F = random_system_exact(cfg, rng);

        // concrete perturbation in p^k * Z on every slot
        std::vector<PolyQ> df;
        for (int d : cfg.degrees) {
            std::vector<PolyQ::Term> terms;
            for (const auto& m : monomials_of_degree(cfg.nvars, d, order)) {
                Int u = rng.digit(cfg.p);
                if (u != 0) terms.push_back({m, Rational(u * field.pow(k))});
            }
            df.push_back(PolyQ(order, std::move(terms)));
        }

        try {
            SystemInput in = SystemInput::from_rationals(field, F, D, cfg.precision);
            rec.direct_min = weak_mf5(in).min_coefficient_order();
        } catch (const Error& e) {
            rec.direct_failed = true;
        }

        DifferenceReport diff = difference_method(F, df, cfg.p);
        rec.lm_stable = diff.lm_stable;
        rec.difference_min = diff.min_valuation;

        // the differential evaluated exactly at the concrete perturbation:
        // the value is independent of the coordinate representative (syzygy
        // shifts reduce away modulo the basis), unlike the coarser ball
        // propagation of the differential() primitive
        OracleResult exact = buchberger_reduced(F, /*track_coords=*/true);
        int dmin = kInfPrec;
        for (size_t k = 0; k < exact.basis.size(); ++k) {
            PolyQ acc = PolyQ::zero(order);
            for (size_t j = 0; j < df.size(); ++j) acc = acc + df[j] * exact.coordinates[k][j];
            PolyQ dg = reduce(acc, exact.basis);
            for (const auto& t : dg.terms())
                dmin = std::min(dmin, rational_valuation(t.second, cfg.p));
        }
        rec.differential_min = dmin;

        run.trials.push_back(std::move(rec));
    }
    return run;
}

inline std::string compare_table(const CompareRun& run) {
    auto fmt = [](int v) { return v >= kInfPrec ? std::string("inf") : std::to_string(v); };
    std::ostringstream os;
    os << "d = [";
    for (size_t i = 0; i < run.config.degrees.size(); ++i)
        os << (i ? "," : "") << run.config.degrees[i];
    os << "]  D = " << run.config.effective_cap() << "  p = " << run.config.p
       << "  n_exp = " << run.config.trials << "  prec = " << run.config.precision << "\n";
    os << "direct       [";
    for (size_t i = 0; i < run.trials.size(); ++i)
        os << (i ? ", " : "")
           << (run.trials[i].direct_failed ? std::string("fail") : fmt(run.trials[i].direct_min));
    os << "]\n";
    os << "difference   [";
    for (size_t i = 0; i < run.trials.size(); ++i)
        os << (i ? ", " : "")
           << (run.trials[i].lm_stable ? fmt(run.trials[i].difference_min)
                                       : std::string("unstable"));
    os << "]\n";
    os << "differential [";
    for (size_t i = 0; i < run.trials.size(); ++i) os << (i ? ", " : "") << fmt(run.trials[i].differential_min);
    os << "]\n";
    return os.str();
}

}  // namespace padicgb
