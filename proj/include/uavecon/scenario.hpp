#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavecon/deployment.hpp"
#include "uavecon/placement.hpp"
#include "uavecon/random.hpp"

namespace uavecon {

/// Seeded scenario generation settings. Units are kilometers and hours; power
/// is in watts, so energies come out in watt-hours.
struct ScenarioConfig {
    std::uint64_t seed = 42;
    std::vector<int> n_range = {5, 10, 15, 20};
    int trials = 30;
    double beta = 15.0;
    double mean_speed = 40.0;    // km/h
    double mean_radius = 2.0;    // km
    double mean_altitude = 5.0;  // km
    double spread = 0.25;        // fractional +- jitter around each mean
    PowerModel power = PowerModel::constant(1.0);
    double epsilon = 0.05;       // min-max budget search tolerance
    double delta = 0.075;        // frontier grid step (default beta/200)

    void validate() const {
        if (n_range.empty() || trials < 1) {
            throw std::invalid_argument("ScenarioConfig: need n_range and trials");
        }
        for (int n : n_range) {
            if (n < 1) throw std::invalid_argument("ScenarioConfig: n >= 1");
        }
        if (!(beta > 0.0) || !(mean_speed > 0.0) || !(mean_radius > 0.0) ||
            !(mean_altitude > 0.0)) {
            throw std::invalid_argument("ScenarioConfig: means must be positive");
        }
        if (spread < 0.0 || spread >= 1.0) {
            throw std::invalid_argument("ScenarioConfig: spread in [0, 1)");
        }
        if (!(epsilon > 0.0) || !(delta > 0.0)) {
            throw std::invalid_argument("ScenarioConfig: epsilon, delta > 0");
        }
    }
};

/// Samples one fleet from the (seed, n, trial, attempt) sub-stream: per UAV,
/// x0 uniform in [0, beta], then h, v, r uniform in mean*(1 +- spread).
inline Fleet generate_fleet(const ScenarioConfig& cfg, int n, int trial,
                            int attempt = 0) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("generate_fleet: n >= 1");
    DeterministicRng rng(derive_seed(
        cfg.seed, {static_cast<std::uint64_t>(n),
                   static_cast<std::uint64_t>(trial),
                   static_cast<std::uint64_t>(attempt)}));
    const auto jittered = [&](double mean) {
        const double value = mean * (1.0 + cfg.spread * (2.0 * rng.next_u01() - 1.0));
        if (!(value > 0.0)) {
            throw std::invalid_argument("generate_fleet: nonpositive parameter");
        }
        return value;
    };
    std::vector<UavSpec> uavs(n);
    for (auto& uav : uavs) {
        uav.x0 = rng.uniform(0.0, cfg.beta);
        uav.h = jittered(cfg.mean_altitude);
        uav.v = jittered(cfg.mean_speed);
        uav.r = jittered(cfg.mean_radius);
        uav.power = cfg.power;
    }
    return Fleet::sorted(std::move(uavs), cfg.beta);
}

struct TrialResult {
    int n = 0;
    int trial = 0;
    Objective objective = Objective::MinMax;
    double max_energy = 0.0;
    double total_energy = 0.0;
};

struct ExperimentRecord {
    int n = 0;
    std::string objective;
    double mean_max_energy = 0.0;
    double mean_total_energy = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double runtime_seconds = 0.0;
};

struct TradeoffOutcome {
    std::vector<TrialResult> trial_results;  // per fleet, both objectives
    std::vector<ExperimentRecord> records;   // per (n, objective) averages
    int resampled_fleets = 0;
    int infeasible_flagged = 0;  // trials with no feasible fleet in 10 draws
};

inline const char* objective_name(Objective o) {
    return o == Objective::MinMax ? "minmax" : "minsum";
}

/// Solves every sampled fleet with both objectives and averages per n: the
/// min-max/min-sum tension study. Infeasible draws are resampled up to 10
/// times, then flagged.
inline TradeoffOutcome run_tradeoff_experiment(const ScenarioConfig& cfg) {
    cfg.validate();
    TradeoffOutcome out;
    for (int n : cfg.n_range) {
        double sum_max[2] = {0.0, 0.0};
        double sum_total[2] = {0.0, 0.0};
        double runtime[2] = {0.0, 0.0};
        int solved = 0;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            std::optional<Deployment> minmax;
            std::optional<Deployment> minsum;
            for (int attempt = 0; attempt < 10; ++attempt) {
                const Fleet fleet = generate_fleet(cfg, n, trial, attempt);
                if (attempt > 0) ++out.resampled_fleets;
                const auto t0 = std::chrono::steady_clock::now();
                minmax = minmax_general(fleet, cfg.epsilon);
                const auto t1 = std::chrono::steady_clock::now();
                minsum = minsum_dp(fleet, cfg.delta);
                const auto t2 = std::chrono::steady_clock::now();
                runtime[0] += std::chrono::duration<double>(t1 - t0).count();
                runtime[1] += std::chrono::duration<double>(t2 - t1).count();
                if (minmax && minsum) break;
                minmax.reset();
                minsum.reset();
            }
            if (!minmax || !minsum) {
                ++out.infeasible_flagged;
                continue;
            }
            ++solved;
            out.trial_results.push_back({n, trial, Objective::MinMax,
                                         minmax->max_energy,
                                         minmax->total_energy});
            out.trial_results.push_back({n, trial, Objective::MinSum,
                                         minsum->max_energy,
                                         minsum->total_energy});
            sum_max[0] += minmax->max_energy;
            sum_total[0] += minmax->total_energy;
            sum_max[1] += minsum->max_energy;
            sum_total[1] += minsum->total_energy;
        }
        for (Objective o : {Objective::MinMax, Objective::MinSum}) {
            const int idx = o == Objective::MinMax ? 0 : 1;
            ExperimentRecord rec;
            rec.n = n;
            rec.objective = objective_name(o);
            rec.trials = solved;
            rec.seed = cfg.seed;
            rec.runtime_seconds = runtime[idx];
            if (solved > 0) {
                rec.mean_max_energy = sum_max[idx] / solved;
                rec.mean_total_energy = sum_total[idx] / solved;
            }
            out.records.push_back(std::move(rec));
        }
    }
    return out;
}

struct MechanismFuzzStats {
    int profiles = 0;
    std::size_t deviations_checked = 0;
    std::size_t violations = 0;
    double ratio_mean = 0.0;
    double ratio_max = 0.0;
};

struct MechanismSuiteReport {
    MechanismFuzzStats median_mechanism;   // Mechanism 1 over facility profiles
    MechanismFuzzStats corner_mechanism;   // Mechanism 2 over adverse profiles
    std::size_t mean_counterexample_violations = 0;    // expected >= 1
    std::size_t vertex_counterexample_violations = 0;  // expected >= 1
};

struct MechanismSuiteConfig {
    std::uint64_t seed = 42;
    int profiles = 1000;
    int max_users = 8;
    double weight_min = 0.1;
    double weight_max = 10.0;
    int grid_points_per_axis = 9;
    Cuboid domain = Cuboid(1.0, 1.0, 1.0);
};

inline Profile random_profile(DeterministicRng& rng,
                              const MechanismSuiteConfig& cfg, UserKind kind) {
    const int n = rng.uniform_int(1, cfg.max_users);
    std::vector<UserReport> users(n);
    for (auto& u : users) {
        u.location = {rng.uniform(0.0, 2.0 * cfg.domain.half_x),
                      rng.uniform(0.0, 2.0 * cfg.domain.half_y),
                      rng.uniform(0.0, 2.0 * cfg.domain.half_z)};
        u.weight = rng.uniform(cfg.weight_min, cfg.weight_max);
    }
    return Profile(cfg.domain, kind, std::move(users));
}

/// Misreport candidates: a regular grid over the cuboid plus every reported
/// location. Medians and corner rules only move at report/half-interval
/// breakpoints, so this finite set is the right falsifier family.
inline std::vector<Point3> misreport_candidates(const Profile& profile,
                                                int grid_points_per_axis) {
    std::vector<Point3> candidates;
    const int g = grid_points_per_axis;
    const auto tick = [&](double half, int i) {
        return 2.0 * half * i / (g - 1);
    };
    for (int ix = 0; ix < g; ++ix) {
        for (int iy = 0; iy < g; ++iy) {
            for (int iz = 0; iz < g; ++iz) {
                candidates.push_back({tick(profile.domain.half_x, ix),
                                      tick(profile.domain.half_y, iy),
                                      tick(profile.domain.half_z, iz)});
            }
        }
    }
    for (const auto& u : profile.users) candidates.push_back(u.location);
    return candidates;
}

/// Fuzzes both strategyproof mechanisms and replays the two textbook
/// counterexamples against the non-strategyproof benchmarks.
inline MechanismSuiteReport run_mechanism_suite(const MechanismSuiteConfig& cfg) {
    MechanismSuiteReport report;
    DeterministicRng rng(derive_seed(cfg.seed, {0x6d656368ull}));

    const auto fuzz = [&](MechanismKind mechanism, UserKind kind,
                          MechanismFuzzStats& stats) {
        double ratio_sum = 0.0;
        for (int p = 0; p < cfg.profiles; ++p) {
            const Profile profile = random_profile(rng, cfg, kind);
            const auto candidates =
                misreport_candidates(profile, cfg.grid_points_per_axis);
            const auto result =
                verify_strategyproof(mechanism, profile, candidates);
            stats.deviations_checked += result.trials;
            stats.violations += result.violations.size();
            const double ratio = approximation_ratio(mechanism, profile);
            ratio_sum += ratio;
            stats.ratio_max = std::max(stats.ratio_max, ratio);
            ++stats.profiles;
        }
        stats.ratio_mean = ratio_sum / cfg.profiles;
    };
    fuzz(MechanismKind::WeightedMedian, UserKind::Facility,
         report.median_mechanism);
    fuzz(MechanismKind::MajorityCorner, UserKind::Adverse,
         report.corner_mechanism);

    // Weighted-mean benchmark: users at 0 and 2, user 2 misreports 4.
    {
        Profile profile(Cuboid(2.0, 1.0, 1.0), UserKind::Facility,
                        {{{0.0, 1.0, 1.0}, 1.0}, {{2.0, 1.0, 1.0}, 1.0}});
        const auto result = verify_strategyproof(
            MechanismKind::WeightedMeanOptimal, profile, {{4.0, 1.0, 1.0}});
        report.mean_counterexample_violations = result.violations.size();
    }
    // Farthest-vertex benchmark: users at 0.4A and 1.2A, user 2 misreports 2A.
    {
        Profile profile(Cuboid(1.0, 1.0, 1.0), UserKind::Adverse,
                        {{{0.4, 1.0, 1.0}, 1.0}, {{1.2, 1.0, 1.0}, 1.0}});
        const auto result = verify_strategyproof(
            MechanismKind::ObnoxiousOptimalVertex, profile, {{2.0, 1.0, 1.0}});
        report.vertex_counterexample_violations = result.violations.size();
    }
    return report;
}

}  // namespace uavecon
