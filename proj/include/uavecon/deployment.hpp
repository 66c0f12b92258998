#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "uavecon/power.hpp"

namespace uavecon {

constexpr double kCoverageTolerance = 1e-9;

struct UavSpec {
    double x0 = 0.0;  // initial ground position
    double h = 1.0;   // hovering altitude
    double v = 1.0;   // flying speed
    double r = 1.0;   // coverage radius
    PowerModel power = PowerModel::constant(1.0);
};

/// A fleet tasked with covering the ground interval [0, beta], kept sorted by
/// initial position. Ties dispatch wider-coverage UAVs first.
struct Fleet {
    std::vector<UavSpec> uavs;
    double beta = 1.0;

    static Fleet sorted(std::vector<UavSpec> uavs, double beta) {
        std::sort(uavs.begin(), uavs.end(), [](const UavSpec& a, const UavSpec& b) {
            if (a.x0 != b.x0) return a.x0 < b.x0;
            return a.r > b.r;
        });
        Fleet fleet{std::move(uavs), beta};
        fleet.validate();
        return fleet;
    }

    void validate() const {
        if (!(beta > 0.0)) {
            throw std::invalid_argument("Fleet: beta must be positive");
        }
        for (std::size_t i = 0; i < uavs.size(); ++i) {
            const UavSpec& u = uavs[i];
            if (!(u.h > 0.0 && u.v > 0.0 && u.r > 0.0)) {
                throw std::invalid_argument("Fleet: h, v, r must be positive");
            }
            if (i > 0 && uavs[i - 1].x0 > u.x0) {
                throw std::invalid_argument("Fleet: UAVs must be sorted by x0");
            }
        }
    }

    std::size_t size() const { return uavs.size(); }

    double total_coverage_width() const {
        double w = 0.0;
        for (const auto& u : uavs) w += 2.0 * u.r;
        return w;
    }
};

struct UavAssignment {
    std::optional<double> position;  // final hover x, empty if left grounded
    double energy = 0.0;
};

struct Deployment {
    std::vector<UavAssignment> assignments;
    double max_energy = 0.0;
    double total_energy = 0.0;
    bool covered = false;
};

/// Energy to fly from (x0, 0) to (x_final, h) at constant speed:
/// g(v) * sqrt((x_final - x0)^2 + h^2) / v.
inline double deployment_energy(const UavSpec& uav, double x_final) {
    return uav.power(uav.v) * std::hypot(x_final - uav.x0, uav.h) / uav.v;
}

/// Ground positions reachable without exceeding `budget` joules, or nullopt if
/// the budget cannot even pay for the climb to altitude.
inline std::optional<std::pair<double, double>> reachable_interval(
    const UavSpec& uav, double budget) {
    const double max_distance = budget * uav.v / uav.power(uav.v);
    if (max_distance < uav.h) return std::nullopt;
    const double span =
        std::sqrt(std::max(0.0, (max_distance - uav.h) * (max_distance + uav.h)));
    return std::make_pair(uav.x0 - span, uav.x0 + span);
}

/// True iff the deployed footprints [x'-r, x'+r] jointly cover [0, beta].
/// Closed intervals: exact endpoint abutment counts.
inline bool coverage_check(const Deployment& deployment, const Fleet& fleet) {
    if (deployment.assignments.size() != fleet.size()) return false;
    std::vector<std::pair<double, double>> intervals;
    for (std::size_t i = 0; i < fleet.size(); ++i) {
        if (deployment.assignments[i].position) {
            const double x = *deployment.assignments[i].position;
            intervals.emplace_back(x - fleet.uavs[i].r, x + fleet.uavs[i].r);
        }
    }
    std::sort(intervals.begin(), intervals.end());
    double frontier = 0.0;
    for (const auto& [lo, hi] : intervals) {
        if (lo > frontier + kCoverageTolerance) break;
        frontier = std::max(frontier, hi);
    }
    return frontier >= fleet.beta - kCoverageTolerance;
}

namespace detail {

inline Deployment finalize(std::vector<UavAssignment> assignments,
                           const Fleet& fleet) {
    Deployment d;
    d.assignments = std::move(assignments);
    for (const auto& a : d.assignments) {
        d.max_energy = std::max(d.max_energy, a.energy);
        d.total_energy += a.energy;
    }
    d.covered = coverage_check(d, fleet);
    return d;
}

}  // namespace detail

/// Min-max deployment for a fleet grounded at one station left of the target.
/// Greedy: repeatedly dispatch the UAV that can cover the current uncovered
/// right frontier with the least energy, placing it no further than needed.
inline std::optional<Deployment> minmax_colocated(const Fleet& fleet) {
    fleet.validate();
    const double x0 = fleet.uavs.at(0).x0;
    if (x0 > 0.0) {
        throw std::invalid_argument("minmax_colocated: requires x0 <= 0");
    }
    for (const auto& u : fleet.uavs) {
        if (u.x0 != x0) {
            throw std::invalid_argument("minmax_colocated: UAVs must share one x0");
        }
    }

    std::vector<UavAssignment> assignments(fleet.size());
    std::vector<bool> used(fleet.size(), false);
    double frontier = fleet.beta;
    while (frontier > kCoverageTolerance) {
        std::size_t best = fleet.size();
        double best_energy = std::numeric_limits<double>::infinity();
        double best_position = 0.0;
        for (std::size_t i = 0; i < fleet.size(); ++i) {
            if (used[i]) continue;
            const double position = std::max(frontier - fleet.uavs[i].r, x0);
            const double energy = deployment_energy(fleet.uavs[i], position);
            if (energy < best_energy) {
                best = i;
                best_energy = energy;
                best_position = position;
            }
        }
        if (best == fleet.size()) return std::nullopt;  // ran out of UAVs
        used[best] = true;
        assignments[best] = {best_position, best_energy};
        frontier = best_position - fleet.uavs[best].r;
    }
    return detail::finalize(std::move(assignments), fleet);
}

/// Order-respecting sweep: processes UAVs left to right and deploys each one
/// that can extend the covered prefix [0, p) within the energy budget, placing
/// it to push p as far right as its reach allows. UAVs sharing one initial
/// position carry no mutual order constraint; such a run is dispatched
/// earliest-expiry-first (a UAV stops being useful once p passes its reach
/// plus radius), which maximizes the frontier the run can attain.
inline std::optional<Deployment> minmax_feasible(const Fleet& fleet,
                                                 double budget) {
    fleet.validate();
    const std::size_t n = fleet.size();
    std::vector<UavAssignment> assignments(n);
    double p = 0.0;
    std::size_t i = 0;
    while (i < n && p < fleet.beta) {
        std::size_t group_end = i;
        while (group_end < n && fleet.uavs[group_end].x0 == fleet.uavs[i].x0) {
            ++group_end;
        }
        std::vector<std::size_t> order;
        for (std::size_t k = i; k < group_end; ++k) order.push_back(k);
        if (order.size() > 1) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                const auto ra = reachable_interval(fleet.uavs[a], budget);
                const auto rb = reachable_interval(fleet.uavs[b], budget);
                const double da =
                    ra ? ra->second + fleet.uavs[a].r : -std::numeric_limits<double>::infinity();
                const double db =
                    rb ? rb->second + fleet.uavs[b].r : -std::numeric_limits<double>::infinity();
                if (da != db) return da < db;
                return a < b;
            });
        }
        for (std::size_t k : order) {
            if (p >= fleet.beta) break;
            const UavSpec& uav = fleet.uavs[k];
            const auto reach = reachable_interval(uav, budget);
            if (!reach) continue;
            const auto [lo, hi] = *reach;
            if (lo - uav.r <= p && hi + uav.r > p) {
                const double position = std::min(hi, p + uav.r);
                assignments[k] = {position, deployment_energy(uav, position)};
                p = position + uav.r;
            }
        }
        i = group_end;
    }
    if (p < fleet.beta - kCoverageTolerance) return std::nullopt;
    return detail::finalize(std::move(assignments), fleet);
}

/// Bisects the per-UAV energy budget over the feasibility sweep until the
/// bracket is within a (1 + epsilon) factor, so the returned max energy is at
/// most (1 + epsilon) times the best order-respecting deployment's.
inline std::optional<Deployment> minmax_general(const Fleet& fleet,
                                                double epsilon) {
    fleet.validate();
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("minmax_general: epsilon must be positive");
    }
    double hi = 0.0;
    for (const auto& uav : fleet.uavs) {
        const double far_end =
            std::abs(uav.x0) >= std::abs(fleet.beta - uav.x0) ? 0.0 : fleet.beta;
        hi = std::max(hi, deployment_energy(uav, far_end));
    }
    auto best = minmax_feasible(fleet, hi);
    if (!best) return std::nullopt;  // not even unlimited repositioning covers

    double lo = 0.0;
    while (hi - lo > std::max(epsilon * lo, 1e-9)) {
        const double mid = 0.5 * (lo + hi);
        if (auto attempt = minmax_feasible(fleet, mid)) {
            hi = mid;
            best = std::move(attempt);
        } else {
            lo = mid;
        }
    }
    return best;
}

namespace detail {

/// Frontier grid {0, delta, 2*delta, ..., beta}.
inline std::vector<double> frontier_grid(double beta, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("frontier grid: delta must be positive");
    }
    std::vector<double> grid;
    for (std::size_t k = 0; k * delta < beta - 1e-12 * beta; ++k) {
        grid.push_back(k * delta);
    }
    grid.push_back(beta);
    return grid;
}

/// Cheapest hover position that keeps contact with frontier `from` and reaches
/// at least frontier `to`; nullopt if the UAV's footprint cannot span the gap.
inline std::optional<double> cheapest_bridging_position(const UavSpec& uav,
                                                        double from, double to) {
    const double lo = to - uav.r;
    const double hi = from + uav.r;
    if (lo > hi) return std::nullopt;
    return std::clamp(uav.x0, lo, hi);
}

}  // namespace detail

/// Min-sum deployment by dynamic programming over (UAVs considered in initial
/// order, covered frontier on a delta grid). Each deployed UAV extends the
/// frontier contiguously at the cheapest position doing so; grid rounding adds
/// at most n * max g(v)/v * delta to the optimum.
inline std::optional<Deployment> minsum_dp(const Fleet& fleet, double delta) {
    fleet.validate();
    const std::vector<double> grid = detail::frontier_grid(fleet.beta, delta);
    const std::size_t n = fleet.size();
    const std::size_t K = grid.size() - 1;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(K + 1, inf));
    // parent[i+1][f]: frontier before UAV i acted, or SIZE_MAX for "skipped".
    std::vector<std::vector<std::size_t>> parent(
        n + 1, std::vector<std::size_t>(K + 1, SIZE_MAX));
    dp[0][0] = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const UavSpec& uav = fleet.uavs[i];
        for (std::size_t f = 0; f <= K; ++f) {
            if (dp[i][f] == inf) continue;
            // Skip UAV i.
            if (dp[i][f] < dp[i + 1][f]) {
                dp[i + 1][f] = dp[i][f];
                parent[i + 1][f] = SIZE_MAX;
            }
            // Deploy UAV i, extending the frontier to grid[f2].
            for (std::size_t f2 = f + 1; f2 <= K; ++f2) {
                const auto position =
                    detail::cheapest_bridging_position(uav, grid[f], grid[f2]);
                if (!position) break;  // spans only grow with f2
                const double cost = dp[i][f] + deployment_energy(uav, *position);
                if (cost < dp[i + 1][f2]) {
                    dp[i + 1][f2] = cost;
                    parent[i + 1][f2] = f;
                }
            }
        }
    }
    if (dp[n][K] == inf) return std::nullopt;

    std::vector<UavAssignment> assignments(n);
    std::size_t f = K;
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t prev = parent[i + 1][f];
        if (prev == SIZE_MAX) continue;
        const double position =
            *detail::cheapest_bridging_position(fleet.uavs[i], grid[prev], grid[f]);
        assignments[i] = {position, deployment_energy(fleet.uavs[i], position)};
        f = prev;
    }
    return detail::finalize(std::move(assignments), fleet);
}

enum class Objective { MinMax, MinSum };
enum class OrderMode { OrderPreserving, Unrestricted };

namespace detail {

struct OracleSearch {
    const Fleet& fleet;
    const std::vector<double>& grid;
    Objective objective;
    std::vector<std::vector<double>> memo;  // [state][frontier]
    static constexpr double kUnset = -1.0;

    double combine(double cost, double rest) const {
        return objective == Objective::MinSum ? cost + rest
                                              : std::max(cost, rest);
    }

    // OrderPreserving: state = next UAV index. Unrestricted: state = used mask.
    template <typename NextStates>
    double solve(std::size_t state, std::size_t f, NextStates&& next) {
        const std::size_t K = grid.size() - 1;
        if (f == K) return 0.0;
        double& slot = memo[state][f];
        if (slot != kUnset) return slot;
        double best = std::numeric_limits<double>::infinity();
        next(state, [&](std::size_t uav_index, std::size_t next_state) {
            const UavSpec& uav = fleet.uavs[uav_index];
            for (std::size_t f2 = f + 1; f2 <= K; ++f2) {
                const auto pos = cheapest_bridging_position(uav, grid[f], grid[f2]);
                if (!pos) break;
                const double value = combine(deployment_energy(uav, *pos),
                                             solve(next_state, f2, next));
                best = std::min(best, value);
            }
        });
        return slot = best;
    }
};

}  // namespace detail

/// Exhaustive deploy-or-skip search over the frontier grid; the validation
/// benchmark for the polynomial solvers. Limited to n <= 5.
inline std::optional<Deployment> brute_force_oracle(const Fleet& fleet,
                                                    double delta,
                                                    Objective objective,
                                                    OrderMode order_mode) {
    fleet.validate();
    if (fleet.size() > 5) {
        throw std::invalid_argument("brute_force_oracle: limited to n <= 5");
    }
    const std::vector<double> grid = detail::frontier_grid(fleet.beta, delta);
    const std::size_t n = fleet.size();
    const std::size_t K = grid.size() - 1;
    const std::size_t states =
        order_mode == OrderMode::OrderPreserving ? n + 1 : (std::size_t{1} << n);

    detail::OracleSearch search{
        fleet, grid, objective,
        std::vector<std::vector<double>>(
            states,
            std::vector<double>(K + 1, detail::OracleSearch::kUnset))};

    const auto order_preserving_moves = [&](std::size_t i, auto&& emit) {
        // Skipping UAV i is the same as deploying a later one first, so only
        // "deploy some j >= i" moves are needed.
        for (std::size_t j = i; j < n; ++j) emit(j, j + 1);
    };
    const auto unrestricted_moves = [&](std::size_t mask, auto&& emit) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) emit(j, mask | (std::size_t{1} << j));
        }
    };

    double value;
    if (order_mode == OrderMode::OrderPreserving) {
        value = search.solve(0, 0, order_preserving_moves);
    } else {
        value = search.solve(0, 0, unrestricted_moves);
    }
    if (!std::isfinite(value)) return std::nullopt;

    // Reconstruct by replaying transitions that reproduce the memoized value.
    std::vector<UavAssignment> assignments(n);
    std::size_t state = 0;
    std::size_t f = 0;
    while (f < K) {
        const double target = search.memo[state][f];
        bool advanced = false;
        const auto try_move = [&](std::size_t j, std::size_t next_state) {
            if (advanced) return;
            const UavSpec& uav = fleet.uavs[j];
            for (std::size_t f2 = f + 1; f2 <= K; ++f2) {
                const auto pos =
                    detail::cheapest_bridging_position(uav, grid[f], grid[f2]);
                if (!pos) break;
                const double rest = f2 == K ? 0.0 : search.memo[next_state][f2];
                if (f2 != K && rest == detail::OracleSearch::kUnset) continue;
                const double cost = deployment_energy(uav, *pos);
                if (search.combine(cost, rest) <= target + 1e-12) {
                    assignments[j] = {*pos, cost};
                    state = next_state;
                    f = f2;
                    advanced = true;
                    return;
                }
            }
        };
        if (order_mode == OrderMode::OrderPreserving) {
            order_preserving_moves(state, try_move);
        } else {
            unrestricted_moves(state, try_move);
        }
        if (!advanced) return std::nullopt;  // should not happen
    }
    return detail::finalize(std::move(assignments), fleet);
}

enum class LifetimeMode { Partial, Full };

/// Residual service energy after deployment: bottleneck UAV residual under
/// partial cooperation, pooled fleet residual under full cooperation.
inline double network_lifetime(const Deployment& deployment, double e0,
                               LifetimeMode mode) {
    if (!(e0 > 0.0)) {
        throw std::invalid_argument("network_lifetime: e0 must be positive");
    }
    if (mode == LifetimeMode::Partial) {
        return e0 - deployment.max_energy;
    }
    return static_cast<double>(deployment.assignments.size()) * e0 -
           deployment.total_energy;
}

}  // namespace uavecon
