#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavecon/geometry.hpp"

namespace uavecon {

enum class UserKind { Facility, Adverse };

struct UserReport {
    Point3 location;
    double weight = 1.0;
};

/// A game instance: every user shares the same preference kind.
struct Profile {
    Cuboid domain;
    UserKind kind = UserKind::Facility;
    std::vector<UserReport> users;

    Profile() = default;
    Profile(Cuboid d, UserKind k, std::vector<UserReport> u)
        : domain(d), kind(k), users(std::move(u)) {
        validate();
    }

    void validate() const {
        if (users.empty()) {
            throw std::invalid_argument("Profile: needs at least one user");
        }
        for (const auto& u : users) {
            if (!(u.weight > 0.0)) {
                throw std::invalid_argument("Profile: weights must be positive");
            }
            if (!is_finite(u.location) || !domain.contains(u.location)) {
                throw std::invalid_argument("Profile: user outside the domain");
            }
        }
    }
};

namespace detail {

inline void require_kind(const Profile& p, UserKind k, const char* op) {
    if (p.users.empty()) {
        throw std::invalid_argument(std::string(op) + ": empty profile");
    }
    if (p.kind != k) {
        throw std::invalid_argument(std::string(op) + ": wrong profile kind");
    }
}

}  // namespace detail

/// Sum of weighted squared distances from facility users to `point`.
inline double social_cost(const Point3& point, const Profile& profile) {
    detail::require_kind(profile, UserKind::Facility, "social_cost");
    double total = 0.0;
    for (const auto& u : profile.users) {
        total += u.weight * squared_distance(u.location, point);
    }
    return total;
}

/// Sum of weighted squared distances from adverse users to `point`.
inline double social_utility(const Point3& point, const Profile& profile) {
    detail::require_kind(profile, UserKind::Adverse, "social_utility");
    double total = 0.0;
    for (const auto& u : profile.users) {
        total += u.weight * squared_distance(u.location, point);
    }
    return total;
}

/// Full-information benchmark for facility users: the weighted mean minimizes
/// the social cost over the whole domain.
inline Point3 weighted_mean_optimal(const Profile& profile) {
    detail::require_kind(profile, UserKind::Facility, "weighted_mean_optimal");
    double w_sum = 0.0;
    Point3 acc{};
    for (const auto& u : profile.users) {
        w_sum += u.weight;
        acc.x += u.weight * u.location.x;
        acc.y += u.weight * u.location.y;
        acc.z += u.weight * u.location.z;
    }
    return {acc.x / w_sum, acc.y / w_sum, acc.z / w_sum};
}

/// Smallest reported value m whose cumulative weights on both sides reach half
/// the total: sum_{v_i <= m} w_i >= W/2 and sum_{v_i >= m} w_i >= W/2.
inline double weighted_median_1d(const std::vector<double>& values,
                                 const std::vector<double>& weights) {
    if (values.empty() || values.size() != weights.size()) {
        throw std::invalid_argument("weighted_median_1d: bad input lengths");
    }
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });

    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw std::invalid_argument("weighted_median_1d: nonpositive weight");
        }
        total += w;
    }
    const double half = 0.5 * total;
    const double eps = 1e-12 * total;

    // Walk distinct values in ascending order, maintaining cumulative weight
    // at-or-below the current value.
    double below_or_at = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double v = values[order[i]];
        double weight_at_v = 0.0;
        std::size_t j = i;
        while (j < n && values[order[j]] == v) {
            weight_at_v += weights[order[j]];
            ++j;
        }
        below_or_at += weight_at_v;
        const double above_or_at = total - below_or_at + weight_at_v;
        if (below_or_at >= half - eps && above_or_at >= half - eps) {
            return v;
        }
        i = j;
    }
    return values[order[n - 1]];  // unreachable for valid input
}

/// Mechanism 1: coordinate-wise weighted median of the reports. Strategyproof
/// for facility users.
inline Point3 mechanism1_weighted_median(const Profile& profile) {
    detail::require_kind(profile, UserKind::Facility, "mechanism1");
    const std::size_t n = profile.users.size();
    std::vector<double> xs(n), ys(n), zs(n), ws(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = profile.users[i].location.x;
        ys[i] = profile.users[i].location.y;
        zs[i] = profile.users[i].location.z;
        ws[i] = profile.users[i].weight;
    }
    return {weighted_median_1d(xs, ws), weighted_median_1d(ys, ws),
            weighted_median_1d(zs, ws)};
}

/// Full-information benchmark for adverse users: the utility-maximizing corner
/// of the cuboid (the social utility is convex, so a vertex maximizes it).
/// Ties go to the lexicographically smallest vertex.
inline Point3 obnoxious_optimal_vertex(const Profile& profile) {
    detail::require_kind(profile, UserKind::Adverse, "obnoxious_optimal_vertex");
    Point3 best{};
    double best_value = -1.0;
    for (const Point3& v : profile.domain.vertices()) {
        const double value = social_utility(v, profile);
        if (value > best_value) {
            best_value = value;
            best = v;
        }
    }
    return best;
}

/// Mechanism 2: per coordinate, place the UAV at the corner away from the
/// weighted majority. A user exactly on the midline counts to the upper half;
/// an exact weight tie places the coordinate at 0.
inline Point3 mechanism2_majority_corner(const Profile& profile) {
    detail::require_kind(profile, UserKind::Adverse, "mechanism2");
    const auto pick = [&](double half, auto coord) {
        double lower = 0.0;
        double upper = 0.0;
        for (const auto& u : profile.users) {
            (coord(u.location) < half ? lower : upper) += u.weight;
        }
        return lower <= upper ? 0.0 : 2.0 * half;
    };
    return {pick(profile.domain.half_x, [](const Point3& p) { return p.x; }),
            pick(profile.domain.half_y, [](const Point3& p) { return p.y; }),
            pick(profile.domain.half_z, [](const Point3& p) { return p.z; })};
}

enum class MechanismKind {
    WeightedMedian,        // Mechanism 1 (facility)
    MajorityCorner,        // Mechanism 2 (adverse)
    WeightedMeanOptimal,   // facility benchmark, not strategyproof
    ObnoxiousOptimalVertex // adverse benchmark, not strategyproof
};

inline bool is_facility_mechanism(MechanismKind m) {
    return m == MechanismKind::WeightedMedian ||
           m == MechanismKind::WeightedMeanOptimal;
}

inline Point3 apply_mechanism(MechanismKind m, const Profile& profile) {
    switch (m) {
        case MechanismKind::WeightedMedian:
            return mechanism1_weighted_median(profile);
        case MechanismKind::MajorityCorner:
            return mechanism2_majority_corner(profile);
        case MechanismKind::WeightedMeanOptimal:
            return weighted_mean_optimal(profile);
        case MechanismKind::ObnoxiousOptimalVertex:
            return obnoxious_optimal_vertex(profile);
    }
    throw std::invalid_argument("apply_mechanism: unknown mechanism");
}

struct Violation {
    std::size_t user_index = 0;
    Point3 true_location;
    Point3 misreport;
    double truthful_value = 0.0;  // user's cost (facility) or utility (adverse)
    double misreport_value = 0.0;
};

struct StrategyproofnessReport {
    std::vector<Violation> violations;
    std::size_t trials = 0;
};

constexpr double kStrategyproofTolerance = 1e-9;

/// Replays every (user, misreport candidate) deviation against `mechanism` and
/// records each one that strictly improves the deviator's outcome.
inline StrategyproofnessReport verify_strategyproof(
    MechanismKind mechanism, const Profile& profile,
    const std::vector<Point3>& misreport_candidates) {
    profile.validate();
    const UserKind expected =
        is_facility_mechanism(mechanism) ? UserKind::Facility : UserKind::Adverse;
    detail::require_kind(profile, expected, "verify_strategyproof");
    for (const auto& c : misreport_candidates) {
        if (!profile.domain.contains(c)) {
            throw std::invalid_argument(
                "verify_strategyproof: candidate outside the domain");
        }
    }

    const Point3 truthful_point = apply_mechanism(mechanism, profile);
    StrategyproofnessReport report;
    Profile perturbed = profile;
    for (std::size_t i = 0; i < profile.users.size(); ++i) {
        const UserReport& user = profile.users[i];
        const double truthful_value =
            user.weight * squared_distance(user.location, truthful_point);
        for (const Point3& candidate : misreport_candidates) {
            ++report.trials;
            perturbed.users[i].location = candidate;
            const Point3 deviated_point = apply_mechanism(mechanism, perturbed);
            const double deviated_value =
                user.weight * squared_distance(user.location, deviated_point);
            const bool gained =
                profile.kind == UserKind::Facility
                    ? deviated_value < truthful_value - kStrategyproofTolerance
                    : deviated_value > truthful_value + kStrategyproofTolerance;
            if (gained) {
                report.violations.push_back(Violation{
                    i, user.location, candidate, truthful_value, deviated_value});
            }
        }
        perturbed.users[i].location = user.location;
    }
    return report;
}

/// Mechanism value relative to the full-information benchmark; always >= 1 up
/// to rounding. Facility: cost(mechanism)/cost(optimum). Adverse:
/// utility(optimum)/utility(mechanism).
inline double approximation_ratio(MechanismKind mechanism,
                                  const Profile& profile) {
    const auto ratio = [](double benchmark_like, double base) {
        if (base == 0.0) {
            return benchmark_like == 0.0
                       ? 1.0
                       : std::numeric_limits<double>::infinity();
        }
        return benchmark_like / base;
    };
    if (profile.kind == UserKind::Facility) {
        if (!is_facility_mechanism(mechanism)) {
            throw std::invalid_argument("approximation_ratio: kind mismatch");
        }
        const double mech = social_cost(apply_mechanism(mechanism, profile), profile);
        const double opt = social_cost(weighted_mean_optimal(profile), profile);
        return ratio(mech, opt);
    }
    if (is_facility_mechanism(mechanism)) {
        throw std::invalid_argument("approximation_ratio: kind mismatch");
    }
    const double mech = social_utility(apply_mechanism(mechanism, profile), profile);
    const double opt = social_utility(obnoxious_optimal_vertex(profile), profile);
    return ratio(opt, mech);
}

}  // namespace uavecon
