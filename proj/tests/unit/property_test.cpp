#include <gtest/gtest.h>

#include <random>

#include "pindim/adversary.hpp"
#include "pindim/bounds.hpp"
#include "pindim/errors.hpp"
#include "pindim/partition.hpp"

using namespace pindim;

namespace {

struct Case {
    double d, D;
    Profile p;
};

std::vector<Case> random_cases(std::uint64_t seed, int n, std::optional<double> min_rise = std::nullopt) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    RandomProfileOptions opt;
    opt.min_rising_slope = min_rise;
    std::vector<Case> out;
    for (int i = 0; i < n; ++i) {
        double d = 1.05 + 0.6 * U(rng);
        double D = d + (2.0 - d) * U(rng);
        out.push_back({d, D, random_profile(rng, d, D, opt)});
    }
    return out;
}

const double kSMin = random_profile_s_min({});

}  // namespace

TEST(Soundness, DistanceBoundMeetsClosedForm) {
    for (const auto& c : random_cases(2024, 300)) {
        auto rep = assemble_distance_bound(c.p, 100, DimParams::collapsed(c.d, c.D), kSMin);
        EXPECT_GE(rep.assembled_value / 100, hausdorff_bound(c.d, c.D) - 1e-3) << c.d << ' ' << c.D;
        EXPECT_TRUE(rep.holds);
        double sum = 0;
        for (const auto& row : rep.ledger) sum += row.amount;
        EXPECT_NEAR(sum, rep.ledger_sum, 1e-9);
        EXPECT_GE(rep.L, 0);
        EXPECT_LE(rep.L, 100 + 1e-9);
    }
}

TEST(Soundness, ProjectionBoundBelowClosedForm) {
    for (const auto& c : random_cases(77, 300, 1.05)) {
        double t = projection_min_t(c.d, c.D, 100) + 1.0;
        auto rep = assemble_projection_bound(c.p, 100, t, c.d, c.D, 1e-3, kSMin);
        EXPECT_LE(rep.assembled_value, rep.closed_form_value + 1e-3 * 100) << c.d << ' ' << c.D;
        EXPECT_TRUE(rep.holds);
    }
}

TEST(SelfValidation, EveryConstructionPassesItsChecks) {
    for (const auto& c : random_cases(31337, 300)) {
        for (const auto& P : {good_partition(c.p, 100, kSMin), general_partition(c.p, 100, c.d, c.D, kSMin)}) {
            auto issues = check_partition(c.p, P);
            EXPECT_TRUE(issues.empty()) << to_string(P.kind) << ": " << (issues.empty() ? "" : issues.front());
        }
        if (c.D + 1e-3 < 2 * c.d - 1 - 1e-3) {
            auto P = all_yellow_partition(c.p, 100, c.d, c.D, 0.0, kSMin);
            EXPECT_TRUE(check_partition(c.p, P).empty());
        }
    }
}

TEST(SelfValidation, DeterministicRebuild) {
    for (const auto& c : random_cases(8, 50)) {
        auto A = general_partition(c.p, 100, c.d, c.D, kSMin);
        auto B = general_partition(c.p, 100, c.d, c.D, kSMin);
        ASSERT_EQ(A.intervals.size(), B.intervals.size());
        for (std::size_t i = 0; i < A.intervals.size(); ++i) {
            EXPECT_EQ(A.intervals[i].a, B.intervals[i].a);
            EXPECT_EQ(A.intervals[i].color, B.intervals[i].color);
        }
    }
}
