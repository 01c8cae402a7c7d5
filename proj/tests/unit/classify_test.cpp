#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <tuple>

#include "pindim/adversary.hpp"
#include "pindim/classify.hpp"
#include "pindim/errors.hpp"

using namespace pindim;

namespace {

Profile rise_then_flat() { return Profile({{0, 0}, {4, 8}, {8, 8}}); }

// Dense-sampling versions of the predicates, used as the reference.
bool sampled_yellow(const Profile& p, double a, double b) {
    const int n = 1000;
    for (int k = 0; k <= n; ++k) {
        double c = a + (b - a) * k / n;
        if (eval(p, c) - eval(p, a) < (c - a) - 1e-7) return false;
    }
    return true;
}

bool sampled_teal(const Profile& p, double a, double b) {
    const int n = 1000;
    for (int k = 0; k <= n; ++k) {
        double c = a + (b - a) * k / n;
        if (eval(p, b) - eval(p, c) > (b - c) + 1e-7) return false;
    }
    return true;
}

}  // namespace

TEST(Yellow, Examples) {
    auto line = Profile::line(1.5, 100);
    EXPECT_TRUE(is_yellow(line, 3, 70));
    EXPECT_FALSE(is_yellow(rise_then_flat(), 4, 8));
    EXPECT_TRUE(is_yellow(rise_then_flat(), 0, 4));
    EXPECT_TRUE(is_yellow(rise_then_flat(), 0, 8));
}

TEST(Teal, Examples) {
    EXPECT_TRUE(is_teal(rise_then_flat(), 4, 8));
    EXPECT_FALSE(is_teal(rise_then_flat(), 0, 4));
    EXPECT_TRUE(is_teal(rise_then_flat(), 0, 8));
    auto one = Profile::line(1.0, 100);
    EXPECT_TRUE(is_teal(one, 10, 90));
    EXPECT_TRUE(is_yellow(one, 10, 90));
}

TEST(Green, Examples) {
    auto one = Profile::line(1.0, 100);
    EXPECT_TRUE(is_green(one, 3, 7, 10.0));
    EXPECT_FALSE(is_green(one, 3, 7, 2.0));
    EXPECT_TRUE(is_green(one, 3, 7));
    EXPECT_TRUE(is_green(rise_then_flat(), 2, 6));
}

TEST(RedBlue, Examples) {
    auto p = rise_then_flat();
    EXPECT_TRUE(is_red(p, 0, 4));
    EXPECT_FALSE(is_blue(p, 0, 4));
    EXPECT_TRUE(is_blue(p, 4, 8));
    EXPECT_FALSE(is_red(p, 4, 8));
    EXPECT_FALSE(is_red(p, 2, 6));
    EXPECT_FALSE(is_blue(p, 2, 6));
}

TEST(Degenerate, AllColoursByConvention) {
    auto p = rise_then_flat();
    EXPECT_TRUE(is_yellow(p, 5, 5));
    EXPECT_TRUE(is_teal(p, 5, 5));
    EXPECT_TRUE(is_green(p, 5, 5));
}

TEST(MaximalGreen, LineOfSlopeOne) {
    auto one = Profile::line(1.0, 100);
    auto g = maximal_green_at(one, 50, 10);
    ASSERT_TRUE(g.has_value());
    EXPECT_NEAR(g->length(), 10.0, 1e-9);
    EXPECT_LE(g->a, 50 + 1e-12);
    EXPECT_GE(g->b, 50 - 1e-12);
    EXPECT_EQ(g->color, Color::green);
}

TEST(MaximalGreen, SlopeTwoHasNone) {
    auto two = Profile::line(2.0, 100);
    EXPECT_FALSE(maximal_green_at(two, 40, 10).has_value());
}

TEST(MaximalGreen, SpansKink) {
    // excess climbs to 40 at the kink and is back to 0 at s = 80
    Profile tooth({{0, 0}, {40, 80}, {100, 80}});
    auto g = maximal_green_at(tooth, 40, 1000);
    ASSERT_TRUE(g.has_value());
    EXPECT_TRUE(is_green(tooth, g->a, g->b));
    EXPECT_NEAR(g->a, 0, 1e-9);
    EXPECT_NEAR(g->b, 80, 1e-6);

    auto capped = maximal_green_at(tooth, 40, 40);
    ASSERT_TRUE(capped.has_value());
    EXPECT_TRUE(is_green(tooth, capped->a, capped->b, 40.0));
    EXPECT_NEAR(capped->a, 20, 1e-6);
    EXPECT_NEAR(capped->b, 60, 1e-6);
}

TEST(Labels, MakeIntervalAndRecheck) {
    auto p = rise_then_flat();
    auto iv = make_interval(p, 4, 8, Color::teal);
    EXPECT_DOUBLE_EQ(iv.growth, 0.0);
    EXPECT_TRUE(has_color(p, iv));
    iv.color = Color::yellow;
    EXPECT_FALSE(has_color(p, iv));
    EXPECT_EQ(color_from_string(to_string(Color::green)), Color::green);
}

TEST(ClassifyProperties, BreakpointDecisionMatchesSampling) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        auto p = random_profile(rng, 1.05, 1.95);
        double a = 100 * U(rng), b = 100 * U(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3) continue;
        EXPECT_EQ(is_yellow(p, a, b), sampled_yellow(p, a, b)) << "profile " << i << " [" << a << ", " << b << "]";
        EXPECT_EQ(is_teal(p, a, b), sampled_teal(p, a, b)) << "profile " << i << " [" << a << ", " << b << "]";
    }
}

TEST(ClassifyProperties, UnionsAndNesting) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        auto p = random_profile(rng, 1.05, 1.95);
        double x[3] = {100 * U(rng), 100 * U(rng), 100 * U(rng)};
        std::sort(x, x + 3);
        auto [a, b, c] = std::tuple{x[0], x[1], x[2]};
        if (is_yellow(p, a, b) && is_yellow(p, b, c)) EXPECT_TRUE(is_yellow(p, a, c));
        if (is_teal(p, a, b) && is_teal(p, b, c)) EXPECT_TRUE(is_teal(p, a, c));
        if (is_yellow(p, a, c)) EXPECT_TRUE(is_yellow(p, a, b));
        if (is_teal(p, a, c)) EXPECT_TRUE(is_teal(p, b, c));
        if (is_green(p, a, c)) {
            EXPECT_TRUE(is_yellow(p, a, c));
            EXPECT_TRUE(is_teal(p, a, c));
        }
        if (is_blue(p, a, c)) EXPECT_TRUE(is_teal(p, b, c));
    }
}
