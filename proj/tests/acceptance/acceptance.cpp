// Acceptance suite. Prints one PASS/FAIL line per criterion; with an argument
// N only criterion N runs. Exit status is nonzero if anything failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "pindim/adversary.hpp"
#include "pindim/bounds.hpp"
#include "pindim/classify.hpp"
#include "pindim/errors.hpp"
#include "pindim/partition.hpp"
#include "pindim/profile.hpp"

using namespace pindim;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- shared fixtures ----

struct SuiteCase {
    double d, D;
    Profile p;  // general envelope-valid profile
    Profile q;  // rising slopes kept away from (0, 1.05)
};

const double kSuiteSMin = random_profile_s_min({});

const std::vector<SuiteCase>& structural_suite() {
    static const std::vector<SuiteCase> suite = [] {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        RandomProfileOptions plain, rising;
        rising.min_rising_slope = 1.05;
        std::vector<SuiteCase> out;
        for (int i = 0; i < 1000; ++i) {
            double d = 1.05 + 0.6 * U(rng);
            double D = d + (2.0 - d) * U(rng);
            Profile p = random_profile(rng, d, D, plain);
            Profile q = random_profile(rng, d, D, rising);
            out.push_back({d, D, std::move(p), std::move(q)});
        }
        return out;
    }();
    return suite;
}

// ---- criteria ----

Outcome closed_form_identities() {
    Clock clock;
    double worst_d2 = 0, worst_lim = 0;
    for (int i = 1; i <= 200; ++i) {
        double d = 1.0 + i / 200.0;
        double ref = std::min(1.0, d * (d - 4.0) / (d - 5.0));
        worst_d2 = std::max(worst_d2, std::abs(hausdorff_bound(d, 2.0) - ref));
    }
    const double d0 = 1.0 + 1e-9;
    for (int i = 0; i < 200; ++i) {
        double D = 1.005 + (2.0 - 1.005) * i / 199.0;
        double ref = (D + 1.0) / (2.0 * D);
        worst_lim = std::max(worst_lim, std::abs(hausdorff_bound(d0, D) - ref));
    }
    double t = clock.seconds();
    Outcome o;
    o.pass = worst_d2 <= 1e-12 && worst_lim <= 1e-6 && t < 1.0;
    o.detail = fmt("max |hb(d,2) - min{1,d(d-4)/(d-5)}| = %.2e, max |hb(1+1e-9,D) - (D+1)/(2D)| = %.2e, %.3fs",
                   worst_d2, worst_lim, t);
    return o;
}

Outcome equalization_consistency() {
    Clock clock;
    double worst = 0;
    int points = 0;
    for (int i = 0; i < 50; ++i) {
        double d = 1.01 + 0.98 * i / 49.0;
        for (int j = 0; j < 50; ++j) {
            double D = d + (2.0 - d) * j / 49.0;
            if (teal_growth_rate(d, D) >= 1.0) continue;
            double den = 2 * D * D + (2 - 4 * d) * D + d * d + d - 2;
            double closed = d * (1.0 - (D - 1.0) * (D - d) / den);
            worst = std::max(worst, std::abs(minimize_over_L(d, D).value - closed));
            ++points;
        }
    }
    double t = clock.seconds();
    Outcome o;
    o.pass = points > 0 && worst <= 1e-9 && t < 1.0;
    o.detail = fmt("%d grid points with rho < 1, max deviation %.2e, %.3fs", points, worst, t);
    return o;
}

Outcome threshold() {
    double worst = 0;
    int solved = 0;
    for (int i = 1; i <= 200; ++i) {
        double d = 1.0 + i / 200.0;
        auto f = [d](double D) { return teal_growth_ratio(d, D) - 1.0; };
        std::uintmax_t iters = 200;
        auto [a, b] = boost::math::tools::toms748_solve(f, d, 4.0, boost::math::tools::eps_tolerance<double>(50),
                                                        iters);
        double root = 0.5 * (a + b);
        double ref = ((3.0 + std::sqrt(5.0)) * d - 1.0 - std::sqrt(5.0)) / 2.0;
        worst = std::max(worst, std::abs(root - ref));
        ++solved;
    }
    Outcome o;
    o.pass = solved == 200 && worst <= 1e-6;
    o.detail = fmt("%d roots of teal growth ratio = 1, max |D - D*(d)| = %.2e", solved, worst);
    return o;
}

Outcome packing_number() {
    // golden-section search on [1, 2]
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 1.0, b = 2.0;
    double c = b - phi * (b - a), e = a + phi * (b - a);
    double fc = packing_closed_form(c), fe = packing_closed_form(e);
    while (b - a > 1e-10) {
        if (fc < fe) {
            b = e;
            e = c;
            fe = fc;
            c = b - phi * (b - a);
            fc = packing_closed_form(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + phi * (b - a);
            fe = packing_closed_form(e);
        }
    }
    double arg = 0.5 * (a + b);
    double value = packing_closed_form(arg);
    const double anchor = 0.9356603;
    Outcome o;
    bool arg_ok = std::abs(arg - std::sqrt(2.0)) <= 1e-6;
    bool val_ok = std::abs(value - anchor) <= 1e-7;
    o.pass = arg_ok && val_ok;
    o.detail = fmt("argmin %.9f (sqrt 2 = %.9f), min %.11f vs anchor %.7f: |diff| = %.3e", arg, std::sqrt(2.0),
                   value, anchor, std::abs(value - anchor));
    return o;
}

// Red-to-blue transitions of the profile inside (lo, r): breakpoints where
// a rising segment meets a flat one.
std::vector<double> red_blue_junctions(const Profile& p, double lo, double r) {
    std::vector<double> out;
    const auto& pts = p.breakpoints();
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        if (pts[k].s <= lo || pts[k].s >= r) continue;
        if (p.slope(k - 1) > kTau && p.slope(k) <= kTau) out.push_back(pts[k].s);
    }
    return out;
}

std::string check_rgb(const Profile& p, const Partition& P, double t) {
    const auto& iv = P.intervals;
    for (const auto& x : iv) {
        if (x.color != Color::red && x.color != Color::green && x.color != Color::blue)
            return "interval is not red, green or blue";
        if (!has_color(p, x, x.color == Color::green ? std::optional<double>(t) : std::nullopt))
            return fmt("label %s fails on [%g, %g]", to_string(x.color).c_str(), x.a, x.b);
    }
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].color != Color::red) continue;
        std::size_t j = i + 1;
        double green = 0;
        while (j < iv.size() && iv[j].color == Color::green) green += iv[j++].length();
        if (j > i + 1 && j < iv.size() && iv[j].color == Color::blue && green < t - kTau)
            return fmt("red-green-blue run at %g has green length %g < t", iv[i].b, green);
    }
    for (double x : red_blue_junctions(p, P.left(), P.params.r)) {
        bool inside = std::any_of(iv.begin(), iv.end(), [&](const ColoredInterval& g) {
            return g.color == Color::green && g.a < x - kTau && x + kTau < g.b;
        });
        if (!inside) return fmt("junction %g is not interior to a green interval", x);
    }
    return {};
}

Outcome structural_suite_check() {
    Clock clock;
    const auto& suite = structural_suite();
    int bad_good = 0, bad_general = 0, bad_rgb = 0, teal = 0;
    std::string first;
    auto note = [&](const std::string& s) {
        if (first.empty()) first = s;
    };
    for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& c = suite[i];
        try {
            auto G = good_partition(c.p, 100, kSuiteSMin);
            auto issues = check_partition(c.p, G);
            const auto& iv = G.intervals;
            for (std::size_t k = 0; k < iv.size(); ++k) {
                if (iv[k].color != Color::yellow && iv[k].color != Color::teal && iv[k].color != Color::green)
                    issues.push_back("G1 colour");
                if (iv[k].b > 2 * iv[k].a + kTau) issues.push_back("G2 more than doubling");
                if (k + 1 < iv.size() && !(iv[k + 1].b > 2 * iv[k].a - kTau)) issues.push_back("G3 pair fits");
            }
            if (!issues.empty()) {
                ++bad_good;
                note(fmt("good #%zu: %s", i, issues.front().c_str()));
            }
        } catch (const Error& e) {
            ++bad_good;
            note(fmt("good #%zu threw: %s", i, e.what()));
        }
        try {
            auto P = general_partition(c.p, 100, c.d, c.D, kSuiteSMin);
            auto issues = check_partition(c.p, P);
            const double weak = general_teal_ratio_weak(c.d, c.D);
            for (const auto& x : P.intervals) {
                if (x.color != Color::teal) continue;
                ++teal;
                if (x.a > x.b / 2) issues.push_back(fmt("teal [%g, %g] has r_next > r/2", x.a, x.b));
                if (x.a >= kSuiteSMin && x.a / x.b < weak - 1e-6)
                    issues.push_back(fmt("teal [%g, %g] ratio %g below %g", x.a, x.b, x.a / x.b, weak));
            }
            if (!issues.empty()) {
                ++bad_general;
                note(fmt("general #%zu: %s", i, issues.front().c_str()));
            }
        } catch (const Error& e) {
            ++bad_general;
            note(fmt("general #%zu threw: %s", i, e.what()));
        }
        try {
            double t = projection_min_t(c.d, c.D, 100) + 1.0;
            auto R = rgb_partition(c.q, 100, t, kSuiteSMin);
            auto issue = check_rgb(c.q, R, t);
            auto own = check_partition(c.q, R);
            if (issue.empty() && !own.empty()) issue = own.front();
            if (!issue.empty()) {
                ++bad_rgb;
                note(fmt("rgb #%zu: %s", i, issue.c_str()));
            }
        } catch (const Error& e) {
            ++bad_rgb;
            note(fmt("rgb #%zu threw: %s", i, e.what()));
        }
    }
    double t = clock.seconds();
    Outcome o;
    o.pass = bad_good == 0 && bad_general == 0 && bad_rgb == 0 && t < 30.0;
    o.detail = fmt("%zu profiles: good failures %d, general failures %d (%d teal intervals), rgb failures %d, %.2fs",
                   suite.size(), bad_good, bad_general, teal, bad_rgb, t);
    if (!first.empty()) o.detail += "; first: " + first;
    return o;
}

Outcome soundness_search() {
    Clock clock;
    struct Pair {
        double d, D;
    };
    const Pair pairs[] = {{1.2, 1.6}, {1.1, 1.9}, {1.3, 1.5}};
    bool sound = true;
    double tight_gap = 1e9;
    std::ostringstream os;
    for (auto [d, D] : pairs) {
        double hb = hausdorff_bound(d, D);
        for (auto [n, mode] : {std::pair{4, SearchMode::exhaustive}, std::pair{32, SearchMode::beam}}) {
            SearchConfig cfg;
            cfg.d = d;
            cfg.D = D;
            cfg.grid_n = n;
            cfg.mode = mode;
            auto res = worst_case_search(cfg);
            if (res.worst_value < hb - 1e-3) sound = false;
            if (d == 1.2 && D == 1.6) tight_gap = std::min(tight_gap, std::abs(res.worst_value - 0.975));
            os << fmt(" (%.1f,%.1f) n=%d %s worst %.4f vs %.4f;", d, D, n, res.mode_used.c_str(), res.worst_value,
                      hb);
        }
    }
    double t = clock.seconds();
    Outcome o;
    o.pass = sound && tight_gap <= 0.05 && t < 300.0;
    o.detail = fmt("sound=%s, closest adversary at (1.2,1.6) is %.4f from 0.975, %.1fs;", sound ? "yes" : "no",
                   tight_gap, t) +
               os.str();
    return o;
}

Outcome full_dimension() {
    Clock clock;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double eps = 1e-3;
    int yellow_bad = 0, pin_bad = 0;
    std::string first;
    RandomProfileOptions opt;
    for (int i = 0; i < 200; ++i) {
        double d = 1.3 + 0.6 * U(rng);
        double Dmax = std::min(2.0, 2 * d - 1) - 0.01;
        double D = d + (Dmax - d) * U(rng);
        auto p = random_profile(rng, d, D, opt);
        try {
            auto rep = assemble_all_yellow_distance_bound(p, 100, d, D, eps, kSuiteSMin);
            if (rep.assembled_value < (1 - eps) * 100 || !check_partition(p, *rep.partition).empty()) {
                ++yellow_bad;
                if (first.empty()) first = fmt("all-yellow #%d value %g", i, rep.assembled_value);
            }
        } catch (const Error& e) {
            ++yellow_bad;
            if (first.empty()) first = fmt("all-yellow #%d threw: %s", i, e.what());
        }
    }
    for (int i = 0; i < 200; ++i) {
        double dy = 1.05 + 0.9 * U(rng);
        double emax = alternate_eps_max(dy, regular_pin_constant(dy));
        double ex = emax * (0.1 + 0.8 * U(rng));
        double spread = ex * 0.9 * U(rng);
        double dhi = std::min(2.0, dy + spread);
        auto p = random_profile(rng, dy, dhi, opt);
        try {
            auto rep = regular_pin_distance_bound(p, 100, dy, dy, ex, eps, kSuiteSMin);
            if (rep.assembled_value < (1 - eps) * 100 || !check_partition(p, *rep.partition).empty()) {
                ++pin_bad;
                if (first.empty()) first = fmt("regular-pin #%d value %g", i, rep.assembled_value);
            }
        } catch (const Error& e) {
            ++pin_bad;
            if (first.empty()) first = fmt("regular-pin #%d threw: %s", i, e.what());
        }
    }
    Outcome o;
    o.pass = yellow_bad == 0 && pin_bad == 0;
    o.detail = fmt("all-yellow failures %d/200, regular-pin failures %d/200, %.2fs", yellow_bad, pin_bad,
                   clock.seconds());
    if (!first.empty()) o.detail += "; first: " + first;
    return o;
}

Outcome projection_cases() {
    struct Named {
        const char* name;
        Profile p;
        double t, d, D, s_min;
        int S;
    };
    const std::vector<Named> cases{
        {"line", Profile::line(1.3, 100), 50, 1.3, 1.3, 1.0, 0},
        {"one tooth", Profile({{0, 0}, {40, 48}, {60, 88}, {220.0 / 3, 88}, {100, 120}}), 15, 1.2, 1.8, 10.0, 1},
        {"two teeth",
         Profile({{0, 0}, {20, 24}, {30, 44}, {110.0 / 3, 44}, {60, 72}, {70, 92}, {230.0 / 3, 92}, {100, 120}}),
         12.5, 1.2, 1.8, 10.0, 2},
    };
    bool ok = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        auto rep = assemble_projection_bound(c.p, 100, c.t, c.d, c.D, 1e-3, c.s_min);
        int S = rep.S.value_or(-1);
        bool within = rep.assembled_value <= rep.closed_form_value + 1e-3 * 100;
        bool formula = true;
        if (S >= 2) {
            double fr = eval(c.p, 100);
            formula = std::abs(rep.assembled_value - std::min(rep.B, fr - rep.B - 2 * c.t)) <= 1e-9;
        }
        ok = ok && within && formula && S == c.S;
        os << fmt(" %s: S=%d value %.4f closed %.4f%s;", c.name, S, rep.assembled_value, rep.closed_form_value,
                  formula ? "" : " (S>=2 formula mismatch)");
    }
    // the random rgb profiles of the structural suite, grouped by S
    int by_s[3] = {0, 0, 0}, over = 0;
    for (const auto& c : structural_suite()) {
        double t = projection_min_t(c.d, c.D, 100) + 1.0;
        auto rep = assemble_projection_bound(c.q, 100, t, c.d, c.D, 1e-3, kSuiteSMin);
        by_s[std::min(2, rep.S.value_or(0))]++;
        if (rep.assembled_value > rep.closed_form_value + 1e-3 * 100) ++over;
        if (*rep.S >= 2 &&
            std::abs(rep.assembled_value - std::min(rep.B, eval(c.q, 100) - rep.B - 2 * t)) > 1e-9)
            ++over;
    }
    ok = ok && over == 0;
    Outcome o;
    o.pass = ok;
    o.detail = fmt("random suite S=0/1/>=2: %d/%d/%d, violations %d;", by_s[0], by_s[1], by_s[2], over) + os.str();
    return o;
}

Outcome oracle_dominance() {
    Clock clock;
    int bad = 0;
    double min_margin = 1e9;
    std::string first;
    for (std::size_t i = 0; i < structural_suite().size(); ++i) {
        const auto& c = structural_suite()[i];
        auto rep = assemble_distance_bound(c.p, 100, DimParams::collapsed(c.d, c.D), kSuiteSMin);
        double dp = dp_oracle(c.p, 100, c.d, c.D, std::nullopt, kSuiteSMin);
        min_margin = std::min(min_margin, dp - rep.ledger_sum);
        if (dp < rep.ledger_sum - 1e-9) {
            ++bad;
            if (first.empty()) first = fmt("#%zu dp %.9f < ledger %.9f", i, dp, rep.ledger_sum);
        }
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = fmt("%zu profiles, violations %d, smallest margin %.3e, %.2fs", structural_suite().size(), bad,
                   min_margin, clock.seconds());
    if (!first.empty()) o.detail += "; first: " + first;
    return o;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "closed-form identities", closed_form_identities},
        {2, "equalization consistency", equalization_consistency},
        {3, "full-dimension threshold", threshold},
        {4, "packing number", packing_number},
        {5, "partition structural suite", structural_suite_check},
        {6, "soundness at desk scale", soundness_search},
        {7, "full-dimension constructions", full_dimension},
        {8, "projection case suite", projection_cases},
        {9, "oracle dominance", oracle_dominance},
    };
    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("threw: ") + e.what();
        }
        std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
