#include "pindim/classify.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "pindim/errors.hpp"
#include "scan.hpp"

namespace pindim {

namespace {

void require_order(double a, double b) {
    if (a > b + kTau) throw ArgumentError("interval requires a <= b");
}

template <class F>
void for_interior_breakpoints(const Profile& p, double a, double b, F f) {
    const auto& pts = p.breakpoints();
    auto it = std::upper_bound(pts.begin(), pts.end(), a,
                               [](double v, const Breakpoint& bp) { return v < bp.s; });
    for (; it != pts.end() && it->s < b; ++it) f(*it);
}

template <class F>
void for_overlapping_slopes(const Profile& p, double a, double b, F f) {
    const auto& pts = p.breakpoints();
    if (is_degenerate(a, b)) {
        f(p.slope(p.segment_at(a)));
        return;
    }
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i].s < b && pts[i + 1].s > a) f(p.slope(i));
    }
}

}  // namespace

bool is_yellow(const Profile& p, double a, double b) {
    require_order(a, b);
    if (is_degenerate(a, b)) return true;
    const double ga = excess(p, a);
    bool ok = excess(p, b) >= ga - kTau;
    for_interior_breakpoints(p, a, b, [&](const Breakpoint& bp) {
        if (bp.v - bp.s < ga - kTau) ok = false;
    });
    return ok;
}

bool is_teal(const Profile& p, double a, double b) {
    require_order(a, b);
    if (is_degenerate(a, b)) return true;
    const double gb = excess(p, b);
    bool ok = excess(p, a) >= gb - kTau;
    for_interior_breakpoints(p, a, b, [&](const Breakpoint& bp) {
        if (bp.v - bp.s < gb - kTau) ok = false;
    });
    return ok;
}

bool is_green(const Profile& p, double a, double b, std::optional<double> cap) {
    require_order(a, b);
    if (cap && b - a > *cap + kTau) return false;
    return is_yellow(p, a, b) && is_teal(p, a, b);
}

bool is_red(const Profile& p, double a, double b) {
    require_order(a, b);
    eval(p, a);
    eval(p, b);
    bool ok = true;
    for_overlapping_slopes(p, a, b, [&](double m) { ok = ok && m > kTau; });
    return ok;
}

bool is_blue(const Profile& p, double a, double b) {
    require_order(a, b);
    eval(p, a);
    eval(p, b);
    bool ok = true;
    for_overlapping_slopes(p, a, b, [&](double m) { ok = ok && m <= kTau; });
    return ok;
}

bool has_color(const Profile& p, const ColoredInterval& iv, std::optional<double> cap) {
    switch (iv.color) {
        case Color::yellow: return is_yellow(p, iv.a, iv.b);
        case Color::teal: return is_teal(p, iv.a, iv.b);
        case Color::green: return is_green(p, iv.a, iv.b, cap);
        case Color::red: return is_red(p, iv.a, iv.b);
        case Color::blue: return is_blue(p, iv.a, iv.b);
    }
    return false;
}

ColoredInterval make_interval(const Profile& p, double a, double b, Color c) {
    return {a, b, c, growth(p, a, b)};
}

std::optional<ColoredInterval> maximal_green_at(const Profile& p, double s, double cap) {
    if (!(cap > 0.0)) throw ArgumentError("maximal_green_at needs a positive cap");
    eval(p, s);
    const auto& pts = p.breakpoints();
    const double tol = kTau / 4.0;
    const double gs = excess(p, s);

    std::vector<double> levels{gs};
    for (const auto& bp : pts) {
        double g = bp.v - bp.s;
        if (g <= gs + tol) levels.push_back(g);
    }
    // Levels at which the excursion around s is exactly cap wide.
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i].s > s) break;
        double mi = p.slope(i) - 1.0;
        if (std::abs(mi) < 1e-12) continue;
        for (std::size_t j = i; j + 1 < pts.size(); ++j) {
            if (pts[j + 1].s < s) continue;
            double mj = p.slope(j) - 1.0;
            if (std::abs(mj) < 1e-12) continue;
            double k = 1.0 / mj - 1.0 / mi;
            if (std::abs(k) < 1e-12) continue;
            double gi = pts[i].v - pts[i].s;
            double gj = pts[j].v - pts[j].s;
            double ell = (cap - pts[j].s + gj / mj + pts[i].s - gi / mi) / k;
            if (ell <= gs + tol) levels.push_back(ell);
        }
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    std::optional<ColoredInterval> best;
    for (double ell : levels) {
        auto left = detail::level_set_side(p, s, ell, tol, -1);
        auto right = detail::level_set_side(p, s, ell, tol, +1);
        for (const auto& [a1, a2] : left) {
            for (const auto& [b1, b2] : right) {
                double a = a1, b = b2;
                if (b - a > cap) {
                    if (b1 - a2 > cap) continue;
                    a = std::max(a1, b1 - cap);
                    if (a > std::min(a2, b2 - cap)) continue;
                    b = a + cap;
                }
                if (is_degenerate(a, b)) continue;
                if (best && b - a <= best->length()) continue;
                if (!is_green(p, a, b, cap)) continue;
                best = make_interval(p, a, b, Color::green);
            }
        }
    }
    return best;
}

std::string to_string(Color c) {
    switch (c) {
        case Color::yellow: return "yellow";
        case Color::teal: return "teal";
        case Color::green: return "green";
        case Color::red: return "red";
        case Color::blue: return "blue";
    }
    return "unknown";
}

Color color_from_string(const std::string& name) {
    if (name == "yellow") return Color::yellow;
    if (name == "teal") return Color::teal;
    if (name == "green") return Color::green;
    if (name == "red") return Color::red;
    if (name == "blue") return Color::blue;
    throw FormatError("unknown color '" + name + "'");
}

}  // namespace pindim
