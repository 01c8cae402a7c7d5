#pragma once

// Right-to-left root scans over a piecewise-linear profile. Each probe h(s, f(s))
// must be affine in (s, f(s)), so it is linear on every segment and the crossing
// is solved in closed form.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "pindim/profile.hpp"

namespace pindim::detail {

inline std::size_t last_breakpoint_below(const Profile& p, double x) {
    const auto& pts = p.breakpoints();
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const Breakpoint& bp, double v) { return bp.s < v; });
    return it == pts.begin() ? 0 : static_cast<std::size_t>(it - pts.begin()) - 1;
}

// Largest s in [lo, from) with h(s) <= 0, scanning left from `from`.
template <class H>
std::optional<double> last_root_left(const Profile& p, double from, double lo, H h) {
    const auto& pts = p.breakpoints();
    double x1 = from;
    double h1 = h(x1, eval(p, x1));
    std::size_t i = last_breakpoint_below(p, x1);
    while (true) {
        double x0 = std::max(pts[i].s, lo);
        double h0 = h(x0, x0 == pts[i].s ? pts[i].v : eval(p, x0));
        if (h0 <= 0.0) {
            if (h1 <= h0) return x1;
            double w = h1 / (h1 - h0);
            return x1 - std::clamp(w, 0.0, 1.0) * (x1 - x0);
        }
        if (x0 <= lo || i == 0) return std::nullopt;
        x1 = x0;
        h1 = h0;
        --i;
    }
}

// Smallest s in (from, hi] with h(s) <= 0, scanning right from `from`.
template <class H>
std::optional<double> first_root_right(const Profile& p, double from, double hi, H h) {
    const auto& pts = p.breakpoints();
    double x0 = from;
    double h0 = h(x0, eval(p, x0));
    auto it = std::upper_bound(pts.begin(), pts.end(), x0,
                               [](double v, const Breakpoint& bp) { return v < bp.s; });
    std::size_t i = static_cast<std::size_t>(it - pts.begin());
    while (i < pts.size()) {
        double x1 = std::min(pts[i].s, hi);
        double h1 = h(x1, x1 == pts[i].s ? pts[i].v : eval(p, x1));
        if (h1 <= 0.0) {
            if (h0 <= h1) return x0;
            double w = h0 / (h0 - h1);
            return x0 + std::clamp(w, 0.0, 1.0) * (x1 - x0);
        }
        if (x1 >= hi) return std::nullopt;
        x0 = x1;
        h0 = h1;
        ++i;
    }
    return std::nullopt;
}

using Span = std::pair<double, double>;

// Points on one side of s that sit on level ell (within tol) and are reachable
// from s without dipping below the level. dir = -1 scans left, +1 right.
inline std::vector<Span> level_set_side(const Profile& p, double s, double ell, double tol, int dir) {
    std::vector<Span> out;
    const auto& pts = p.breakpoints();
    double x1 = s;
    double g1 = excess(p, s);
    if (g1 < ell - tol) return out;
    auto add = [&](double u, double v) {
        if (u > v) std::swap(u, v);
        out.emplace_back(u, v);
    };
    auto solve = [](double xa, double ga, double xb, double gb, double level) {
        if (gb == ga) return xa;
        double w = (level - ga) / (gb - ga);
        return xa + std::clamp(w, 0.0, 1.0) * (xb - xa);
    };
    if (std::abs(g1 - ell) <= tol) add(s, s);
    std::size_t i;
    if (dir < 0) {
        auto it = std::lower_bound(pts.begin(), pts.end(), s,
                                   [](const Breakpoint& bp, double v) { return bp.s < v; });
        if (it == pts.begin()) return out;
        i = static_cast<std::size_t>(it - pts.begin()) - 1;
    } else {
        auto it = std::upper_bound(pts.begin(), pts.end(), s,
                                   [](double v, const Breakpoint& bp) { return v < bp.s; });
        if (it == pts.end()) return out;
        i = static_cast<std::size_t>(it - pts.begin());
    }
    while (true) {
        double x0 = pts[i].s;
        double g0 = pts[i].v - pts[i].s;
        bool stop = g0 < ell - tol;
        double xs = stop ? solve(x1, g1, x0, g0, ell - tol) : x0;
        double gs = stop ? ell - tol : g0;
        bool near1 = g1 <= ell + tol;
        bool near0 = gs <= ell + tol;
        if (near1 && near0) {
            add(xs, x1);
        } else if (near1) {
            add(solve(x1, g1, xs, gs, ell + tol), x1);
        } else if (near0) {
            add(xs, solve(x1, g1, xs, gs, ell + tol));
        }
        if (stop) break;
        x1 = x0;
        g1 = g0;
        if (dir < 0) {
            if (i == 0) break;
            --i;
        } else {
            if (++i >= pts.size()) break;
        }
    }
    return out;
}

}  // namespace pindim::detail
