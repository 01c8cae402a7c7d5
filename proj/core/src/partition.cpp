#include "pindim/partition.hpp"

#include <algorithm>
#include <cmath>

#include "pindim/errors.hpp"
#include "scan.hpp"
#include "util.hpp"

namespace pindim {

namespace {

using detail::fmt;
using detail::require_envelope;
using detail::resolve_s_min;
using detail::Span;

constexpr int kMaxSteps = 100000;

// Rightmost point of [lo, hi] (breakpoints and ends) whose excess is within
// tol of the minimum there.
double rightmost_minimizer(const Profile& p, double lo, double hi, double tol) {
    std::vector<std::pair<double, double>> cand{{lo, excess(p, lo)}};
    for (const auto& bp : p.breakpoints()) {
        if (bp.s > lo && bp.s < hi) cand.emplace_back(bp.s, bp.v - bp.s);
    }
    cand.emplace_back(hi, excess(p, hi));
    double m = cand.front().second;
    for (const auto& c : cand) m = std::min(m, c.second);
    double best = lo;
    for (const auto& c : cand) {
        if (c.second <= m + tol) best = c.first;
    }
    return best;
}

template <class Rule>
void merge_pass(const Profile& p, std::vector<ColoredInterval>& ivs, Rule rule) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = ivs.size(); i-- > 1;) {
            if (auto c = rule(ivs[i - 1], ivs[i])) {
                ivs[i - 1] = make_interval(p, ivs[i - 1].a, ivs[i].b, *c);
                ivs.erase(ivs.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            }
        }
    }
}

void upgrade_green(const Profile& p, std::vector<ColoredInterval>& ivs, std::optional<double> cap) {
    for (auto& iv : ivs) {
        if ((iv.color == Color::yellow || iv.color == Color::teal) && is_green(p, iv.a, iv.b, cap)) {
            iv.color = Color::green;
        }
    }
}

// Good cover of [lo, hi], ascending, before green relabelling.
std::vector<ColoredInterval> good_cover(const Profile& p, double lo, double hi) {
    std::vector<ColoredInterval> out;
    double b = hi;
    for (int step = 0; b > lo + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("good partition did not terminate");
        double w = b / 2.0;
        double a = rightmost_minimizer(p, w, b, kTau / 8.0);
        if (a < b - kTau) {
            out.push_back(make_interval(p, a, b, Color::yellow));
            b = a;
        } else {
            out.push_back(make_interval(p, w, b, Color::teal));
            b = w;
        }
    }
    std::reverse(out.begin(), out.end());
    merge_pass(p, out, [](const ColoredInterval& x, const ColoredInterval& y) -> std::optional<Color> {
        if (x.color == y.color && y.b <= 2.0 * x.a + kTau) return x.color;
        return std::nullopt;
    });
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (!(out[i + 1].b > 2.0 * out[i].a - kTau)) {
            throw InternalError("good partition merge left consecutive pair within doubling; suffix starts at " +
                                fmt(out[i].a, out[i + 1].b));
        }
    }
    return out;
}

// Points x of [floor, b] with G(x) <= min G on [x, b] + tol, as ascending spans.
std::vector<Span> anchored_min_set(const Profile& p, double b, double floor, double tol) {
    const auto& pts = p.breakpoints();
    std::vector<Span> out;
    auto add = [&](double u, double v) {
        if (!out.empty() && out.back().first <= v + kTau) {
            out.back().first = std::min(out.back().first, u);
        } else {
            out.emplace_back(u, v);
        }
    };
    auto solve = [](double xa, double ga, double xb, double gb, double level) {
        if (gb == ga) return xa;
        double w = (level - ga) / (gb - ga);
        return xa + std::clamp(w, 0.0, 1.0) * (xb - xa);
    };
    double x1 = b;
    double g1 = excess(p, b);
    double mu = g1;
    add(b, b);
    std::size_t i = detail::last_breakpoint_below(p, b);
    while (x1 > floor) {
        double x0 = std::max(pts[i].s, floor);
        double g0 = x0 == pts[i].s ? pts[i].v - pts[i].s : excess(p, x0);
        if (x0 < x1) {
            // Tolerance decides membership of whole pieces; crossings are solved
            // at the exact level so the set does not creep by tol/slope.
            if (g0 <= g1) {
                if (g0 <= mu + tol) add(x0, g1 <= mu + tol ? x1 : solve(x0, g0, x1, g1, mu));
            } else if (g1 <= mu + tol) {
                double lvl = std::min(g1, mu);
                add(g0 <= lvl + tol ? x0 : solve(x0, g0, x1, g1, lvl), x1);
            }
        }
        mu = std::min({mu, g0, g1});
        if (x0 <= floor || i == 0) break;
        x1 = x0;
        g1 = g0;
        --i;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// Greedy doubling jumps through the anchored minimum set; stops once at or below `stop`.
double reach(const Profile& p, double b, double floor, double stop) {
    auto M = anchored_min_set(p, b, floor, kTau / 2.0);
    double x = b;
    for (int step = 0; x > stop + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("yellow extension did not terminate");
        double target = std::max(x / 2.0, floor);
        std::optional<double> next;
        for (const auto& [u, v] : M) {
            if (v < target) continue;
            double c = std::max(u, target);
            if (c < x - kTau) next = c;
            break;
        }
        if (!next) break;
        x = *next;
    }
    return x;
}

// A^-(x), B^-(x): nearest points left/right of x inside [lo, hi] where the excess drops below G(x).
std::optional<double> drop_left(const Profile& p, double x, double lo) {
    std::size_t seg = p.segment_at(x);
    if (p.slope(seg) - 1.0 > 0.0) return x;
    double gx = excess(p, x);
    return detail::last_root_left(p, x, lo, [gx](double s, double v) { return (v - s) - gx; });
}

std::optional<double> drop_right(const Profile& p, double x, double hi) {
    std::size_t seg = p.segment_at(x);
    if (p.slope(seg) - 1.0 < 0.0) return x;
    double gx = excess(p, x);
    return detail::first_root_right(p, x, hi, [gx](double s, double v) { return (v - s) - gx; });
}

// Union of green intervals of length <= t inside [lo, hi], as disjoint ascending spans.
std::vector<Span> green_union(const Profile& p, double lo, double hi, double t) {
    const auto& pts = p.breakpoints();
    std::vector<double> xs{lo, hi};
    std::vector<double> levels{excess(p, lo), excess(p, hi)};
    for (const auto& bp : pts) {
        if (bp.s > lo && bp.s < hi) {
            xs.push_back(bp.s);
            levels.push_back(bp.v - bp.s);
        }
    }
    std::vector<double> knots = xs;
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        double x0 = knots[k], x1 = knots[k + 1];
        double g0 = excess(p, x0), g1 = excess(p, x1);
        if (g0 == g1) continue;
        for (double ell : levels) {
            if ((ell - g0) * (ell - g1) < 0.0) xs.push_back(x0 + (ell - g0) / (g1 - g0) * (x1 - x0));
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::vector<Span> raw;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        double x0 = xs[k], x1 = xs[k + 1];
        if (x1 - x0 <= kTau) continue;
        double mid = 0.5 * (x0 + x1);
        double m = p.slope(p.segment_at(mid)) - 1.0;
        if (std::abs(m) <= 1e-12) {
            raw.emplace_back(x0, x1);
            continue;
        }
        // w(x) = B^-(x) - A^-(x) is affine on (x0, x1).
        double xa = x0 + (x1 - x0) / 3.0, xb = x0 + 2.0 * (x1 - x0) / 3.0;
        auto la = drop_left(p, xa, lo), ra = drop_right(p, xa, hi);
        auto lb = drop_left(p, xb, lo), rb = drop_right(p, xb, hi);
        if (!la || !ra || !lb || !rb) continue;
        double wa = *ra - *la, wb = *rb - *lb;
        double slope = (wb - wa) / (xb - xa);
        double lim = t;
        double u = x0, v = x1;
        if (std::abs(slope) < 1e-15) {
            if (wa > lim) continue;
        } else {
            double root = xa + (lim - wa) / slope;
            if (slope > 0) v = std::min(v, root);
            else u = std::max(u, root);
        }
        if (v - u > kTau) raw.emplace_back(u, v);
    }
    std::vector<Span> out;
    for (const auto& s : raw) {
        if (!out.empty() && s.first <= out.back().second + kTau) {
            out.back().second = std::max(out.back().second, s.second);
        } else {
            out.push_back(s);
        }
    }
    return out;
}

// Consecutive green tiles of length <= t across one component [u, v] of the green union.
void tile_component(const Profile& p, double u, double v, double t, std::vector<ColoredInterval>& out) {
    const double tol = kTau / 4.0;
    double x = u;
    for (int step = 0; x < v - kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("green tiling did not terminate");
        double limit = std::min(x + t + kTau / 2.0, v);
        double level = excess(p, x);
        double q = x;
        for (const auto& [b1, b2] : detail::level_set_side(p, x, level, tol, +1)) {
            if (b1 <= limit + tol) q = std::max(q, std::min(b2, limit));
        }
        if (q <= x + kTau) throw InternalError("green tiling stalled at s=" + fmt(x));
        if (v - q <= kTau) q = v;
        out.push_back(make_interval(p, x, q, Color::green));
        x = q;
    }
}

void fill_gap(const Profile& p, double a, double b, std::vector<ColoredInterval>& out) {
    if (b - a <= kTau) return;
    const auto& pts = p.breakpoints();
    double x = a;
    while (x < b - kTau) {
        std::size_t seg = p.segment_at(x + kTau / 2.0);
        double y = std::min(pts[seg + 1].s, b);
        if (b - y <= kTau) y = b;
        Color c = p.slope(seg) > kTau ? Color::red : Color::blue;
        if (!out.empty() && out.back().color == c && std::abs(out.back().b - x) <= kTau) {
            out.back() = make_interval(p, out.back().a, y, c);
        } else {
            out.push_back(make_interval(p, x, y, c));
        }
        x = y;
    }
}

bool is_teal_step(const ColoredInterval& iv) { return iv.color == Color::teal || iv.color == Color::green; }

}  // namespace

Partition good_partition(const Profile& p, double r, std::optional<double> s_min) {
    double lo = resolve_s_min(p, r, s_min);
    Partition P{PartitionKind::good, {}, {}};
    P.params.r = r;
    P.params.s_min = lo;
    P.intervals = good_cover(p, lo, r);
    upgrade_green(p, P.intervals, std::nullopt);
    return P;
}

Partition admissible_partition(const Profile& p, double a, double b, double t, int M) {
    if (!(a < b)) throw ArgumentError("admissible partition needs a < b");
    if (a < 0.0) throw DomainError("a must be nonnegative");
    if (b > p.domain_end() + kTau) throw DomainError("b = " + fmt(b) + " exceeds the profile domain");
    if (!(t > 0.0) || M < 1) throw ArgumentError("admissible partition needs t > 0 and M >= 1");
    if (t * M < (b - a) - kTau) throw PreconditionError("t < (b-a)/M: " + std::to_string(M) + " intervals of length " + fmt(t) + " cannot cover " + fmt(a, b));
    std::vector<ColoredInterval> out;
    double x = b;
    for (int step = 0; x > a + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("admissible partition did not terminate");
        double lo = std::max(x - t, a);
        double m = rightmost_minimizer(p, lo, x, kTau / 8.0);
        if (m < x - kTau) {
            out.push_back(make_interval(p, m, x, Color::yellow));
            x = m;
        } else {
            out.push_back(make_interval(p, lo, x, Color::teal));
            x = lo;
        }
    }
    std::reverse(out.begin(), out.end());
    merge_pass(p, out, [t](const ColoredInterval& x, const ColoredInterval& y) -> std::optional<Color> {
        if (x.color == y.color && y.b - x.a <= t + kTau) return x.color;
        return std::nullopt;
    });
    if (out.size() > static_cast<std::size_t>(M)) {
        auto shortest = std::min_element(out.begin(), out.end(), [](const auto& u, const auto& v) {
            return u.length() < v.length();
        });
        throw ConstructionError("admissible partition needs " + std::to_string(out.size()) + " > M = " +
                                std::to_string(M) + " intervals; bottleneck interval " +
                                fmt(shortest->a, shortest->b) + " (" + to_string(shortest->color) + ")");
    }
    upgrade_green(p, out, t);
    Partition P{PartitionKind::admissible, {}, std::move(out)};
    P.params.r = b;
    P.params.s_min = a;
    P.params.t = t;
    P.params.M = M;
    return P;
}

Partition rgb_partition(const Profile& p, double r, double t, std::optional<double> s_min) {
    double lo = resolve_s_min(p, r, s_min);
    if (!(t > 0.0)) throw ArgumentError("rgb partition needs t > 0");
    if (!(t < r)) throw PreconditionError("rgb partition needs t < r");

    std::vector<ColoredInterval> out;
    double x = lo;
    for (const auto& [u, v] : green_union(p, lo, r, t)) {
        fill_gap(p, x, u, out);
        tile_component(p, u, v, t, out);
        x = v;
    }
    fill_gap(p, x, r, out);

    for (const auto& iv : out) {
        if (iv.color == Color::green && !is_green(p, iv.a, iv.b, t)) {
            throw InternalError("green tile " + fmt(iv.a, iv.b) + " fails the green predicate");
        }
    }
    const auto& pts = p.breakpoints();
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        if (pts[k].s <= lo || pts[k].s >= r) continue;
        if (!(p.slope(k - 1) > kTau && p.slope(k) <= kTau)) continue;
        bool covered = std::any_of(out.begin(), out.end(), [&](const ColoredInterval& iv) {
            return iv.color == Color::green && iv.a < pts[k].s && pts[k].s < iv.b;
        });
        if (!covered) {
            throw ConstructionError("red-to-blue junction at s=" + fmt(pts[k].s) + " is not interior to a green interval");
        }
    }
    Partition P{PartitionKind::rgb, {}, std::move(out)};
    P.params.r = r;
    P.params.s_min = lo;
    P.params.t = t;
    for (std::size_t i = 0; i < P.intervals.size(); ++i) {
        if (P.intervals[i].color != Color::red) continue;
        std::size_t j = i + 1;
        double total = 0.0;
        while (j < P.intervals.size() && P.intervals[j].color == Color::green) total += P.intervals[j++].length();
        if (j > i + 1 && j < P.intervals.size() && P.intervals[j].color == Color::blue && total < t - kTau) {
            throw ConstructionError("red-green-blue run at " + fmt(P.intervals[i + 1].a, P.intervals[j - 1].b) +
                                    " has green length " + fmt(total) + " < t");
        }
    }
    return P;
}

int count_rgb_sequences(const Partition& P) {
    if (P.kind != PartitionKind::rgb) throw ArgumentError("count_rgb_sequences needs an rgb partition");
    const auto& iv = P.intervals;
    int count = 0;
    for (std::size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].color != Color::red) continue;
        std::size_t j = i + 1;
        while (j < iv.size() && iv[j].color == Color::green) ++j;
        if (j > i + 1 && j < iv.size() && iv[j].color == Color::blue) {
            ++count;
            i = j;
        }
    }
    return count;
}

Partition all_yellow_partition(const Profile& p, double r, double d, double D, double eps,
                               std::optional<double> s_min) {
    double lo = resolve_s_min(p, r, s_min);
    if (eps < 0.0) throw ArgumentError("eps must be nonnegative");
    double dl = d - eps / 4.0, Du = D + eps / 4.0;
    if (!(Du < 2.0 * dl - 1.0)) {
        throw PreconditionError("hypothesis D < 2d - 1 violated: D+eps/4 = " + fmt(Du) + ", 2(d-eps/4)-1 = " +
                                fmt(2.0 * dl - 1.0));
    }
    require_envelope(p, r, dl, Du, std::max(eps * r / 4.0, lo), "envelope (d-eps/4, D+eps/4)");

    double stop = std::max(eps * r / 2.0, lo);
    std::vector<ColoredInterval> chain;
    double x = r;
    for (int step = 0; x > stop + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("all-yellow construction did not terminate");
        double half = x / 2.0;
        double level = excess(p, half);
        auto y = detail::last_root_left(p, x, half, [level](double s, double v) { return (v - s) - level; });
        if (!y) throw InternalError("no crossing of the slope-1 line from s=" + fmt(half));
        if (*y >= x - kTau) throw InternalError("all-yellow construction stalled at s=" + fmt(x));
        chain.push_back(make_interval(p, *y, x, Color::yellow));
        x = *y;
    }
    std::reverse(chain.begin(), chain.end());
    merge_pass(p, chain, [](const ColoredInterval& u, const ColoredInterval& v) -> std::optional<Color> {
        if (v.b <= 2.0 * u.a + kTau) return Color::yellow;
        return std::nullopt;
    });
    std::vector<ColoredInterval> out;
    if (x > lo + kTau) {
        out = good_cover(p, lo, x);
        upgrade_green(p, out, std::nullopt);
    }
    out.insert(out.end(), chain.begin(), chain.end());
    Partition P{PartitionKind::all_yellow, {}, std::move(out)};
    P.params.r = r;
    P.params.s_min = lo;
    P.params.d = d;
    P.params.D = D;
    P.params.eps = eps;
    return P;
}

Partition general_partition(const Profile& p, double r, double d, double D, std::optional<double> s_min) {
    double lo = resolve_s_min(p, r, s_min);
    if (!(d >= 1.0 && d <= D && D <= 2.0)) throw PreconditionError("general partition needs 1 <= d <= D <= 2");
    require_envelope(p, r, d, D, lo, "envelope (d, D)");

    std::vector<ColoredInterval> out;
    double x = r;
    for (int step = 0; x > lo + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("general partition did not terminate");
        double a = reach(p, x, 0.0, lo);
        if (a < x - kTau) {
            out.push_back(make_interval(p, a, x, Color::yellow));
            x = a;
            continue;
        }
        const double gx = excess(p, x), fx = eval(p, x);
        auto t_prime = detail::last_root_left(p, x, 0.0, [gx](double s, double v) { return (v - s) - gx; });
        auto t_line = detail::last_root_left(p, x, 0.0, [=](double s, double v) {
            return v - (fx - d / D * x + (d + 1.0 - D) / D * s);
        });
        if (!t_prime && !t_line) {
            throw EnvelopeViolation("teal endpoint equation has no solution below s=" + fmt(x));
        }
        double y = std::max(t_prime.value_or(0.0), t_line.value_or(0.0));
        if (y >= x - kTau) throw InternalError("teal step did not advance at s=" + fmt(x));
        out.push_back(make_interval(p, y, x, is_yellow(p, y, x) ? Color::green : Color::teal));
        x = y;
    }
    std::reverse(out.begin(), out.end());
    Partition P{PartitionKind::general, {}, std::move(out)};
    P.params.r = r;
    P.params.s_min = lo;
    P.params.d = d;
    P.params.D = D;
    P.params.yellow_extension = "per-piece";
    return P;
}

Partition regular_pin_partition(const Profile& p, double r, double d_y, double eps, std::optional<double> s_min) {
    double lo = resolve_s_min(p, r, s_min);
    if (!(d_y > 1.0) || eps < 0.0) throw PreconditionError("regular-pin partition needs d_y > 1 and eps >= 0");
    require_envelope(p, r, d_y - eps, 2.0 + eps, std::max((d_y - 1.0) / 8.0 * r, lo), "envelope (d_y-eps, 2+eps)");

    std::vector<ColoredInterval> out;
    double x = r;
    for (int step = 0; x > lo + kTau; ++step) {
        if (step > kMaxSteps) throw InternalError("regular-pin partition did not terminate");
        double a = reach(p, x, 0.0, lo);
        if (a < x - kTau) {
            out.push_back(make_interval(p, a, x, Color::yellow));
            x = a;
            continue;
        }
        const double level = excess(p, x);
        auto y = detail::last_root_left(p, x, 0.0, [level](double s, double v) {
            return (v - s) - level + kTau / 4.0;
        });
        if (!y) throw EnvelopeViolation("no green crossing left of s=" + fmt(x));
        if (*y >= x - kTau) throw InternalError("green step did not advance at s=" + fmt(x));
        out.push_back(make_interval(p, *y, x, Color::green));
        x = *y;
    }
    std::reverse(out.begin(), out.end());
    merge_pass(p, out, [](const ColoredInterval& u, const ColoredInterval& v) -> std::optional<Color> {
        if (v.b > 2.0 * u.a) return std::nullopt;
        return u.color == Color::green && v.color == Color::green ? Color::green : Color::yellow;
    });
    Partition P{PartitionKind::regular_pin, {}, std::move(out)};
    P.params.r = r;
    P.params.s_min = lo;
    P.params.d = d_y;
    P.params.eps = eps;
    P.params.yellow_extension = "per-piece";
    return P;
}

double yellow_reach(const Profile& p, double b, double floor) {
    eval(p, b);
    if (floor < 0.0 || floor > b) throw ArgumentError("yellow_reach needs 0 <= floor <= b");
    return reach(p, b, floor, floor);
}

std::vector<GreenBlock> green_blocks(const Partition& P) {
    std::vector<GreenBlock> out;
    bool open = false;
    for (const auto& iv : P.intervals) {
        if (iv.color == Color::green) {
            if (open) out.back().b = iv.b;
            else out.push_back({iv.a, iv.b});
            open = true;
        } else {
            open = false;
        }
    }
    return out;
}

double general_teal_ratio(double d, double D) { return d * (D - 1.0) / (D * D + D - d - 1.0); }

double general_teal_ratio_weak(double d, double D) { return d * (2.0 - D) / (2.0 + d * (2.0 - D)); }

double regular_pin_green_ratio(double d_y, double eps) { return (d_y - 1.0 - eps) / (3.0 + eps); }

std::vector<std::string> check_partition(const Profile& p, const Partition& P) {
    std::vector<std::string> issues;
    const auto& iv = P.intervals;
    const double r = P.params.r, lo = P.params.s_min;
    if (iv.empty()) {
        issues.push_back("partition is empty");
        return issues;
    }
    std::optional<double> cap;
    if (P.kind == PartitionKind::admissible || P.kind == PartitionKind::rgb) cap = P.params.t;
    if (iv.front().a > lo + kTau) issues.push_back("cover starts at " + fmt(iv.front().a) + " above s_min");
    if (std::abs(iv.back().b - r) > kTau) issues.push_back("cover ends at " + fmt(iv.back().b) + " instead of r");
    for (std::size_t i = 0; i < iv.size(); ++i) {
        const auto& x = iv[i];
        std::string at = fmt(x.a, x.b);
        if (!(x.b - x.a > kTau)) issues.push_back("degenerate interval " + at);
        if (i + 1 < iv.size() && std::abs(x.b - iv[i + 1].a) > kTau) issues.push_back("gap or overlap after " + at);
        if (std::abs(x.growth - growth(p, x.a, x.b)) > 1e-9 * std::max(1.0, r)) issues.push_back("stale growth on " + at);
        if (!has_color(p, x, cap)) issues.push_back(at + " is not " + to_string(x.color));
    }
    auto color_in = [](Color c, std::initializer_list<Color> allowed) {
        return std::find(allowed.begin(), allowed.end(), c) != allowed.end();
    };
    switch (P.kind) {
        case PartitionKind::good:
            for (std::size_t i = 0; i < iv.size(); ++i) {
                if (!color_in(iv[i].color, {Color::yellow, Color::teal, Color::green})) issues.push_back("G1 fails");
                if (iv[i].b > 2.0 * iv[i].a + kTau) issues.push_back("G2 fails on " + fmt(iv[i].a, iv[i].b));
                if (i + 1 < iv.size() && !(iv[i + 1].b > 2.0 * iv[i].a - kTau))
                    issues.push_back("G3 fails at " + fmt(iv[i].a, iv[i + 1].b));
            }
            break;
        case PartitionKind::admissible:
            if (P.params.M && iv.size() > static_cast<std::size_t>(*P.params.M)) issues.push_back("A1 fails");
            for (const auto& x : iv) {
                if (!color_in(x.color, {Color::yellow, Color::teal, Color::green})) issues.push_back("A2 fails");
                if (x.length() > *P.params.t + kTau) issues.push_back("A3 fails on " + fmt(x.a, x.b));
            }
            break;
        case PartitionKind::rgb: {
            const double t = P.params.t.value_or(0.0);
            for (std::size_t i = 0; i < iv.size(); ++i) {
                if (!color_in(iv[i].color, {Color::red, Color::blue, Color::green})) issues.push_back("non rgb colour");
                if (iv[i].color != Color::red) continue;
                std::size_t j = i + 1;
                double total = 0.0;
                while (j < iv.size() && iv[j].color == Color::green) total += iv[j++].length();
                if (j > i + 1 && j < iv.size() && iv[j].color == Color::blue && total < t - kTau)
                    issues.push_back("short green run before " + fmt(iv[j].a));
            }
            const auto& pts = p.breakpoints();
            for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
                if (pts[k].s <= lo || pts[k].s >= r) continue;
                if (!(p.slope(k - 1) > kTau && p.slope(k) <= kTau)) continue;
                bool ok = std::any_of(iv.begin(), iv.end(), [&](const ColoredInterval& x) {
                    return x.color == Color::green && x.a < pts[k].s && pts[k].s < x.b;
                });
                if (!ok) issues.push_back("uncovered red-to-blue junction at " + fmt(pts[k].s));
            }
            break;
        }
        case PartitionKind::all_yellow: {
            double stop = std::max(P.params.eps.value_or(0.0) * r / 2.0, lo);
            for (const auto& x : iv) {
                if (x.a < stop - kTau) continue;
                if (x.color != Color::yellow) issues.push_back("non-yellow interval " + fmt(x.a, x.b));
                if (x.b > 2.0 * x.a + kTau) issues.push_back("more than doubling " + fmt(x.a, x.b));
            }
            break;
        }
        case PartitionKind::general: {
            const double d = P.params.d.value_or(1.0), D = P.params.D.value_or(2.0);
            for (const auto& x : iv) {
                if (!color_in(x.color, {Color::yellow, Color::teal, Color::green})) issues.push_back("bad colour");
                if (!is_teal_step(x)) continue;
                if (x.a > x.b / 2.0 + kTau) issues.push_back("teal step keeps more than half at " + fmt(x.a, x.b));
                if (x.a < lo) continue;
                if (x.a < general_teal_ratio_weak(d, D) * x.b - 1e-6 * x.b)
                    issues.push_back("teal left end below weak ratio at " + fmt(x.a, x.b));
                if (x.a < (general_teal_ratio(d, D) - 1e-3) * x.b)
                    issues.push_back("teal left end below ratio at " + fmt(x.a, x.b));
            }
            break;
        }
        case PartitionKind::regular_pin: {
            const double dy = P.params.d.value_or(1.0), e = P.params.eps.value_or(0.0);
            const double window = (dy - 1.0) / 8.0 * r;
            for (std::size_t i = 0; i < iv.size(); ++i) {
                const auto& x = iv[i];
                if (!color_in(x.color, {Color::yellow, Color::green})) issues.push_back("strictly teal interval");
                if (x.color == Color::green && x.a >= window && x.a < regular_pin_green_ratio(dy, e) * x.b - kTau)
                    issues.push_back("green left end below ratio at " + fmt(x.a, x.b));
                if (i + 1 < iv.size() && !(iv[i + 1].b > 2.0 * x.a - kTau))
                    issues.push_back("consecutive pair within doubling at " + fmt(x.a, iv[i + 1].b));
            }
            break;
        }
    }
    return issues;
}

std::string to_string(PartitionKind k) {
    switch (k) {
        case PartitionKind::good: return "good";
        case PartitionKind::admissible: return "admissible";
        case PartitionKind::rgb: return "rgb";
        case PartitionKind::all_yellow: return "all_yellow";
        case PartitionKind::general: return "general";
        case PartitionKind::regular_pin: return "regular_pin";
    }
    return "unknown";
}

PartitionKind partition_kind_from_string(const std::string& name) {
    if (name == "good") return PartitionKind::good;
    if (name == "admissible") return PartitionKind::admissible;
    if (name == "rgb") return PartitionKind::rgb;
    if (name == "all_yellow") return PartitionKind::all_yellow;
    if (name == "general") return PartitionKind::general;
    if (name == "regular_pin") return PartitionKind::regular_pin;
    throw FormatError("unknown partition kind '" + name + "'");
}

}  // namespace pindim
