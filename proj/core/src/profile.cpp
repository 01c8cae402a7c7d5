#include "pindim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "pindim/errors.hpp"

namespace pindim {

Profile::Profile(std::vector<Breakpoint> points, double slope_cap)
    : points_(std::move(points)), slope_cap_(slope_cap) {}

Profile Profile::checked(std::vector<Breakpoint> points, double slope_cap) {
    Profile p(std::move(points), slope_cap);
    auto issues = validate(p);
    if (!issues.empty()) throw ArgumentError(issues.front().message);
    return p;
}

Profile Profile::line(double slope, double end, double slope_cap) {
    return Profile({{0.0, 0.0}, {end, slope * end}}, slope_cap);
}

double Profile::slope(std::size_t segment) const {
    const auto& a = points_[segment];
    const auto& b = points_[segment + 1];
    return (b.v - a.v) / (b.s - a.s);
}

std::size_t Profile::segment_at(double s) const {
    auto it = std::upper_bound(points_.begin(), points_.end(), s,
                               [](double x, const Breakpoint& bp) { return x < bp.s; });
    std::size_t idx = it == points_.begin() ? 0 : static_cast<std::size_t>(it - points_.begin()) - 1;
    return std::min(idx, segments() - 1);
}

double eval(const Profile& p, double s) {
    const auto& pts = p.breakpoints();
    if (pts.size() < 2) throw DomainError("profile has no segments");
    if (!(s >= -kTau) || s > p.domain_end() + kTau) {
        std::ostringstream os;
        os << "precision " << s << " outside [0, " << p.domain_end() << "]";
        throw DomainError(os.str());
    }
    s = std::clamp(s, 0.0, p.domain_end());
    std::size_t i = p.segment_at(s);
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    if (s == a.s) return a.v;
    if (s == b.s) return b.v;
    return a.v + (s - a.s) * (b.v - a.v) / (b.s - a.s);
}

double growth(const Profile& p, double a, double b) {
    if (a > b + kTau) throw ArgumentError("growth requires a <= b");
    return eval(p, b) - eval(p, a);
}

namespace {

// Smallest x in [x0, x1] where the linear function through (x0, y0), (x1, y1)
// drops below -kTau. Assumes y0 >= -kTau > y1.
double first_below(double x0, double y0, double x1, double y1) {
    double t = (y0 + kTau) / (y0 - y1);
    return x0 + std::clamp(t, 0.0, 1.0) * (x1 - x0);
}

}  // namespace

EnvelopeResult envelope_check(const Profile& p, const Envelope& e) {
    EnvelopeResult out;
    const auto& pts = p.breakpoints();
    if (pts.size() < 2 || e.s_min > p.domain_end()) return out;
    auto lower = [&](double s, double v) { return v - e.d_lower * s; };
    auto upper = [&](double s, double v) { return e.D_upper * s - v; };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].s < e.s_min) continue;
        double x0 = std::max(pts[i].s, e.s_min);
        double y0 = x0 == pts[i].s ? pts[i].v : eval(p, x0);
        double x1 = pts[i + 1].s;
        double y1 = pts[i + 1].v;
        double lo0 = lower(x0, y0), up0 = upper(x0, y0);
        if (lo0 < -kTau || up0 < -kTau) {
            out.satisfied = false;
            out.first_violation = x0;
            return out;
        }
        double lo1 = lower(x1, y1), up1 = upper(x1, y1);
        double hit = x1 + 1.0;
        if (lo1 < -kTau) hit = std::min(hit, first_below(x0, lo0, x1, lo1));
        if (up1 < -kTau) hit = std::min(hit, first_below(x0, up0, x1, up1));
        if (hit <= x1) {
            out.satisfied = false;
            out.first_violation = hit;
            return out;
        }
    }
    return out;
}

Envelope measured_envelope(const Profile& p, double s_min) {
    if (!(s_min > 0.0) || s_min >= p.domain_end())
        throw ArgumentError("measured_envelope requires 0 < s_min < domain_end");
    double lo = eval(p, s_min) / s_min;
    double hi = lo;
    for (const auto& bp : p.breakpoints()) {
        if (bp.s <= s_min) continue;
        double ratio = bp.v / bp.s;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi, s_min};
}

Profile make_adversary(double d, double D, double r, int phases) {
    if (phases < 1) throw ArgumentError("make_adversary needs at least one phase");
    if (!(r > 0.0)) throw ArgumentError("make_adversary needs r > 0");
    if (!(d >= 1.0) || !(d <= D + kTau) || !(D <= 2.0 + kTau)) {
        std::ostringstream os;
        os << "no sawtooth between lines " << d << "s and " << D << "s under slope 2";
        throw ConstructionError(os.str());
    }
    if (D - d <= kTau) return Profile::line(d, r);

    // Each tooth ends on the lower line at R, is flat back to its peak, and rises
    // at slope 2 from the valley. A full tooth peaks on the upper line; teeth that
    // would span more than a doubling are cut to start at R/2 instead.
    const double full = d * (2.0 - D) / (D * (2.0 - d));
    const double ratio = std::max(full, 0.5);
    std::vector<Breakpoint> desc;
    double R = r;
    desc.push_back({R, d * R});
    for (int k = 0; k < phases; ++k) {
        double V = ratio * R;
        double P = V + d * (R - V) / 2.0;
        if (R - P > kTau) desc.push_back({P, d * R});
        desc.push_back({V, d * V});
        R = V;
    }
    desc.push_back({0.0, 0.0});
    std::reverse(desc.begin(), desc.end());
    return Profile(std::move(desc));
}

std::vector<Violation> validate(const Profile& p) {
    std::vector<Violation> out;
    const auto& pts = p.breakpoints();
    auto add = [&](ViolationKind k, std::size_t seg, const std::string& what) {
        std::ostringstream os;
        os << what << " violation segment " << seg;
        out.push_back({k, seg, os.str()});
    };
    if (pts.size() < 2) {
        out.push_back({ViolationKind::structure, 0, "structure violation: fewer than two breakpoints"});
        return out;
    }
    if (!(p.slope_cap() > 0.0)) add(ViolationKind::structure, 0, "slope cap");
    if (pts.front().s != 0.0 || pts.front().v != 0.0) add(ViolationKind::origin, 0, "origin");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        if (!std::isfinite(a.s) || !std::isfinite(a.v) || !std::isfinite(b.s) || !std::isfinite(b.v)) {
            add(ViolationKind::structure, i, "finiteness");
            continue;
        }
        if (!(b.s > a.s)) {
            add(ViolationKind::order, i, "order");
            continue;
        }
        if (b.v < a.v - kTau) add(ViolationKind::monotonicity, i, "monotonicity");
        if (b.v - a.v > p.slope_cap() * (b.s - a.s) + kTau) add(ViolationKind::slope, i, "slope");
    }
    return out;
}

double default_s_min(const Profile& p) { return p.domain_end() / 100.0; }

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::structure: return "structure";
        case ViolationKind::origin: return "origin";
        case ViolationKind::order: return "order";
        case ViolationKind::monotonicity: return "monotonicity";
        case ViolationKind::slope: return "slope";
    }
    return "unknown";
}

}  // namespace pindim
