#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "pindim/errors.hpp"
#include "pindim/profile.hpp"

namespace pindim::detail {

inline std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

inline std::string fmt(double a, double b) { return "[" + fmt(a) + ", " + fmt(b) + "]"; }

// The profile restricted to [0, r], for envelope checks that must not look past r.
inline Profile truncate(const Profile& p, double r) {
    std::vector<Breakpoint> pts;
    for (const auto& bp : p.breakpoints()) {
        if (bp.s >= r - kTau) break;
        pts.push_back(bp);
    }
    pts.push_back({r, eval(p, r)});
    return Profile(std::move(pts), p.slope_cap());
}

inline void require_envelope(const Profile& p, double r, double d, double D, double lo, const std::string& what) {
    if (lo >= r) return;
    auto res = envelope_check(truncate(p, r), {d, D, lo});
    if (!res.satisfied) {
        throw EnvelopeViolation(what + " fails at s=" + fmt(res.first_violation.value_or(lo)));
    }
}

inline double resolve_s_min(const Profile& p, double r, std::optional<double> s_min) {
    if (p.size() < 2) throw ArgumentError("profile has no segments");
    if (!(r > 0.0)) throw ArgumentError("r must be positive");
    if (r > p.domain_end() + kTau) throw DomainError("r = " + fmt(r) + " exceeds the profile domain");
    double lo = s_min.value_or(default_s_min(p));
    if (!(lo > 0.0)) throw ArgumentError("s_min must be positive");
    if (lo >= r) throw PreconditionError("s_min must lie below r");
    return lo;
}

}  // namespace pindim::detail
