#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pindim {

// Absolute tolerance used by every comparison in the library.
inline constexpr double kTau = 1e-9;

struct Breakpoint {
    double s = 0.0;
    double v = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Piecewise-linear complexity profile. Construction does not enforce the
// invariants; use validate() or Profile::checked() for that.
class Profile {
public:
    Profile() = default;
    explicit Profile(std::vector<Breakpoint> points, double slope_cap = 2.0);

    static Profile checked(std::vector<Breakpoint> points, double slope_cap = 2.0);
    static Profile line(double slope, double end, double slope_cap = 2.0);

    const std::vector<Breakpoint>& breakpoints() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t segments() const { return points_.empty() ? 0 : points_.size() - 1; }
    double slope_cap() const { return slope_cap_; }
    double domain_end() const { return points_.empty() ? 0.0 : points_.back().s; }
    double slope(std::size_t segment) const;

    // Index of the segment containing s (the left one at a breakpoint).
    std::size_t segment_at(double s) const;

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    std::vector<Breakpoint> points_;
    double slope_cap_ = 2.0;
};

struct Envelope {
    double d_lower = 0.0;
    double D_upper = 0.0;
    double s_min = 0.0;
};

struct EnvelopeResult {
    bool satisfied = true;
    std::optional<double> first_violation;
};

enum class ViolationKind { structure, origin, order, monotonicity, slope };

struct Violation {
    ViolationKind kind;
    std::size_t segment;
    std::string message;
};

double eval(const Profile& p, double s);
double growth(const Profile& p, double a, double b);

// f(s) - s; most interval predicates are statements about this excess.
inline double excess(const Profile& p, double s) { return eval(p, s) - s; }

EnvelopeResult envelope_check(const Profile& p, const Envelope& e);
Envelope measured_envelope(const Profile& p, double s_min);
Profile make_adversary(double d, double D, double r, int phases);
std::vector<Violation> validate(const Profile& p);

double default_s_min(const Profile& p);
std::string to_string(ViolationKind kind);

}  // namespace pindim
