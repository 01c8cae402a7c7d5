#include "pindim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pindim/errors.hpp"
#include "util.hpp"

namespace pindim {

namespace {

using detail::fmt;

void require_dims(double d, double D) {
    if (!(d > 1.0 && d <= D + 1e-12 && D <= 2.0 + 1e-12)) {
        throw PreconditionError("need 1 < d <= D <= 2 (got d=" + fmt(d) + ", D=" + fmt(D) + ")");
    }
}

// Distance-style credit: head by length, yellow by length, teal by growth.
void credit(const Profile& p, const Partition& P, BoundReport& rep) {
    const double left = P.left();
    if (left > kTau) {
        rep.ledger.push_back({0.0, left, "head:length", left});
        rep.L += left;
    }
    for (const auto& iv : P.intervals) {
        if (iv.color == Color::yellow) {
            rep.ledger.push_back({iv.a, iv.b, "yellow:length", iv.length()});
            rep.L += iv.length();
        } else if (iv.color == Color::green) {
            rep.ledger.push_back({iv.a, iv.b, "green:growth", iv.growth});
            rep.L += iv.length();
        } else {
            rep.ledger.push_back({iv.a, iv.b, "teal:growth", growth(p, iv.a, iv.b)});
        }
    }
    rep.ledger_sum = 0.0;
    for (const auto& row : rep.ledger) rep.ledger_sum += row.amount;
}

// Credit of [lo, hi] from its good partition; the interval straddling lo counts
// only its part above lo, at the smaller of its length and growth.
double good_credit(const Profile& p, double lo, double hi, std::vector<LedgerRow>& rows) {
    auto P = good_partition(p, hi, lo);
    double total = 0.0;
    for (const auto& iv : P.intervals) {
        if (iv.b <= lo + kTau) continue;
        double a = std::max(iv.a, lo);
        double amount;
        std::string rule;
        if (iv.a < lo - kTau) {
            amount = std::min(iv.b - a, growth(p, a, iv.b));
            rule = "clipped:min";
        } else if (iv.color == Color::yellow) {
            amount = iv.length();
            rule = "yellow:length";
        } else {
            amount = iv.growth;
            rule = "teal:growth";
        }
        rows.push_back({a, iv.b, rule, amount});
        total += amount;
    }
    return total;
}

}  // namespace

const char* const kDenominatorNotice =
    "distance closed form uses the denominator 2D^2+(2-4d)D+d^2+d-2; the variant 2(D^2+D-1)-2d(2D-1) "
    "agrees only at d=1 and does not reproduce the L-equalization value";

void DimParams::validate() const {
    for (double v : {d_x, d_y, D_x, D_y}) {
        if (!std::isfinite(v)) throw PreconditionError("dimension parameters must be finite");
    }
    if (d_x > D_x + 1e-12 || d_y > D_y + 1e-12) throw PreconditionError("need d_x <= D_x and d_y <= D_y");
    require_dims(d(), D());
    if (!(eps >= 0.0)) throw PreconditionError("eps must be nonnegative");
}

double teal_growth_ratio(double d, double D) {
    double den = D * D + D - D * d - 1.0;
    if (!(den > 0.0)) throw PreconditionError("teal growth denominator D^2+D-Dd-1 is not positive");
    return d * (2.0 * D - d - 1.0) / den;
}

double teal_growth_rate(double d, double D) {
    require_dims(d, D);
    return std::min(1.0, teal_growth_ratio(d, D));
}

double full_dim_threshold(double d) {
    if (!(d >= 1.0)) throw PreconditionError("full_dim_threshold needs d >= 1");
    const double s5 = std::sqrt(5.0);
    return ((3.0 + s5) * d - 1.0 - s5) / 2.0;
}

double hausdorff_bound(double d, double D) {
    require_dims(d, D);
    if (D <= full_dim_threshold(d)) return 1.0;
    double den = 2.0 * D * D + (2.0 - 4.0 * d) * D + d * d + d - 2.0;
    return d * (1.0 - (D - 1.0) * (D - d) / den);
}

double hausdorff_bound_D2(double d) {
    require_dims(d, 2.0);
    return std::min(1.0, d * (d - 4.0) / (d - 5.0));
}

double l_tradeoff(double d, double D, double L, double r) {
    if (!(L >= 0.0 && L <= r + kTau)) throw ArgumentError("l_tradeoff needs 0 <= L <= r");
    double rho = teal_growth_rate(d, D);
    return std::max(L + rho * (r - L), d * r - L);
}

Equalization minimize_over_L(double d, double D) {
    double rho = teal_growth_rate(d, D);
    if (rho >= 1.0) return {1.0, 1.0, true};
    double L = (d - rho) / (2.0 - rho);
    return {L, l_tradeoff(d, D, L, 1.0), false};
}

double projection_min_t(double d, double D, double r) { return d * (2.0 - D) / 2.0 * r; }

double projection_closed_form(double d, double D, double t, double r, double K) {
    require_dims(d, D);
    double tmin = projection_min_t(d, D, r);
    if (t < tmin - kTau) {
        throw PreconditionError("(P2) t >= d(2-D)/2*r violated: t=" + fmt(t) + " < " + fmt(tmin));
    }
    return std::max((D - 1.0) / D * (d * r - t) + K - d * r, K - r);
}

double packing_closed_form(double D) {
    if (!(D >= 1.0 - 1e-12 && D <= 2.0 + 1e-12)) throw PreconditionError("packing bound needs 1 <= D <= 2");
    return (3.0 * D * D - D + 6.0) / (8.0 * D);
}

double regular_pin_constant(double d_y) {
    if (!(d_y > 1.0)) throw PreconditionError("need d_y > 1");
    return 16.0 / (d_y - 1.0);
}

double alternate_eps_max(double d_x, double C) {
    if (!(C > 0.5)) throw PreconditionError("need C > 1/2");
    return (d_x + 1.0) / (2.0 * C - 1.0);
}

BoundReport assemble_distance_bound(const Profile& p_y, double r, const DimParams& params,
                                    std::optional<double> s_min) {
    params.validate();
    const double d = params.d(), D = params.D();
    auto P = general_partition(p_y, r, d, D, s_min);
    BoundReport rep;
    rep.mode = "distance";
    rep.r = r;
    credit(p_y, P, rep);
    const double dual = eval(p_y, r) - rep.L;
    rep.assembled_value = std::max(rep.ledger_sum, dual);
    rep.case_taken = rep.ledger_sum >= dual ? "ledger" : "complement";
    rep.closed_form_value = hausdorff_bound(d, D) * r;
    rep.holds = rep.assembled_value >= rep.closed_form_value - params.eps * r - kTau;
    rep.notice = kDenominatorNotice;
    rep.partition = std::move(P);
    return rep;
}

BoundReport assemble_all_yellow_distance_bound(const Profile& p_y, double r, double d, double D, double eps,
                                               std::optional<double> s_min) {
    require_dims(d, D);
    auto P = all_yellow_partition(p_y, r, d, D, eps, s_min);
    BoundReport rep;
    rep.mode = "all-yellow";
    rep.r = r;
    credit(p_y, P, rep);
    rep.assembled_value = rep.ledger_sum;
    rep.case_taken = "all-yellow";
    rep.closed_form_value = (1.0 - eps) * r;
    rep.holds = rep.assembled_value >= rep.closed_form_value - kTau;
    rep.partition = std::move(P);
    return rep;
}

BoundReport regular_pin_distance_bound(const Profile& p_y, double r, double d_x, double d_y, double eps_x,
                                       double eps, std::optional<double> s_min) {
    const double C = regular_pin_constant(d_y);
    const double emax = alternate_eps_max(d_x, C);
    if (!(eps_x >= 0.0 && eps_x < emax)) {
        throw PreconditionError("eps_x < (d_x+1)/(2C-1) violated: eps_x=" + fmt(eps_x) + ", limit " + fmt(emax));
    }
    auto P = regular_pin_partition(p_y, r, d_y, eps, s_min);
    BoundReport rep;
    rep.mode = "regular-pin";
    rep.r = r;
    credit(p_y, P, rep);
    rep.assembled_value = rep.ledger_sum;
    rep.case_taken = "regular-pin";
    rep.closed_form_value = (1.0 - eps) * r;
    rep.holds = rep.assembled_value >= rep.closed_form_value - kTau;
    rep.partition = std::move(P);
    return rep;
}

AlternateProjection alternate_projection_bound(const Profile& p_x, double r, double t, double d_x, double eps_x,
                                               double C, std::optional<double> s_min) {
    double lo = detail::resolve_s_min(p_x, r, s_min);
    AlternateProjection out;
    out.eps_prime_max = alternate_eps_max(d_x, C);
    if (t < r / C - kTau) throw PreconditionError("t >= r/C violated: t=" + fmt(t) + " < " + fmt(r / C));
    if (!(eps_x < out.eps_prime_max)) {
        throw PreconditionError("-d_x/C + 2e' - e'/C - 1/C < 0 violated: eps_x=" + fmt(eps_x) + " >= " +
                                fmt(out.eps_prime_max));
    }
    auto env = measured_envelope(detail::truncate(p_x, r), lo);
    out.spread = env.D_upper - env.d_lower;
    if (!(out.spread < eps_x)) {
        throw PreconditionError("envelope spread < eps_x violated: spread=" + fmt(out.spread) + ", eps_x=" +
                                fmt(eps_x));
    }
    out.value = eval(p_x, r) - r;
    return out;
}

BoundReport assemble_projection_bound(const Profile& p_x, double r, double t, double d, double D, double eps,
                                      std::optional<double> s_min) {
    require_dims(d, D);
    double lo = detail::resolve_s_min(p_x, r, s_min);
    detail::require_envelope(p_x, r, d, D, lo, "envelope (d, D)");
    const double fr = eval(p_x, r);
    BoundReport rep;
    rep.mode = "projection";
    rep.r = r;
    rep.closed_form_value = projection_closed_form(d, D, t, r, fr);

    auto P = rgb_partition(p_x, r, t, lo);
    const int S = count_rgb_sequences(P);
    rep.S = S;
    double value;
    if (S == 0) {
        value = fr - r;
        rep.case_taken = "S=0";
    } else if (S == 1) {
        const auto& iv = P.intervals;
        std::size_t i = 0, j = 0;
        for (; i < iv.size(); ++i) {
            if (iv[i].color != Color::red) continue;
            j = i + 1;
            while (j < iv.size() && iv[j].color == Color::green) ++j;
            if (j > i + 1 && j < iv.size() && iv[j].color == Color::blue) break;
        }
        const double r1 = iv[i + 1].a;
        const double block_end = iv[j - 1].b;
        const double r2 = yellow_reach(p_x, r, block_end);
        rep.ledger.push_back({0.0, r1, "bad:before-green", r1});
        if (r - r2 > kTau) rep.ledger.push_back({r2, r, "bad:yellow-tail", r - r2});
        rep.B = r1 + (r - r2);
        value = std::min((D - 1.0) * rep.B + fr - d * r, fr - t - rep.B);
        rep.case_taken = "S=1";
    } else {
        int M = std::numeric_limits<int>::max() / 4;
        auto A = admissible_partition(p_x, lo, r, t, M);
        for (const auto& x : A.intervals) {
            if (x.color == Color::yellow) {
                rep.ledger.push_back({x.a, x.b, "bad:length", x.length()});
                rep.B += x.length();
            }
        }
        value = std::min(rep.B, fr - rep.B - 2.0 * t);
        rep.case_taken = "S>=2";
    }
    for (const auto& row : rep.ledger) rep.ledger_sum += row.amount;
    rep.assembled_value = value;
    rep.holds = value <= rep.closed_form_value + eps * r + kTau;
    rep.partition = std::move(P);
    return rep;
}

BoundReport assemble_packing_bound(const Profile& p_y, double d, double D, double eps,
                                   std::optional<double> s_min) {
    require_dims(d, D);
    const double end = p_y.domain_end();
    const double lo = detail::resolve_s_min(p_y, end, s_min);
    const DimParams params = DimParams::collapsed(d, D, eps);
    const auto& pts = p_y.breakpoints();

    auto reaches = [&](double b, double target) { return yellow_reach(p_y, b, target) <= target + kTau; };
    auto value_at = [&](double x) { return assemble_distance_bound(p_y, x, params, lo).assembled_value; };

    BoundReport best;
    best.mode = "packing";
    bool found = false;
    double best_ratio = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double rs = pts[k].s;
        if (rs <= lo + kTau) continue;
        if (pts[k].v < (D - eps) * rs) continue;
        if (!(p_y.slope(k - 1) > kTau)) continue;

        // Largest r2 >= rs with [rs, r2] a union of at-most-doubling yellows.
        double r2 = rs;
        for (std::size_t m = k + 1; m < pts.size(); ++m) {
            if (reaches(pts[m].s, rs)) {
                r2 = pts[m].s;
                continue;
            }
            double a = r2, b = pts[m].s;
            for (int it = 0; it < 60 && b - a > kTau; ++it) {
                double mid = 0.5 * (a + b);
                (reaches(mid, rs) ? a : b) = mid;
            }
            r2 = a;
            break;
        }

        BoundReport rep;
        rep.mode = "packing";
        double value;
        if (r2 >= 4.0 / 3.0 * rs - kTau) {
            value = value_at(rs) + (r2 - rs);
            rep.ledger.push_back({0.0, rs, "distance:assembled", value_at(rs)});
            rep.ledger.push_back({rs, r2, "yellow:length", r2 - rs});
            rep.case_taken = "yellow-extension";
        } else {
            const double rp = r2 / 2.0;
            if (rp <= lo + kTau) continue;
            const double base = value_at(rp);
            rep.ledger.push_back({0.0, rp, "distance:assembled", base});
            if (reaches(r2, rp)) {
                rep.ledger.push_back({rp, r2, "yellow:length", r2 - rp});
                value = base + (r2 - rp);
            } else {
                value = base + good_credit(p_y, rp, r2, rep.ledger);
            }
            rep.case_taken = "half-chain";
        }
        rep.r = r2;
        for (const auto& row : rep.ledger) rep.ledger_sum += row.amount;
        rep.assembled_value = value;
        double ratio = value / r2;
        if (!found || ratio > best_ratio) {
            best = std::move(rep);
            best_ratio = ratio;
            found = true;
        }
    }
    if (!found) {
        throw PreconditionError("no maximal precision with f(s) >= (D-eps)s above s_min; extend the profile domain");
    }
    best.closed_form_value = packing_closed_form(D) * best.r;
    best.holds = best_ratio >= packing_closed_form(D) - eps - kTau;
    return best;
}

}  // namespace pindim
