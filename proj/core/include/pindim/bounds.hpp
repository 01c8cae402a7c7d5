#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pindim/partition.hpp"
#include "pindim/profile.hpp"

namespace pindim {

// Dimension pair of the pin x and the target y. eps is a dimensionless slack.
struct DimParams {
    double d_x = 1.5;
    double d_y = 1.5;
    double D_x = 1.5;
    double D_y = 1.5;
    double eps = 1e-3;

    double d() const { return d_x < d_y ? d_x : d_y; }
    double D() const { return D_x > D_y ? D_x : D_y; }

    static DimParams collapsed(double d, double D, double eps = 1e-3) { return {d, d, D, D, eps}; }
    void validate() const;  // 1 < d <= D <= 2, eps >= 0
};

struct LedgerRow {
    double a = 0.0;
    double b = 0.0;
    std::string rule;
    double amount = 0.0;
};

struct BoundReport {
    std::string mode;
    double r = 0.0;
    double assembled_value = 0.0;
    double ledger_sum = 0.0;
    double closed_form_value = 0.0;
    std::vector<LedgerRow> ledger;
    double L = 0.0;
    double B = 0.0;
    std::optional<int> S;
    std::string case_taken;
    bool holds = true;
    std::optional<Partition> partition;
    std::string notice;
};

// Shown on every report that uses the distance closed form.
extern const char* const kDenominatorNotice;

double teal_growth_ratio(double d, double D);  // unclamped d(2D-d-1)/(D^2+D-Dd-1)
double teal_growth_rate(double d, double D);   // min{1, ratio}
double full_dim_threshold(double d);
double hausdorff_bound(double d, double D);
double hausdorff_bound_D2(double d);
double l_tradeoff(double d, double D, double L, double r);

struct Equalization {
    double L_fraction = 1.0;  // L*/r
    double value = 1.0;       // value/r
    bool degenerate = false;  // rate is 1, no interior minimum
};
Equalization minimize_over_L(double d, double D);

double projection_closed_form(double d, double D, double t, double r, double K);
double packing_closed_form(double D);

// Smallest t the projection bound accepts: d(2-D)/2 * r.
double projection_min_t(double d, double D, double r);

BoundReport assemble_distance_bound(const Profile& p_y, double r, const DimParams& params,
                                    std::optional<double> s_min = std::nullopt);
BoundReport assemble_projection_bound(const Profile& p_x, double r, double t, double d, double D,
                                      double eps = 1e-3, std::optional<double> s_min = std::nullopt);
BoundReport assemble_all_yellow_distance_bound(const Profile& p_y, double r, double d, double D, double eps,
                                               std::optional<double> s_min = std::nullopt);
BoundReport assemble_packing_bound(const Profile& p_y, double d, double D, double eps = 1e-3,
                                   std::optional<double> s_min = std::nullopt);
BoundReport regular_pin_distance_bound(const Profile& p_y, double r, double d_x, double d_y, double eps_x,
                                       double eps = 1e-3, std::optional<double> s_min = std::nullopt);

struct AlternateProjection {
    double value = 0.0;          // f(r) - r
    double eps_prime_max = 0.0;  // (d_x + 1)/(2C - 1)
    double spread = 0.0;         // measured D_upper - d_lower
};
// C defaults to 16/(d_y - 1) when the caller knows d_y; here it is explicit.
AlternateProjection alternate_projection_bound(const Profile& p_x, double r, double t, double d_x, double eps_x,
                                               double C, std::optional<double> s_min = std::nullopt);
double alternate_eps_max(double d_x, double C);
double regular_pin_constant(double d_y);  // 16/(d_y - 1)

}  // namespace pindim
