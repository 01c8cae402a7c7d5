#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pindim/profile.hpp"

namespace pindim {

enum class Objective { distance_bound, projection_bound, packing_bound };
enum class SearchMode { automatic, exhaustive, beam };

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchConfig {
    double d = 1.2;
    double D = 1.6;
    double r = 100.0;
    int grid_n = 8;
    std::vector<double> slope_levels{0.0, 0.5, 1.0, 1.5, 2.0};
    Objective objective = Objective::distance_bound;
    int beam_width = 64;
    SearchMode mode = SearchMode::automatic;
    std::optional<std::uint64_t> budget;  // falls back to PINDIM_BUDGET, then kDefaultBudget
    std::optional<double> t_fraction;     // projection window t/r; defaults to d(2-D)/2
    double eps = 1e-3;

    void validate() const;
    double cell() const { return r / grid_n; }
    double s_min() const { return cell(); }
    std::uint64_t effective_budget() const;
    std::uint64_t candidate_count() const;  // slope_levels^grid_n, saturating
};

struct SearchResult {
    Profile worst_profile;
    double worst_value = 0.0;  // in units of r
    double closed_form = 0.0;  // in units of r
    double gap = 0.0;          // positive means the bound held with room
    std::uint64_t visited = 0;
    std::uint64_t skipped = 0;  // profiles the assembler rejected
    std::string mode_used;
};

// Grid profile from per-cell slopes.
Profile grid_profile(double r, const std::vector<double>& slopes);

// Visits every envelope-valid grid profile (exhaustive) or the final beam.
void enumerate_profiles(const SearchConfig& cfg, const std::function<void(const Profile&)>& visit);

// Badness of one profile under the objective (lower is more adversarial),
// together with the raw assembled value. Throws what the assembler throws.
struct Evaluation {
    double value = 0.0;
    double closed = 0.0;
    double score = 0.0;
};
Evaluation evaluate(const SearchConfig& cfg, const Profile& p, double r);

SearchResult worst_case_search(const SearchConfig& cfg);

// Best transfer total over every partition of [s_min, r] whose cut points are
// grid points (the profile's own breakpoints when grid_n is absent) or
// endpoints of the general partition.
double dp_oracle(const Profile& p, double r, double d, double D, std::optional<int> grid_n = std::nullopt,
                 std::optional<double> s_min = std::nullopt);

struct TightnessRow {
    int grid_n = 0;
    double worst = 0.0;
    double closed = 0.0;
    double gap = 0.0;
    std::string mode_used;
};
struct TightnessReport {
    std::vector<TightnessRow> rows;
    bool gap_shrinks = true;
};
TightnessReport tightness_report(double d, double D, const std::vector<int>& grids, SearchConfig base = {});

// Random envelope-valid profile: a slope line up to r/2^head_doublings, then
// segments of relative length U(0.05, 0.5) with slopes inside the envelope cone.
struct RandomProfileOptions {
    double r = 100.0;
    int head_doublings = 5;
    std::optional<double> min_rising_slope;  // if set, slopes are 0 or in [min_rising_slope, 2]
};
Profile random_profile(std::mt19937_64& rng, double d, double D, const RandomProfileOptions& opt = {});
double random_profile_s_min(const RandomProfileOptions& opt);

std::string to_string(Objective o);
Objective objective_from_string(const std::string& name);
std::string to_string(SearchMode m);
SearchMode search_mode_from_string(const std::string& name);

}  // namespace pindim
