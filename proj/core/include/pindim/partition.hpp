#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pindim/classify.hpp"
#include "pindim/profile.hpp"

namespace pindim {

enum class PartitionKind { good, admissible, rgb, all_yellow, general, regular_pin };

struct PartitionParams {
    double r = 0.0;
    double s_min = 0.0;
    std::optional<double> d;
    std::optional<double> D;
    std::optional<double> t;
    std::optional<int> M;
    std::optional<double> eps;
    std::string yellow_extension;  // set by constructions that grow yellow blocks
};

// Ordered by increasing precision; consecutive intervals share endpoints.
struct Partition {
    PartitionKind kind = PartitionKind::good;
    PartitionParams params;
    std::vector<ColoredInterval> intervals;

    double left() const { return intervals.empty() ? params.r : intervals.front().a; }
};

Partition good_partition(const Profile& p, double r, std::optional<double> s_min = std::nullopt);
Partition admissible_partition(const Profile& p, double a, double b, double t, int M);
Partition rgb_partition(const Profile& p, double r, double t, std::optional<double> s_min = std::nullopt);
int count_rgb_sequences(const Partition& P);
Partition all_yellow_partition(const Profile& p, double r, double d, double D, double eps,
                               std::optional<double> s_min = std::nullopt);
Partition general_partition(const Profile& p, double r, double d, double D,
                            std::optional<double> s_min = std::nullopt);
Partition regular_pin_partition(const Profile& p, double r, double d_y, double eps,
                                std::optional<double> s_min = std::nullopt);

// Smallest a such that [a, b] is a union of yellow pieces, each at most
// doubling, with a >= floor. Returns b when no such piece exists.
double yellow_reach(const Profile& p, double b, double floor = 0.0);

// Lower end of a green block containing a point (for plotting and reports).
struct GreenBlock {
    double a;
    double b;
};
std::vector<GreenBlock> green_blocks(const Partition& P);

// Ratio bounds asserted for the teal intervals of the general partition.
double general_teal_ratio(double d, double D);       // d(D-1)/(D^2+D-d-1)
double general_teal_ratio_weak(double d, double D);  // d(2-D)/(2+d(2-D))
double regular_pin_green_ratio(double d_y, double eps);

// Structural self-check: contiguity, coverage, colour labels and the
// construction-specific invariants. Empty result means the partition is sound.
std::vector<std::string> check_partition(const Profile& p, const Partition& P);

std::string to_string(PartitionKind k);
PartitionKind partition_kind_from_string(const std::string& name);

}  // namespace pindim
