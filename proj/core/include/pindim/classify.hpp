#pragma once

#include <optional>
#include <string>

#include "pindim/profile.hpp"

namespace pindim {

enum class Color { yellow, teal, green, red, blue };

struct ColoredInterval {
    double a = 0.0;
    double b = 0.0;
    Color color = Color::yellow;
    double growth = 0.0;
    double length() const { return b - a; }
};

inline bool is_degenerate(double a, double b) { return b - a <= kTau; }

bool is_yellow(const Profile& p, double a, double b);
bool is_teal(const Profile& p, double a, double b);
bool is_green(const Profile& p, double a, double b, std::optional<double> cap = std::nullopt);
bool is_red(const Profile& p, double a, double b);
bool is_blue(const Profile& p, double a, double b);

// Re-check a label; green honours the cap when one is given.
bool has_color(const Profile& p, const ColoredInterval& iv, std::optional<double> cap = std::nullopt);

ColoredInterval make_interval(const Profile& p, double a, double b, Color c);

// Longest green interval of length <= cap containing s, if any.
std::optional<ColoredInterval> maximal_green_at(const Profile& p, double s, double cap);

std::string to_string(Color c);
Color color_from_string(const std::string& name);

}  // namespace pindim
