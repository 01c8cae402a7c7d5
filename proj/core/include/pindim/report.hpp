#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pindim/adversary.hpp"
#include "pindim/bounds.hpp"
#include "pindim/classify.hpp"
#include "pindim/partition.hpp"
#include "pindim/profile.hpp"

namespace pindim {

using Json = nlohmann::ordered_json;

// Profile file: { "slope_cap": number, "breakpoints": [[s, v], ...] }.
// parse_profile only checks the document shape (FormatError); load_profile
// also rejects invariant violations, naming the first bad segment.
Profile parse_profile(std::string_view text);
Profile load_profile(const std::string& path);
std::string read_text_file(const std::string& path);  // FormatError if unreadable

Json profile_to_json(const Profile& p);
std::string dump_profile(const Profile& p);
void save_profile(const Profile& p, const std::string& path);

Json to_json(const std::vector<Violation>& violations);
Json to_json(const ColoredInterval& iv);
Json to_json(const Partition& P);
Json to_json(const BoundReport& rep);
Json to_json(const SearchResult& res);
Json to_json(const TightnessReport& rep);

// Every colour predicate on one interval.
Json classification_json(const Profile& p, double a, double b, std::optional<double> cap = std::nullopt);

struct PlotOptions {
    int width = 720;
    int height = 480;
    std::optional<double> d;  // draws d*s when set
    std::optional<double> D;  // draws D*s when set
    std::optional<Partition> partition;
    std::string title;
};

// SVG 1.1, byte-stable for identical inputs. All-yellow partitions also get
// the slope-1 construction line of each step.
std::string render_svg(const Profile& p, const PlotOptions& opt);

}  // namespace pindim
