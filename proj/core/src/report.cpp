#include "pindim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pindim/errors.hpp"

namespace pindim {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Profile parse_profile(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("malformed profile JSON: ") + e.what());
    }
    if (!doc.is_object()) throw FormatError("profile document must be a JSON object");
    double cap = 2.0;
    if (doc.contains("slope_cap")) {
        if (!doc["slope_cap"].is_number()) throw FormatError("slope_cap must be a number");
        cap = doc["slope_cap"].get<double>();
    }
    if (!doc.contains("breakpoints") || !doc["breakpoints"].is_array())
        throw FormatError("profile document needs a \"breakpoints\" array");
    std::vector<Breakpoint> pts;
    std::size_t i = 0;
    for (const auto& bp : doc["breakpoints"]) {
        if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() || !bp[1].is_number())
            throw FormatError("breakpoint " + std::to_string(i) + " must be a pair [s, v]");
        pts.push_back({bp[0].get<double>(), bp[1].get<double>()});
        ++i;
    }
    return Profile(std::move(pts), cap);
}

Profile load_profile(const std::string& path) {
    Profile p = parse_profile(read_text_file(path));
    auto issues = validate(p);
    if (!issues.empty()) throw ArgumentError(path + ": " + issues.front().message);
    return p;
}

Json profile_to_json(const Profile& p) {
    Json bps = Json::array();
    for (const auto& bp : p.breakpoints()) bps.push_back(Json::array({bp.s, bp.v}));
    Json out;
    out["slope_cap"] = p.slope_cap();
    out["breakpoints"] = std::move(bps);
    return out;
}

std::string dump_profile(const Profile& p) { return profile_to_json(p).dump(2) + "\n"; }

void save_profile(const Profile& p, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    out << dump_profile(p);
}

Json to_json(const std::vector<Violation>& violations) {
    Json arr = Json::array();
    for (const auto& v : violations) {
        arr.push_back({{"kind", to_string(v.kind)}, {"segment", v.segment}, {"message", v.message}});
    }
    return arr;
}

Json to_json(const ColoredInterval& iv) {
    return {{"a", iv.a}, {"b", iv.b}, {"color", to_string(iv.color)}, {"growth", iv.growth}};
}

namespace {

Json params_json(const PartitionParams& pp) {
    Json j;
    j["r"] = pp.r;
    j["s_min"] = pp.s_min;
    if (pp.d) j["d"] = *pp.d;
    if (pp.D) j["D"] = *pp.D;
    if (pp.t) j["t"] = *pp.t;
    if (pp.M) j["M"] = *pp.M;
    if (pp.eps) j["eps"] = *pp.eps;
    if (!pp.yellow_extension.empty()) j["yellow_extension"] = pp.yellow_extension;
    return j;
}

}  // namespace

Json to_json(const Partition& P) {
    Json ivs = Json::array();
    for (const auto& iv : P.intervals) ivs.push_back(to_json(iv));
    Json j;
    j["kind"] = to_string(P.kind);
    j["params"] = params_json(P.params);
    j["intervals"] = std::move(ivs);
    if (P.kind == PartitionKind::rgb) j["S"] = count_rgb_sequences(P);
    return j;
}

Json to_json(const BoundReport& rep) {
    Json ledger = Json::array();
    for (const auto& row : rep.ledger) {
        ledger.push_back({{"a", row.a}, {"b", row.b}, {"rule", row.rule}, {"amount", row.amount}});
    }
    Json j;
    j["mode"] = rep.mode;
    j["r"] = rep.r;
    j["assembled_value"] = rep.assembled_value;
    j["ledger_sum"] = rep.ledger_sum;
    j["closed_form_value"] = rep.closed_form_value;
    j["L"] = rep.L;
    j["B"] = rep.B;
    if (rep.S) j["S"] = *rep.S;
    j["case_taken"] = rep.case_taken;
    j["holds"] = rep.holds;
    j["ledger"] = std::move(ledger);
    if (rep.partition) j["partition"] = to_json(*rep.partition);
    if (!rep.notice.empty()) j["notice"] = rep.notice;
    return j;
}

Json to_json(const SearchResult& res) {
    Json j;
    j["mode_used"] = res.mode_used;
    j["worst_value"] = res.worst_value;
    j["closed_form"] = res.closed_form;
    j["gap"] = res.gap;
    j["visited"] = res.visited;
    j["skipped"] = res.skipped;
    j["worst_profile"] = profile_to_json(res.worst_profile);
    return j;
}

Json to_json(const TightnessReport& rep) {
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"grid_n", r.grid_n},
                        {"worst", r.worst},
                        {"closed", r.closed},
                        {"gap", r.gap},
                        {"mode_used", r.mode_used}});
    }
    return {{"rows", std::move(rows)}, {"gap_shrinks", rep.gap_shrinks}};
}

Json classification_json(const Profile& p, double a, double b, std::optional<double> cap) {
    Json j;
    j["a"] = a;
    j["b"] = b;
    j["growth"] = growth(p, a, b);
    j["yellow"] = is_yellow(p, a, b);
    j["teal"] = is_teal(p, a, b);
    j["green"] = is_green(p, a, b, cap);
    j["red"] = is_red(p, a, b);
    j["blue"] = is_blue(p, a, b);
    if (cap) j["green_cap"] = *cap;
    return j;
}

// ---- SVG ----

namespace {

const char* fill_for(Color c) {
    switch (c) {
        case Color::yellow: return "#f2c500";
        case Color::teal: return "#1b9e9e";
        case Color::green: return "#3a9d3a";
        case Color::red: return "#d0342c";
        case Color::blue: return "#3465a4";
    }
    return "#999999";
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

std::string escape(const std::string& in) {
    std::string out;
    for (char c : in) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double left, top, w, h, s_max, v_max;
    double x(double s) const { return left + w * s / s_max; }
    double y(double v) const { return top + h * (1.0 - v / v_max); }
};

}  // namespace

std::string render_svg(const Profile& p, const PlotOptions& opt) {
    if (p.size() < 2) throw ArgumentError("cannot plot a profile with fewer than two breakpoints");
    const double s_max = p.domain_end();
    double v_max = p.breakpoints().back().v;
    if (opt.D) v_max = std::max(v_max, *opt.D * s_max);
    if (opt.d) v_max = std::max(v_max, *opt.d * s_max);
    if (!(v_max > 0.0)) v_max = 1.0;

    const double margin = 48.0;
    Frame fr{margin, margin / 2, opt.width - 1.5 * margin, opt.height - 1.5 * margin, s_max, v_max};

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width << "\" height=\""
       << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n";
    if (!opt.title.empty()) os << "<title>" << escape(opt.title) << "</title>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" fill=\"#ffffff\"/>\n";

    if (opt.partition) {
        os << "<g class=\"bands\" fill-opacity=\"0.28\">\n";
        for (const auto& iv : opt.partition->intervals) {
            os << "<rect class=\"" << to_string(iv.color) << "\" x=\"" << num(fr.x(iv.a)) << "\" y=\""
               << num(fr.top) << "\" width=\"" << num(fr.x(iv.b) - fr.x(iv.a)) << "\" height=\"" << num(fr.h)
               << "\" fill=\"" << fill_for(iv.color) << "\"/>\n";
        }
        os << "</g>\n";
    }

    // axes
    os << "<g stroke=\"#333333\" stroke-width=\"1\">\n";
    os << "<line x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\"" << num(fr.x(s_max))
       << "\" y2=\"" << num(fr.y(0)) << "\"/>\n";
    os << "<line x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\"" << num(fr.x(0))
       << "\" y2=\"" << num(fr.y(v_max)) << "\"/>\n";
    os << "</g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    os << "<text x=\"" << num(fr.x(s_max)) << "\" y=\"" << num(fr.y(0) + 16) << "\" text-anchor=\"end\">s = "
       << num(s_max) << "</text>\n";
    os << "<text x=\"" << num(fr.x(0) - 4) << "\" y=\"" << num(fr.y(v_max) + 4)
       << "\" text-anchor=\"end\">" << num(v_max) << "</text>\n";
    os << "</g>\n";

    auto envelope = [&](double slope, const char* cls) {
        os << "<line class=\"" << cls << "\" x1=\"" << num(fr.x(0)) << "\" y1=\"" << num(fr.y(0)) << "\" x2=\""
           << num(fr.x(s_max)) << "\" y2=\"" << num(fr.y(slope * s_max))
           << "\" stroke=\"#777777\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
    };
    if (opt.d) envelope(*opt.d, "envelope-lower");
    if (opt.D) envelope(*opt.D, "envelope-upper");

    if (opt.partition && opt.partition->kind == PartitionKind::all_yellow) {
        // slope-1 line through (b/2, f(b/2)); it meets the profile again at a
        os << "<g class=\"construction\" stroke=\"#b35900\" stroke-width=\"1.2\" fill=\"#b35900\">\n";
        const auto& pp = opt.partition->params;
        const double stop = std::max(pp.r * pp.eps.value_or(0.0) / 2, pp.s_min);
        for (const auto& iv : opt.partition->intervals) {
            if (iv.b <= stop + kTau) continue;
            double mid = iv.b / 2;
            double base = eval(p, mid) - mid;
            os << "<line x1=\"" << num(fr.x(iv.a)) << "\" y1=\"" << num(fr.y(base + iv.a)) << "\" x2=\""
               << num(fr.x(iv.b)) << "\" y2=\"" << num(fr.y(base + iv.b)) << "\"/>\n";
            os << "<circle cx=\"" << num(fr.x(mid)) << "\" cy=\"" << num(fr.y(eval(p, mid)))
               << "\" r=\"2.5\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<polyline class=\"profile\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.8\" points=\"";
    bool first = true;
    for (const auto& bp : p.breakpoints()) {
        if (!first) os << ' ';
        first = false;
        os << num(fr.x(bp.s)) << ',' << num(fr.y(bp.v));
    }
    os << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace pindim
