#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "pindim/adversary.hpp"
#include "pindim/bounds.hpp"
#include "pindim/classify.hpp"
#include "pindim/errors.hpp"
#include "pindim/partition.hpp"
#include "pindim/profile.hpp"
#include "pindim/report.hpp"

#ifndef PINDIM_VERSION
#define PINDIM_VERSION "0.0.0"
#endif

namespace pindim::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InternalError("sha256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string kebab_to_snake(std::string s) {
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

std::string g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// Shared state for one invocation. CLI11 binds options straight into it.
struct Options {
    std::string file;
    std::string out;
    bool json = false;

    std::optional<double> d, D, d_x, d_y, D_x, D_y;
    std::optional<double> r, t, s_min, eps_x, a, b;
    double eps = 1e-3;
    std::optional<int> M;

    std::string kind = "general";
    std::string plot_kind = "none";
    std::string mode = "distance";

    // search
    std::string objective = "distance";
    int grid = 8;
    bool beam = false;
    bool exhaustive = false;
    int beam_width = 64;
    std::optional<std::uint64_t> budget;
    std::vector<double> levels;
    std::string worst_out = "worst_profile.json";
    std::vector<int> grids;
};

void add_dims(CLI::App* app, Options& o) {
    app->add_option("--d", o.d, "lower dimension (collapsed pair)");
    app->add_option("--D", o.D, "upper dimension (collapsed pair)");
    app->add_option("--d-x", o.d_x, "lower dimension of the pin");
    app->add_option("--d-y", o.d_y, "lower dimension of the target");
    app->add_option("--D-x", o.D_x, "upper dimension of the pin");
    app->add_option("--D-y", o.D_y, "upper dimension of the target");
}

bool has_quadruple(const Options& o) { return o.d_x || o.d_y || o.D_x || o.D_y; }

// Quadruples collapse to d = min, D = max.
DimParams resolve_dims(const Options& o) {
    if (has_quadruple(o)) {
        if (!(o.d_x && o.d_y && o.D_x && o.D_y))
            throw UsageError("dimension quadruple needs all of --d-x --d-y --D-x --D-y");
        if (o.d || o.D) throw UsageError("give either --d/--D or the quadruple, not both");
        return {*o.d_x, *o.d_y, *o.D_x, *o.D_y, o.eps};
    }
    if (!o.d || !o.D) throw UsageError("--d and --D are required");
    return DimParams::collapsed(*o.d, *o.D, o.eps);
}

struct Loaded {
    Profile profile;
    std::string digest;
};

Loaded load(const std::string& path) {
    std::string text = read_text_file(path);
    Profile p = parse_profile(text);
    auto issues = validate(p);
    if (!issues.empty()) throw ArgumentError(path + ": " + issues.front().message);
    return {std::move(p), "sha256:" + sha256_hex(text)};
}

Json document(const std::vector<std::string>& args, const std::optional<std::string>& digest) {
    Json doc;
    doc["tool"] = "pindim";
    doc["version"] = PINDIM_VERSION;
    doc["input_digest"] = digest ? Json(*digest) : Json(nullptr);
    doc["command"] = args;
    return doc;
}

void emit(const Options& o, const Json& doc, std::ostream& out) {
    std::string text = doc.dump(2) + "\n";
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ArgumentError("cannot write " + o.out);
        f << text;
    }
    if (o.json) out << text;
}

void print_bound_summary(const BoundReport& rep, std::ostream& out) {
    out << std::left;
    auto row = [&](const std::string& k, const std::string& v) { out << "  " << std::setw(18) << k << v << "\n"; };
    out << "bound report\n";
    row("mode", rep.mode);
    row("r", g(rep.r));
    row("assembled", g(rep.assembled_value) + "  (" + g(rep.r > 0 ? rep.assembled_value / rep.r : 0.0) + " r)");
    row("closed form", g(rep.closed_form_value) +
                           "  (" + g(rep.r > 0 ? rep.closed_form_value / rep.r : 0.0) + " r)");
    row("ledger sum", g(rep.ledger_sum));
    row("L", g(rep.L));
    row("B", g(rep.B));
    if (rep.S) row("S", std::to_string(*rep.S));
    row("case", rep.case_taken);
    row("holds", rep.holds ? "yes" : "NO");
    if (!rep.ledger.empty()) {
        out << "  ledger\n";
        for (const auto& l : rep.ledger) {
            out << "    [" << std::setw(12) << g(l.a) << ", " << std::setw(12) << g(l.b) << "]  "
                << std::setw(18) << l.rule << g(l.amount) << "\n";
        }
    }
    if (!rep.notice.empty()) out << "  note: " << rep.notice << "\n";
}

void print_partition_summary(const Partition& P, std::ostream& out) {
    out << "partition " << to_string(P.kind) << " on [" << g(P.left()) << ", " << g(P.params.r) << "], "
        << P.intervals.size() << " intervals\n";
    for (const auto& iv : P.intervals) {
        out << "  [" << std::left << std::setw(12) << g(iv.a) << ", " << std::setw(12) << g(iv.b) << "]  "
            << std::setw(7) << to_string(iv.color) << " growth " << g(iv.growth) << "\n";
    }
    if (P.kind == PartitionKind::rgb) out << "  S = " << count_rgb_sequences(P) << "\n";
    if (!P.params.yellow_extension.empty())
        out << "  yellow extension measured " << P.params.yellow_extension << "\n";
}

Partition build_partition(const Profile& p, const Options& o) {
    const std::string kind = kebab_to_snake(o.kind);
    const double r = o.r.value_or(p.domain_end());
    auto need = [&](const std::optional<double>& v, const char* flag) {
        if (!v) throw UsageError(std::string("partition kind '") + o.kind + "' needs " + flag);
        return *v;
    };
    if (kind == "good") return good_partition(p, r, o.s_min);
    if (kind == "admissible") {
        if (!o.M) throw UsageError("partition kind 'admissible' needs --M");
        return admissible_partition(p, need(o.a, "--a"), o.b.value_or(r), need(o.t, "--t"), *o.M);
    }
    if (kind == "rgb") return rgb_partition(p, r, need(o.t, "--t"), o.s_min);
    if (kind == "regular_pin") {
        double dy = o.d_y ? *o.d_y : need(o.d, "--d or --d-y");
        return regular_pin_partition(p, r, dy, o.eps, o.s_min);
    }
    DimParams dims = resolve_dims(o);
    if (kind == "all_yellow") return all_yellow_partition(p, r, dims.d(), dims.D(), o.eps, o.s_min);
    if (kind == "general") return general_partition(p, r, dims.d(), dims.D(), o.s_min);
    throw UsageError("unknown partition kind '" + o.kind + "'");
}

BoundReport build_bound(const Profile& p, const Options& o) {
    const std::string mode = kebab_to_snake(o.mode);
    const double r = o.r.value_or(p.domain_end());
    if (mode == "distance") return assemble_distance_bound(p, r, resolve_dims(o), o.s_min);
    if (mode == "projection") {
        if (!o.t) throw UsageError("projection mode needs --t");
        DimParams dims = resolve_dims(o);
        return assemble_projection_bound(p, r, *o.t, dims.d(), dims.D(), o.eps, o.s_min);
    }
    if (mode == "all_yellow") {
        DimParams dims = resolve_dims(o);
        return assemble_all_yellow_distance_bound(p, r, dims.d(), dims.D(), o.eps, o.s_min);
    }
    if (mode == "packing") {
        if (!o.D && !has_quadruple(o)) throw UsageError("packing mode needs --D");
        double D, d;
        if (has_quadruple(o)) {
            DimParams dims = resolve_dims(o);
            d = dims.d();
            D = dims.D();
        } else {
            D = *o.D;
            // without --d, the lower dimension is measured from the profile
            d = o.d ? *o.d : std::min(D, measured_envelope(p, o.s_min.value_or(default_s_min(p))).d_lower);
        }
        return assemble_packing_bound(p, d, D, o.eps, o.s_min);
    }
    if (mode == "regular_pin") {
        double dx, dy, ex;
        if (has_quadruple(o)) {
            DimParams dims = resolve_dims(o);
            dx = dims.d_x;
            dy = dims.d_y;
            ex = o.eps_x.value_or(dims.D_x - dims.d_x);
        } else {
            if (!o.d) throw UsageError("regular-pin mode needs --d or the quadruple");
            dx = dy = *o.d;
            ex = o.eps_x.value_or(o.D ? *o.D - *o.d : 0.0);
        }
        return regular_pin_distance_bound(p, r, dx, dy, ex, o.eps, o.s_min);
    }
    throw UsageError("unknown bound mode '" + o.mode + "'");
}

SearchConfig search_config(const Options& o) {
    SearchConfig cfg;
    if (!o.d || !o.D) throw UsageError("search needs --d and --D");
    cfg.d = *o.d;
    cfg.D = *o.D;
    if (o.r) cfg.r = *o.r;
    cfg.grid_n = o.grid;
    if (!o.levels.empty()) cfg.slope_levels = o.levels;
    cfg.objective = objective_from_string(o.objective);
    cfg.beam_width = o.beam_width;
    if (o.beam && o.exhaustive) throw UsageError("--beam and --exhaustive are exclusive");
    cfg.mode = o.beam ? SearchMode::beam : o.exhaustive ? SearchMode::exhaustive : SearchMode::automatic;
    cfg.budget = o.budget;
    if (o.t) cfg.t_fraction = *o.t;
    cfg.eps = o.eps;
    cfg.validate();
    return cfg;
}

int cmd_validate(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    std::string text = read_text_file(o.file);
    Profile p = parse_profile(text);
    auto issues = validate(p);
    Json doc = document(args, "sha256:" + sha256_hex(text));
    Json v;
    v["ok"] = issues.empty();
    v["violations"] = to_json(issues);
    if (issues.empty()) {
        Envelope env = measured_envelope(p, o.s_min.value_or(default_s_min(p)));
        v["measured_envelope"] = {{"d_lower", env.d_lower}, {"D_upper", env.D_upper}, {"s_min", env.s_min}};
    }
    doc["validation"] = v;
    emit(o, doc, out);
    if (!o.json) {
        if (issues.empty()) {
            out << o.file << ": ok (" << p.size() << " breakpoints)\n";
        } else {
            for (const auto& is : issues) out << o.file << ": " << is.message << "\n";
        }
    }
    return issues.empty() ? 0 : 1;
}

int cmd_classify(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    auto [p, digest] = load(o.file);
    Json rows = Json::array();
    if (o.a || o.b) {
        if (!(o.a && o.b)) throw UsageError("classify needs both --a and --b");
        rows.push_back(classification_json(p, *o.a, *o.b, o.t));
    } else {
        const auto& pts = p.breakpoints();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            rows.push_back(classification_json(p, pts[i].s, pts[i + 1].s, o.t));
    }
    Json doc = document(args, digest);
    doc["classification"] = rows;
    emit(o, doc, out);
    if (!o.json) {
        for (const auto& row : rows) {
            out << "[" << std::left << std::setw(12) << g(row["a"].get<double>()) << ", " << std::setw(12)
                << g(row["b"].get<double>()) << "] ";
            for (const char* c : {"yellow", "teal", "green", "red", "blue"})
                if (row[c].get<bool>()) out << ' ' << c;
            out << "\n";
        }
    }
    return 0;
}

int cmd_partition(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    auto [p, digest] = load(o.file);
    Partition P = build_partition(p, o);
    Json doc = document(args, digest);
    doc["partition"] = to_json(P);
    auto problems = check_partition(p, P);
    doc["partition"]["check"] = problems;
    emit(o, doc, out);
    if (!o.json) {
        print_partition_summary(P, out);
        for (const auto& pr : problems) out << "  check failed: " << pr << "\n";
    }
    return problems.empty() ? 0 : 1;
}

int cmd_bound(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    auto [p, digest] = load(o.file);
    BoundReport rep = build_bound(p, o);
    Json doc = document(args, digest);
    doc["bound"] = to_json(rep);
    if (!rep.notice.empty()) doc["notice"] = rep.notice;
    emit(o, doc, out);
    if (!o.json) print_bound_summary(rep, out);
    return 0;
}

int cmd_plot(Options o, std::ostream& out) {
    auto [p, digest] = load(o.file);
    o.kind = o.plot_kind;
    PlotOptions po;
    po.title = o.file;
    if (o.kind != "none") {
        po.partition = build_partition(p, o);
        po.title += " (" + to_string(po.partition->kind) + " partition)";
    }
    if (has_quadruple(o) || (o.d && o.D)) {
        DimParams dims = resolve_dims(o);
        po.d = dims.d();
        po.D = dims.D();
    } else {
        if (o.d) po.d = *o.d;
        if (o.D) po.D = *o.D;
    }
    std::string svg = render_svg(p, po);
    if (o.out.empty()) {
        out << svg;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw ArgumentError("cannot write " + o.out);
        f << svg;
    }
    return 0;
}

int cmd_search(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    SearchConfig cfg = search_config(o);
    Json doc = document(args, std::nullopt);
    if (!o.grids.empty()) {
        TightnessReport rep = tightness_report(cfg.d, cfg.D, o.grids, cfg);
        doc["tightness"] = to_json(rep);
        emit(o, doc, out);
        if (!o.json) {
            out << "tightness d=" << g(cfg.d) << " D=" << g(cfg.D) << "\n";
            for (const auto& row : rep.rows)
                out << "  grid " << std::setw(4) << row.grid_n << "  worst " << g(row.worst) << "  closed "
                    << g(row.closed) << "  gap " << g(row.gap) << "  (" << row.mode_used << ")\n";
            if (!rep.gap_shrinks) out << "  gap does not shrink with the grid\n";
        }
        for (const auto& row : rep.rows)
            if (row.gap < -cfg.eps) return 1;
        return 0;
    }

    SearchResult res;
    try {
        res = worst_case_search(cfg);
    } catch (const BudgetExceeded& e) {
        throw BudgetExceeded(std::string(e.what()) + " via --beam");
    }
    save_profile(res.worst_profile, o.worst_out);
    Json sr = to_json(res);
    sr["worst_profile_file"] = o.worst_out;
    sr["replay"] = "pindim bound " + o.worst_out + " --mode " + to_string(cfg.objective) + " --d " + g(cfg.d) +
                   " --D " + g(cfg.D) + " --r " + g(cfg.r) + " --s-min " + g(cfg.s_min());
    doc["search"] = sr;
    if (cfg.objective == Objective::distance_bound) doc["notice"] = kDenominatorNotice;
    emit(o, doc, out);
    const bool sound = res.gap >= -cfg.eps;
    if (!o.json) {
        out << "search " << to_string(cfg.objective) << " d=" << g(cfg.d) << " D=" << g(cfg.D) << " grid "
            << cfg.grid_n << " (" << res.mode_used << ")\n";
        out << "  visited " << res.visited << ", skipped " << res.skipped << "\n";
        out << "  worst value " << g(res.worst_value) << " r, closed form " << g(res.closed_form) << " r, gap "
            << g(res.gap) << "\n";
        out << "  worst profile written to " << o.worst_out << "\n";
        if (!sound) out << "  SOUNDNESS VIOLATION: gap below -" << g(cfg.eps) << "\n";
    }
    return sound ? 0 : 1;
}

// Everything cheap about one profile in one document.
int cmd_report(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
    auto [p, digest] = load(o.file);
    const double r = o.r.value_or(p.domain_end());
    Json doc = document(args, digest);
    Envelope env = measured_envelope(p, o.s_min.value_or(default_s_min(p)));
    doc["measured_envelope"] = {{"d_lower", env.d_lower}, {"D_upper", env.D_upper}, {"s_min", env.s_min}};
    doc["good_partition"] = to_json(good_partition(p, r, o.s_min));
    if (o.d || o.D || has_quadruple(o)) {
        DimParams dims = resolve_dims(o);
        doc["general_partition"] = to_json(general_partition(p, r, dims.d(), dims.D(), o.s_min));
        BoundReport rep = assemble_distance_bound(p, r, dims, o.s_min);
        doc["distance_bound"] = to_json(rep);
        doc["notice"] = rep.notice;
        if (!o.json) print_bound_summary(rep, out);
    }
    if (o.t) doc["rgb_partition"] = to_json(rgb_partition(p, r, *o.t, o.s_min));
    emit(o, doc, out);
    if (!o.json) {
        out << "measured envelope on [" << g(env.s_min) << ", " << g(p.domain_end()) << "]: d " << g(env.d_lower)
            << ", D " << g(env.D_upper) << "\n";
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"complexity-profile partitions and dimension bounds", "pindim"};
    app.set_version_flag("--version", std::string(PINDIM_VERSION));
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub, bool file) {
        if (file) sub->add_option("file", o.file, "profile JSON file")->required();
        sub->add_option("--out", o.out, "write the full record here");
        sub->add_flag("--json", o.json, "print the JSON document instead of the summary");
        sub->add_option("--s-min", o.s_min, "smallest precision considered");
        sub->add_option("--eps", o.eps, "slack, in units of r")->capture_default_str();
    };
    const std::vector<std::string> kinds{"none",        "good",    "admissible", "rgb",
                                         "all-yellow",  "general", "regular-pin"};
    const std::vector<std::string> modes{"distance", "projection", "packing", "all-yellow", "regular-pin"};

    auto* validate_cmd = app.add_subcommand("validate", "check profile invariants");
    common(validate_cmd, true);

    auto* classify_cmd = app.add_subcommand("classify", "colour predicates on [a, b] or on every segment");
    common(classify_cmd, true);
    classify_cmd->add_option("--a", o.a);
    classify_cmd->add_option("--b", o.b);
    classify_cmd->add_option("--t", o.t, "green length cap");

    auto* partition_cmd = app.add_subcommand("partition", "build a partition");
    common(partition_cmd, true);
    partition_cmd->add_option("--kind", o.kind)->check(CLI::IsMember(std::vector<std::string>(kinds.begin() + 1, kinds.end())))
        ->capture_default_str();
    add_dims(partition_cmd, o);
    partition_cmd->add_option("--r", o.r, "precision (default: profile end)");
    partition_cmd->add_option("--t", o.t);
    partition_cmd->add_option("--M", o.M);
    partition_cmd->add_option("--a", o.a);
    partition_cmd->add_option("--b", o.b);

    auto* bound_cmd = app.add_subcommand("bound", "assemble a bound");
    common(bound_cmd, true);
    bound_cmd->add_option("--mode", o.mode)->check(CLI::IsMember(modes))->capture_default_str();
    add_dims(bound_cmd, o);
    bound_cmd->add_option("--r", o.r, "precision (default: profile end)");
    bound_cmd->add_option("--t", o.t, "projection window");
    bound_cmd->add_option("--eps-x", o.eps_x, "regular-pin spread of the pin");

    auto* plot_cmd = app.add_subcommand("plot", "SVG of the profile and a partition");
    common(plot_cmd, true);
    plot_cmd->add_option("--partition", o.plot_kind)->check(CLI::IsMember(kinds))->capture_default_str();
    add_dims(plot_cmd, o);
    plot_cmd->add_option("--r", o.r);
    plot_cmd->add_option("--t", o.t);
    plot_cmd->add_option("--M", o.M);
    plot_cmd->add_option("--a", o.a);
    plot_cmd->add_option("--b", o.b);

    auto* search_cmd = app.add_subcommand("search", "adversarial search over grid profiles");
    common(search_cmd, false);
    search_cmd->add_option("--objective", o.objective)
        ->check(CLI::IsMember(std::vector<std::string>{"distance", "projection", "packing"}))
        ->capture_default_str();
    search_cmd->add_option("--d", o.d)->required();
    search_cmd->add_option("--D", o.D)->required();
    search_cmd->add_option("--r", o.r);
    search_cmd->add_option("--t", o.t, "projection window as a fraction of r");
    search_cmd->add_option("--grid", o.grid, "cells")->capture_default_str();
    search_cmd->add_flag("--beam", o.beam);
    search_cmd->add_flag("--exhaustive", o.exhaustive);
    search_cmd->add_option("--beam-width", o.beam_width)->capture_default_str();
    search_cmd->add_option("--budget", o.budget, "enumeration budget (default PINDIM_BUDGET or 1e7)");
    search_cmd->add_option("--levels", o.levels, "slope alphabet")->delimiter(',');
    search_cmd->add_option("--worst-out", o.worst_out)->capture_default_str();
    search_cmd->add_option("--grids", o.grids, "tightness sweep over these grid sizes")->delimiter(',');

    auto* report_cmd = app.add_subcommand("report", "envelope, partitions and distance bound of one profile");
    common(report_cmd, true);
    add_dims(report_cmd, o);
    report_cmd->add_option("--r", o.r);
    report_cmd->add_option("--t", o.t);

    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << PINDIM_VERSION << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(o, args, out);
        if (*classify_cmd) return cmd_classify(o, args, out);
        if (*partition_cmd) return cmd_partition(o, args, out);
        if (*bound_cmd) return cmd_bound(o, args, out);
        if (*plot_cmd) return cmd_plot(o, out);
        if (*search_cmd) return cmd_search(o, args, out);
        if (*report_cmd) return cmd_report(o, args, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace pindim::cli
