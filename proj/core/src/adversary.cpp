#include "pindim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "pindim/bounds.hpp"
#include "pindim/classify.hpp"
#include "pindim/errors.hpp"
#include "pindim/partition.hpp"
#include "util.hpp"

namespace pindim {

namespace {

using detail::fmt;

bool lex_less(const Profile& a, const Profile& b) {
    const auto& x = a.breakpoints();
    const auto& y = b.breakpoints();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const Breakpoint& u, const Breakpoint& v) {
                                            return u.s != v.s ? u.s < v.s : u.v < v.v;
                                        });
}

bool inside_envelope(const SearchConfig& cfg, double s, double f) {
    if (s < cfg.s_min() - kTau) return true;
    return f >= cfg.d * s - kTau && f <= cfg.D * s + kTau;
}

struct Node {
    std::vector<double> slopes;
    double f = 0.0;
    double score = 0.0;
};

std::vector<Node> beam_search(const SearchConfig& cfg) {
    const double h = cfg.cell();
    std::vector<Node> beam{Node{}};
    for (int k = 0; k < cfg.grid_n; ++k) {
        const double s = cfg.r * (k + 1) / cfg.grid_n;
        std::vector<Node> next;
        for (const auto& node : beam) {
            for (double m : cfg.slope_levels) {
                double f = node.f + m * h;
                if (!inside_envelope(cfg, s, f)) continue;
                Node child{node.slopes, f, 0.0};
                child.slopes.push_back(m);
                if (s > cfg.s_min() + kTau) {
                    try {
                        child.score = evaluate(cfg, grid_profile(s, child.slopes), s).score;
                    } catch (const Error&) {
                        child.score = std::numeric_limits<double>::infinity();
                    }
                }
                next.push_back(std::move(child));
            }
        }
        std::stable_sort(next.begin(), next.end(), [](const Node& a, const Node& b) {
            if (a.score != b.score) return a.score < b.score;
            return a.slopes < b.slopes;
        });
        // Keep heights diverse: take the best node of every height first, then
        // the second best, and so on. The slow stretch an adversary needs only
        // pays off later, so the prefix score alone would collapse the beam.
        std::vector<std::pair<double, int>> rank;  // (height, rank within height)
        std::vector<std::size_t> order(next.size());
        {
            std::vector<double> heights;
            std::vector<int> seen;
            for (std::size_t i = 0; i < next.size(); ++i) {
                double key = std::round(next[i].f / (h * 1e-6)) * (h * 1e-6);
                auto it = std::find(heights.begin(), heights.end(), key);
                int k;
                if (it == heights.end()) {
                    heights.push_back(key);
                    seen.push_back(1);
                    k = 0;
                } else {
                    k = seen[it - heights.begin()]++;
                }
                rank.emplace_back(key, k);
                order[i] = i;
            }
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return rank[a].second < rank[b].second; });
        std::vector<Node> kept;
        for (std::size_t i = 0; i < order.size() && kept.size() < static_cast<std::size_t>(cfg.beam_width); ++i) {
            kept.push_back(std::move(next[order[i]]));
        }
        next = std::move(kept);
        beam = std::move(next);
    }
    return beam;
}

bool use_beam(const SearchConfig& cfg) {
    if (cfg.mode == SearchMode::beam) return true;
    const bool fits = cfg.candidate_count() <= cfg.effective_budget();
    if (cfg.mode == SearchMode::exhaustive && !fits) {
        throw BudgetExceeded(std::to_string(cfg.slope_levels.size()) + "^" + std::to_string(cfg.grid_n) +
                             " candidates exceed the enumeration budget of " +
                             std::to_string(cfg.effective_budget()) + "; use beam mode");
    }
    return !fits;
}

}  // namespace

void SearchConfig::validate() const {
    if (grid_n < 4) throw ArgumentError("grid_n must be at least 4");
    if (slope_levels.empty()) throw ArgumentError("empty slope set");
    for (double m : slope_levels) {
        if (!(m >= 0.0 && m <= 2.0)) throw ArgumentError("slope level " + fmt(m) + " outside [0, 2]");
    }
    if (!(d >= 1.0 && d <= D + 1e-12 && D <= 2.0 + 1e-12)) throw PreconditionError("need 1 <= d <= D <= 2");
    if (!(r > 0.0)) throw ArgumentError("r must be positive");
    if (beam_width < 1) throw ArgumentError("beam width must be positive");
}

std::uint64_t SearchConfig::effective_budget() const {
    if (budget) return *budget;
    if (const char* env = std::getenv("PINDIM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw ArgumentError(std::string("PINDIM_BUDGET is not a count: ") + env);
        return v;
    }
    return kDefaultBudget;
}

std::uint64_t SearchConfig::candidate_count() const {
    const std::uint64_t base = slope_levels.size();
    std::uint64_t n = 1;
    for (int i = 0; i < grid_n; ++i) {
        if (base != 0 && n > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        n *= base;
    }
    return n;
}

Profile grid_profile(double r, const std::vector<double>& slopes) {
    const int n = static_cast<int>(slopes.size());
    if (n == 0) throw ArgumentError("grid profile needs at least one cell");
    std::vector<Breakpoint> pts{{0.0, 0.0}};
    double f = 0.0;
    for (int k = 0; k < n; ++k) {
        double s0 = r * k / n, s1 = r * (k + 1) / n;
        f += slopes[k] * (s1 - s0);
        pts.push_back({s1, f});
    }
    return Profile(std::move(pts));
}

void enumerate_profiles(const SearchConfig& cfg, const std::function<void(const Profile&)>& visit) {
    cfg.validate();
    if (use_beam(cfg)) {
        for (const auto& node : beam_search(cfg)) visit(grid_profile(cfg.r, node.slopes));
        return;
    }
    const double h = cfg.cell();
    std::vector<double> slopes;
    std::function<void(int, double)> dfs = [&](int k, double f) {
        if (k == cfg.grid_n) {
            visit(grid_profile(cfg.r, slopes));
            return;
        }
        const double s = cfg.r * (k + 1) / cfg.grid_n;
        for (double m : cfg.slope_levels) {
            double g = f + m * h;
            if (!inside_envelope(cfg, s, g)) continue;
            slopes.push_back(m);
            dfs(k + 1, g);
            slopes.pop_back();
        }
    };
    dfs(0, 0.0);
}

Evaluation evaluate(const SearchConfig& cfg, const Profile& p, double r) {
    const double lo = cfg.s_min();
    Evaluation ev;
    switch (cfg.objective) {
        case Objective::distance_bound: {
            auto rep = assemble_distance_bound(p, r, DimParams::collapsed(cfg.d, cfg.D, cfg.eps), lo);
            ev.value = rep.assembled_value / r;
            ev.closed = rep.closed_form_value / r;
            ev.score = ev.value - ev.closed;
            break;
        }
        case Objective::projection_bound: {
            double t = cfg.t_fraction.value_or(projection_min_t(cfg.d, cfg.D, 1.0)) * r;
            auto rep = assemble_projection_bound(p, r, t, cfg.d, cfg.D, cfg.eps, lo);
            ev.value = rep.assembled_value / r;
            ev.closed = rep.closed_form_value / r;
            ev.score = ev.closed - ev.value;
            break;
        }
        case Objective::packing_bound: {
            auto rep = assemble_packing_bound(detail::truncate(p, r), cfg.d, cfg.D, cfg.eps, lo);
            ev.value = rep.assembled_value / rep.r;
            ev.closed = packing_closed_form(cfg.D);
            ev.score = ev.value - ev.closed;
            break;
        }
    }
    return ev;
}

SearchResult worst_case_search(const SearchConfig& cfg) {
    cfg.validate();
    SearchResult res;
    res.mode_used = use_beam(cfg) ? "beam" : "exhaustive";
    bool found = false;
    double best = 0.0;
    enumerate_profiles(cfg, [&](const Profile& p) {
        ++res.visited;
        Evaluation ev;
        try {
            ev = evaluate(cfg, p, cfg.r);
        } catch (const Error&) {
            ++res.skipped;
            return;
        }
        if (!found || ev.score < best || (ev.score == best && lex_less(p, res.worst_profile))) {
            found = true;
            best = ev.score;
            res.worst_profile = p;
            res.worst_value = ev.value;
            res.closed_form = ev.closed;
            res.gap = ev.score;
        }
    });
    if (!found) throw ConstructionError("no envelope-valid profile on this grid could be evaluated");
    return res;
}

double dp_oracle(const Profile& p, double r, double d, double D, std::optional<int> grid_n,
                 std::optional<double> s_min) {
    std::vector<double> xs;
    double lo;
    if (grid_n) {
        if (*grid_n < 1) throw ArgumentError("grid_n must be positive");
        const double h = r / *grid_n;
        for (const auto& bp : p.breakpoints()) {
            double k = bp.s / h;
            if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, k)) {
                throw ArgumentError("off-grid breakpoint at s=" + fmt(bp.s));
            }
        }
        for (int k = 0; k <= *grid_n; ++k) xs.push_back(r * k / *grid_n);
        lo = s_min.value_or(h);
    } else {
        for (const auto& bp : p.breakpoints()) xs.push_back(bp.s);
        xs.push_back(r);
        lo = s_min.value_or(default_s_min(p));
    }
    auto P = general_partition(p, r, d, D, lo);

    xs.push_back(P.left());
    for (const auto& iv : P.intervals) xs.push_back(iv.b);
    std::sort(xs.begin(), xs.end());
    std::vector<double> pts;
    for (double x : xs) {
        if (x < 0.0 || x > r + kTau) continue;
        if (pts.empty() || x - pts.back() > 1e-12 * std::max(1.0, r)) pts.push_back(std::min(x, r));
    }
    pts.back() = r;

    const double weak = general_teal_ratio_weak(d, D);
    const double minus_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> V(pts.size(), minus_inf);
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double xj = pts[j];
        if (xj <= lo + kTau) {
            V[j] = xj;
            continue;
        }
        for (std::size_t i = 0; i < j; ++i) {
            if (V[i] == minus_inf) continue;
            const double xi = pts[i];
            double best = minus_inf;
            if (is_yellow(p, xi, xj)) best = xj - xi;
            if (is_teal(p, xi, xj) && (xi < lo || xi >= weak * xj - 1e-6 * xj)) {
                best = std::max(best, growth(p, xi, xj));
            }
            if (best != minus_inf) V[j] = std::max(V[j], V[i] + best);
        }
    }
    return V.back();
}

TightnessReport tightness_report(double d, double D, const std::vector<int>& grids, SearchConfig base) {
    TightnessReport rep;
    for (int n : grids) {
        SearchConfig cfg = base;
        cfg.d = d;
        cfg.D = D;
        cfg.grid_n = n;
        auto res = worst_case_search(cfg);
        rep.rows.push_back({n, res.worst_value, res.closed_form, res.gap, res.mode_used});
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].gap > rep.rows[i - 1].gap + 1e-9) rep.gap_shrinks = false;
    }
    return rep;
}

double random_profile_s_min(const RandomProfileOptions& opt) { return opt.r / std::ldexp(1.0, opt.head_doublings); }

Profile random_profile(std::mt19937_64& rng, double d, double D, const RandomProfileOptions& opt) {
    if (!(d >= 0.0 && d <= D && D <= 2.0)) throw ArgumentError("random profile needs 0 <= d <= D <= 2");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double a, double b) { return a + (b - a) * unit(rng); };

    double s = random_profile_s_min(opt);
    double f = uniform(d, D) * s;
    std::vector<Breakpoint> pts{{0.0, 0.0}, {s, f}};
    while (s < opt.r) {
        double L = s * uniform(0.05, 0.5);
        if (opt.r - (s + L) < 0.05 * s) L = opt.r - s;
        double lo = std::max(0.0, (d * (s + L) - f) / L);
        double hi = std::min(2.0, (D * (s + L) - f) / L);
        if (hi < lo) hi = lo;
        double u = unit(rng);
        double m;
        if (opt.min_rising_slope) {
            double flo = std::max(lo, *opt.min_rising_slope);
            if (lo <= 0.0 && u < 1.0 / 3.0) m = 0.0;
            else if (u < 2.0 / 3.0) m = unit(rng) < 0.5 ? flo : hi;
            else m = uniform(flo, std::max(flo, hi));
            m = std::min(m, std::max(hi, lo));
        } else {
            if (u < 1.0 / 3.0) m = lo;
            else if (u < 2.0 / 3.0) m = hi;
            else m = uniform(lo, hi);
        }
        s += L;
        f += m * L;
        if (s > opt.r - kTau) s = opt.r;
        pts.push_back({s, f});
    }
    return Profile(std::move(pts));
}

std::string to_string(Objective o) {
    switch (o) {
        case Objective::distance_bound: return "distance";
        case Objective::projection_bound: return "projection";
        case Objective::packing_bound: return "packing";
    }
    return "unknown";
}

Objective objective_from_string(const std::string& name) {
    if (name == "distance" || name == "distance_bound") return Objective::distance_bound;
    if (name == "projection" || name == "projection_bound") return Objective::projection_bound;
    if (name == "packing" || name == "packing_bound") return Objective::packing_bound;
    throw ArgumentError("unknown objective '" + name + "'");
}

std::string to_string(SearchMode m) {
    switch (m) {
        case SearchMode::automatic: return "auto";
        case SearchMode::exhaustive: return "exhaustive";
        case SearchMode::beam: return "beam";
    }
    return "unknown";
}

SearchMode search_mode_from_string(const std::string& name) {
    if (name == "auto") return SearchMode::automatic;
    if (name == "exhaustive") return SearchMode::exhaustive;
    if (name == "beam") return SearchMode::beam;
    throw ArgumentError("unknown search mode '" + name + "'");
}

}  // namespace pindim
