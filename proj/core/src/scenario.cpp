#include "restproj/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "restproj/cloud.hpp"
#include "restproj/conegeom.hpp"
#include "restproj/covers.hpp"
#include "restproj/curve.hpp"
#include "restproj/errors.hpp"
#include "restproj/fitting.hpp"
#include "restproj/parallel.hpp"
#include "restproj/pipeline.hpp"
#include "restproj/projection.hpp"
#include "restproj/threecones.hpp"

namespace restproj {

namespace {

const char* kVersion = "0.1.0";

double uniform01(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const std::uint64_t bits = state ^ (state >> 31);
    return double(bits >> 11) * 0x1.0p-53;
}

Vec3 random_in_ball(std::uint64_t& state) {
    for (;;) {
        const Vec3 v{2.0 * uniform01(state) - 1.0, 2.0 * uniform01(state) - 1.0,
                     2.0 * uniform01(state) - 1.0};
        if (norm(v) <= 1.0) return v;
    }
}

DirectionCurve make_curve(const std::string& name) {
    if (name == "special") return DirectionCurve::special();
    if (name == "planar") {
        return DirectionCurve::custom(Interval{0.0, 2.0 * M_PI}, [](double th) {
            const double c = std::cos(th), s = std::sin(th);
            CurveJet j;
            j.g = {c, s, 0.0};
            j.dg = {-s, c, 0.0};
            j.ddg = {-c, -s, 0.0};
            return j;
        });
    }
    throw config_error("unknown curve: " + name);
}

IFSSpec make_ifs(const std::string& name) {
    IFSSpec spec;
    if (name == "cantor2") {
        spec.ratio = 1.0 / 3.0;
        spec.translations = {{-1.0 / 3.0, 0, 0}, {1.0 / 3.0, 0, 0}};
    } else if (name == "cantor4") {
        spec.ratio = 1.0 / 3.0;
        spec.translations = {{-0.4, -0.4, 0}, {-0.4, 0.4, 0}, {0.4, -0.4, 0}, {0.4, 0.4, 0}};
    } else if (name == "cube8") {
        spec.ratio = 0.5;
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1})
                    spec.translations.push_back({0.25 * sx, 0.25 * sy, 0.25 * sz});
    } else if (name == "sierpinski3") {
        spec.ratio = 0.5;
        for (int k = 0; k < 3; ++k) {
            const double ang = M_PI / 2.0 + 2.0 * M_PI * double(k) / 3.0;
            spec.translations.push_back({0.4 * std::cos(ang), 0.4 * std::sin(ang), 0.0});
        }
    } else {
        throw config_error("unknown ifs preset: " + name);
    }
    return spec;
}

std::string fmt_cell(double v) { return format_double(v); }

struct RowBuilder {
    ResultTable& t;
    void operator()(std::initializer_list<std::string> cells) { t.rows.emplace_back(cells); }
};

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ScenarioConfig::validate() const {
    static const char* names[] = {"curve-check", "sublevel",   "dimsweep",
                                  "twocones",    "threecones", "pipeline"};
    if (std::find_if(std::begin(names), std::end(names),
                     [&](const char* n) { return scenario == n; }) == std::end(names))
        throw config_error("scenario must be one of curve-check, sublevel, dimsweep, twocones, "
                           "threecones, pipeline (got '" + scenario + "')");
    if (delta_k_min < 1 || delta_k_max < delta_k_min)
        throw config_error("delta ladder: need 1 <= delta_k_min <= delta_k_max");
    if (!(tau > 0.0 && tau < 0.5)) throw config_error("tau must lie in (0, 1/2)");
    if (!(c > 0.0 && c <= 0.25)) throw config_error("c must lie in (0, 1/4]");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw config_error("epsilon must lie in (0,1)");
    if (!(sigma > 0.5)) throw config_error("sigma must exceed 1/2 (line family)");
    if (!(sigma_plane > 1.0)) throw config_error("sigma_plane must exceed 1 (plane family)");
    if (theta_samples < 2) throw config_error("theta_samples must be at least 2");
    if (ifs_depth < 0 || ifs_depth > 12) throw config_error("ifs_depth out of range [0,12]");
    if (boxdim_k_max - boxdim_k_min < 4)
        throw config_error("box-dimension k range must span at least 4 octaves");
    if (n_pairs < 1) throw config_error("n_pairs must be positive");
    if (threads < 1 || threads > 256) throw config_error("threads out of range [1,256]");
}

std::vector<double> ScenarioConfig::delta_ladder() const {
    std::vector<double> out;
    for (int k = delta_k_min; k <= delta_k_max; ++k) out.push_back(std::pow(2.0, -k));
    return out;
}

namespace {

void apply_kv(ScenarioConfig& c, const std::string& key, const std::string& value) {
    auto as_double = [&](const std::string& v) {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw config_error("bad numeric value for " + key + ": " + v);
        return d;
    };
    auto as_int = [&](const std::string& v) { return int(std::llround(as_double(v))); };
    auto as_vec = [&](const std::string& v) {
        Vec3 out;
        if (std::sscanf(v.c_str(), "%lf,%lf,%lf", &out.x, &out.y, &out.z) != 3)
            throw config_error("bad vector value for " + key + ": " + v + " (want x,y,z)");
        return out;
    };
    if (key == "scenario") c.scenario = value;
    else if (key == "curve") c.curve = value;
    else if (key == "ifs") c.ifs = value;
    else if (key == "ifs_depth") c.ifs_depth = as_int(value);
    else if (key == "delta_k_min") c.delta_k_min = as_int(value);
    else if (key == "delta_k_max") c.delta_k_max = as_int(value);
    else if (key == "epsilon") c.epsilon = as_double(value);
    else if (key == "tau") c.tau = as_double(value);
    else if (key == "c") c.c = as_double(value);
    else if (key == "sigma") c.sigma = as_double(value);
    else if (key == "sigma_plane") c.sigma_plane = as_double(value);
    else if (key == "s") c.s = as_double(value);
    else if (key == "slab_C") c.slab_C = as_double(value);
    else if (key == "R") c.R = as_double(value);
    else if (key == "theta_samples") c.theta_samples = as_int(value);
    else if (key == "boxdim_k_min") c.boxdim_k_min = as_int(value);
    else if (key == "boxdim_k_max") c.boxdim_k_max = as_int(value);
    else if (key == "n_pairs") c.n_pairs = as_int(value);
    else if (key == "seed") c.seed = std::uint64_t(std::stoull(value));
    else if (key == "threads") c.threads = unsigned(as_int(value));
    else if (key == "out") c.out = value;
    else if (key == "p") c.p = as_vec(value);
    else if (key == "q") c.q = as_vec(value);
    else throw config_error("unknown config key: " + key);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw config_error("expected 'key = value': " + line);
        apply_kv(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    if (c.scenario.empty()) throw config_error("config missing the 'scenario' key");
    return c;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

void write_csv(std::ostream& os, const ResultTable& table) {
    os << "#schema=" << table.schema << '\n';
    for (const auto& [k, v] : table.metadata) os << '#' << k << '=' << v << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << '\n';
    }
}

namespace {

void common_metadata(ResultTable& t, const ScenarioConfig& cfg) {
    t.metadata.emplace_back("version", kVersion);
    t.metadata.emplace_back("seed", std::to_string(cfg.seed));
}

ResultTable scenario_curve_check(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "curve-check-v1";
    common_metadata(t, cfg);
    const DirectionCurve curve = make_curve(cfg.curve);
    const int n = cfg.theta_samples;
    t.columns = {"theta", "margin"};
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    const Interval J = curve.domain();
    for (int i = 0; i < n; ++i) {
        const double th = J.lo + J.length() * double(i) / double(n - 1);
        const CurveJet j = curve.eval(th);
        const double m = std::fabs(triple(j.g, j.dg, j.ddg));
        mn = std::min(mn, m);
        mx = std::max(mx, m);
        t.rows.push_back({fmt_cell(th), fmt_cell(m)});
    }
    t.metadata.emplace_back("margin_min", format_double(mn));
    t.metadata.emplace_back("margin_max", format_double(mx));
    t.metadata.emplace_back("curve", cfg.curve);
    return t;
}

ResultTable scenario_sublevel(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "sublevel-v1";
    common_metadata(t, cfg);
    const DirectionCurve curve = make_curve(cfg.curve);
    const ProjectionFamily rho(FamilyTag::line, curve);
    const ProjectionFamily pi(FamilyTag::plane, curve);
    const Vec3 xi_rho = Vec3{1, 0, -1} * (1.0 / std::sqrt(2.0));
    const Vec3 xi_pi = curve.eval(0.0).g;
    const std::vector<double> ladder = cfg.delta_ladder();

    t.columns = {"family", "delta", "measure"};
    struct Item { const ProjectionFamily* fam; const char* name; Vec3 xi; double delta; };
    std::vector<Item> items;
    for (double d : ladder) items.push_back({&rho, "rho", xi_rho, d});
    for (double d : ladder) items.push_back({&pi, "pi", xi_pi, d});

    const auto measures = parallel_map<double>(
        items.size(), cfg.threads, std::function<double(std::size_t)>([&](std::size_t i) {
            return sublevel_measure(*items[i].fam, items[i].xi, items[i].delta,
                                    cfg.theta_samples);
        }));

    std::vector<double> ys_rho, ys_pi;
    for (std::size_t i = 0; i < items.size(); ++i) {
        t.rows.push_back({items[i].name, fmt_cell(items[i].delta), fmt_cell(measures[i])});
        (items[i].fam == &rho ? ys_rho : ys_pi).push_back(measures[i]);
    }
    t.metadata.emplace_back("slope_rho", format_double(fit_loglog_slope(ladder, ys_rho).slope));
    t.metadata.emplace_back("slope_pi", format_double(fit_loglog_slope(ladder, ys_pi).slope));
    return t;
}

ResultTable scenario_dimsweep(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "dimsweep-v1";
    common_metadata(t, cfg);
    const DirectionCurve curve = make_curve(cfg.curve);
    const IFSSpec spec = make_ifs(cfg.ifs);
    const WeightedPointCloud cloud = generate_ifs(spec, cfg.ifs_depth);
    const ProjectionFamily pi(FamilyTag::plane, curve);
    const ProjectionFamily rho(FamilyTag::line, curve);

    t.columns = {"theta", "family", "boxdim", "fit_r2"};
    struct Out { double bd_pi, r2_pi, bd_rho, r2_rho; };
    const Interval J = curve.domain();
    const int n = cfg.theta_samples;
    const auto outs = parallel_map<Out>(
        std::size_t(n), cfg.threads, std::function<Out(std::size_t)>([&](std::size_t i) {
            const double th = J.lo + J.length() * (double(i) + 0.5) / double(n);
            const BoxDimension bpi =
                box_dimension(pushforward(cloud, pi, th), cfg.boxdim_k_min, cfg.boxdim_k_max);
            const BoxDimension brho =
                box_dimension(pushforward(cloud, rho, th), cfg.boxdim_k_min, cfg.boxdim_k_max);
            return Out{bpi.slope, bpi.fit_quality, brho.slope, brho.fit_quality};
        }));
    int good_pi = 0, good_rho = 0;
    for (int i = 0; i < n; ++i) {
        const double th = J.lo + J.length() * (double(i) + 0.5) / double(n);
        t.rows.push_back({fmt_cell(th), "pi", fmt_cell(outs[std::size_t(i)].bd_pi),
                          fmt_cell(outs[std::size_t(i)].r2_pi)});
        t.rows.push_back({fmt_cell(th), "rho", fmt_cell(outs[std::size_t(i)].bd_rho),
                          fmt_cell(outs[std::size_t(i)].r2_rho)});
        if (outs[std::size_t(i)].bd_pi >= 0.95) ++good_pi;
        if (outs[std::size_t(i)].bd_rho >= 0.45) ++good_rho;
    }
    t.metadata.emplace_back("similarity_dimension", format_double(spec.similarity_dimension()));
    t.metadata.emplace_back("frac_pi_ge_0.95", format_double(double(good_pi) / double(n)));
    t.metadata.emplace_back("frac_rho_ge_0.45", format_double(double(good_rho) / double(n)));
    t.metadata.emplace_back("ifs", cfg.ifs);
    t.metadata.emplace_back("ifs_depth", std::to_string(cfg.ifs_depth));
    return t;
}

ResultTable scenario_twocones(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "twocones-v1";
    common_metadata(t, cfg);
    const DirectionCurve curve = make_curve(cfg.curve);
    const Interval J{1.5 * M_PI - M_PI / 6.0, 1.5 * M_PI + M_PI / 6.0};
    const Vec3 p = cfg.p.value_or(Vec3{0.0, 0.0, -0.5});
    const std::vector<double> ladder = cfg.delta_ladder();

    TwoConesOptions opt;
    opt.slab_exponent_C = cfg.slab_C;

    t.columns = {"delta", "case", "n_balls", "max_radius", "cap_radius", "slab_width"};
    std::vector<double> counts;
    for (double d : ladder) {
        const TwoConesResult r = two_cones_cover(curve, J, p, d, cfg.epsilon, cfg.tau, opt);
        double mx = 0.0;
        for (const Ball& b : r.cover.balls) mx = std::max(mx, b.radius);
        t.rows.push_back({fmt_cell(d), std::string(1, r.case_tag),
                          std::to_string(r.cover.balls.size()), fmt_cell(mx),
                          fmt_cell(r.cap_balls[0].radius), fmt_cell(r.slab_width)});
        counts.push_back(double(r.cover.balls.size()));
    }
    bool fit_ok = true;
    try {
        const LinearFit f = fit_loglog_slope(ladder, counts);
        t.metadata.emplace_back("count_exponent", format_double(-f.slope));
    } catch (const std::invalid_argument&) {
        fit_ok = false;
    }
    if (!fit_ok) t.metadata.emplace_back("count_exponent", "nan");
    t.metadata.emplace_back("p", format_double(p.x) + "," + format_double(p.y) + "," +
                                     format_double(p.z));
    t.metadata.emplace_back("epsilon", format_double(cfg.epsilon));
    t.metadata.emplace_back("tau", format_double(cfg.tau));
    t.metadata.emplace_back("slab_C", format_double(cfg.slab_C));
    return t;
}

ResultTable scenario_threecones(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "threecones-v1";
    common_metadata(t, cfg);
    ThreeConesConstants kk;
    kk.R = cfg.R;
    const std::vector<double> ladder = cfg.delta_ladder();

    struct Pair { Vec3 p, q; };
    std::vector<Pair> pairs;
    if (cfg.p && cfg.q) {
        pairs.push_back({*cfg.p, *cfg.q});
    } else {
        const double dc = std::pow(ladder.back(), cfg.c);
        for (int i = 0; i < cfg.n_pairs; ++i) {
            std::uint64_t st = mix_seed(cfg.seed, std::uint64_t(i));
            for (;;) {
                const Vec3 p = random_in_ball(st), q = random_in_ball(st);
                if (norm(p) >= dc && norm(q) >= dc && norm(p - q) >= dc) {
                    pairs.push_back({p, q});
                    break;
                }
            }
        }
    }

    t.columns = {"delta", "px", "py", "pz", "qx", "qy", "qz", "branch", "n_lines", "radius"};
    int nonempty = 0;
    for (double d : ladder) {
        for (const Pair& pr : pairs) {
            const ThreeConesResult r = three_cones_cover(pr.p, pr.q, d, cfg.c, kk);
            const char* branch = r.branch == ThreeConesBranch::near_cone  ? "near_cone"
                                 : r.branch == ThreeConesBranch::separated ? "separated"
                                                                           : "generic";
            if (!r.lines.empty()) ++nonempty;
            t.rows.push_back({fmt_cell(d), fmt_cell(pr.p.x), fmt_cell(pr.p.y), fmt_cell(pr.p.z),
                              fmt_cell(pr.q.x), fmt_cell(pr.q.y), fmt_cell(pr.q.z), branch,
                              std::to_string(r.lines.size()), fmt_cell(r.radius)});
        }
    }
    t.metadata.emplace_back("R", format_double(cfg.R));
    t.metadata.emplace_back("c", format_double(cfg.c));
    t.metadata.emplace_back("runs_with_lines", std::to_string(nonempty));
    return t;
}

ResultTable scenario_pipeline(const ScenarioConfig& cfg) {
    ResultTable t;
    t.schema = "pipeline-v1";
    common_metadata(t, cfg);
    const DirectionCurve curve = make_curve(cfg.curve);
    const IFSSpec spec = make_ifs(cfg.ifs);
    const int depth = std::min(cfg.ifs_depth, 5);
    const WeightedPointCloud cloud = generate_ifs(spec, depth);
    const ProjectionFamily rho(FamilyTag::line, curve);
    const std::vector<double> thetas = uniform_thetas(curve.domain(), cfg.theta_samples);
    const double w = curve.domain().length() / double(cfg.theta_samples);

    t.columns = {"name", "lhs", "rhs", "delta", "fitted_exponent"};
    const std::vector<double> ladder = cfg.delta_ladder();

    // tube-energy chain rows: chain bound <= energy, exact on atoms
    std::vector<double> energies;
    for (double d : ladder) {
        const TubeSystem sys = build_tube_system(cloud, rho, thetas, w, d, cfg.sigma, 64.0);
        const TubeEnergyResult e = tube_energy(cloud, sys);
        double chain = 0.0;
        for (const TubeEnergyRow& row : e.rows) {
            const double n = double(std::max<std::size_t>(row.n_tubes, 1));
            const double o = double(std::max(row.max_multiplicity, 1));
            chain += w * row.union_mass * row.union_mass / (n * o);
        }
        energies.push_back(e.energy_theta_first);
        t.rows.push_back({"energy_chain", fmt_cell(chain), fmt_cell(e.energy_theta_first),
                          fmt_cell(d), ""});
    }
    t.metadata.emplace_back("energy_exponent",
                            format_double(fit_loglog_slope(ladder, energies).slope));

    // littleMass checks on a pushforward cloud
    {
        const ProjectionFamily bad(FamilyTag::bad_plane, curve);
        const WeightedPointCloud flat = pushforward(cloud, bad, thetas[thetas.size() / 3]);
        std::uint64_t st = mix_seed(cfg.seed, 777);
        int ok = 0;
        const int trials = 100;
        for (int i = 0; i < trials; ++i) {
            for (;;) {
                BallRegion reg;
                reg.center = {2.0 * uniform01(st) - 1.0, 2.0 * uniform01(st) - 1.0, 0.0};
                reg.radius = 0.05 + 0.5 * uniform01(st);
                int inside = 0;
                for (const Vec3& pt : flat.points)
                    if (dist(pt, reg.center) <= reg.radius && ++inside >= 2) break;
                if (inside >= 2) {
                    if (mass_bound_check(flat, reg, cfg.s).ok) ++ok;
                    break;
                }
            }
        }
        t.rows.push_back({"littlemass_ok_fraction", fmt_cell(double(ok) / trials), fmt_cell(1.0),
                          fmt_cell(ladder.back()), ""});
    }

    // good-set dichotomy and the heavy-pair aggregate at the finest scale
    {
        const double d = ladder.back();
        const GoodSetMasses gs = good_set_masses(cloud, curve, thetas, d, cfg.tau);
        t.rows.push_back({"good_set_split", fmt_cell(gs.g), fmt_cell(gs.g_plus + gs.g_minus),
                          fmt_cell(d), ""});
        const ConeField plus(curve, thetas, std::pow(d, cfg.tau), ConeDirections::gamma,
                             ConeSide::plus);
        const HeavyTupleResult h = heavy_tuple_search(cloud, plus, 2, 0.05, 0.01);
        t.rows.push_back({"holder_pair", fmt_cell(h.holder_lower_bound),
                          fmt_cell(h.holder_aggregate), fmt_cell(d), ""});
    }

    // restricted sublevel scaling at tau
    {
        std::vector<double> lengths;
        for (double d : ladder) {
            const SublevelProbe probe =
                make_sublevel_probe(curve, 2.0, std::pow(d, cfg.tau), 1 << 15);
            const ConeField field(curve, probe.thetas, std::pow(d, cfg.tau), ConeDirections::bad,
                                  ConeSide::two_sided);
            const RestrictedSublevel rs =
                restricted_sublevel(Vec3{0, 0, 0}, probe.xi, field, d, cfg.tau);
            lengths.push_back(rs.length);
            t.rows.push_back({"restricted_sublevel", fmt_cell(rs.length),
                              fmt_cell(std::pow(d, 1.0 - cfg.tau)), fmt_cell(d), ""});
        }
        t.metadata.emplace_back("restricted_sublevel_exponent",
                                format_double(fit_loglog_slope(ladder, lengths).slope));
    }

    t.metadata.emplace_back("sigma", format_double(cfg.sigma));
    t.metadata.emplace_back("tau", format_double(cfg.tau));
    t.metadata.emplace_back("s", format_double(cfg.s));
    t.metadata.emplace_back("c0", format_double(6.0 / (M_PI * M_PI)));
    t.metadata.emplace_back("ifs", cfg.ifs);
    return t;
}

} // namespace

ResultTable run_scenario(const ScenarioConfig& config) {
    config.validate();
    ResultTable t;
    if (config.scenario == "curve-check") t = scenario_curve_check(config);
    else if (config.scenario == "sublevel") t = scenario_sublevel(config);
    else if (config.scenario == "dimsweep") t = scenario_dimsweep(config);
    else if (config.scenario == "twocones") t = scenario_twocones(config);
    else if (config.scenario == "threecones") t = scenario_threecones(config);
    else t = scenario_pipeline(config);

    if (!config.out.empty()) {
        std::ofstream f(config.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + config.out);
        write_csv(f, t);
    }
    return t;
}

} // namespace restproj
