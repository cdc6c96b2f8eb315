#include "coarse/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>

#include <json.hpp>

#include "coarse/audit.hpp"
#include "coarse/cohomology.hpp"
#include "coarse/combing.hpp"
#include "coarse/cones.hpp"
#include "coarse/corona.hpp"
#include "coarse/groups.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/rips.hpp"
#include "coarse/serialize.hpp"
#include "coarse/toml_lite.hpp"

namespace coarse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int FORMAT_VERSION = 1;

std::vector<Dist> to_dists(const std::vector<std::int64_t>& v) {
    return std::vector<Dist>(v.begin(), v.end());
}
std::vector<int> to_ints(const std::vector<std::int64_t>& v) {
    return std::vector<int>(v.begin(), v.end());
}

GroupSpec::Kind group_kind(const std::string& k) {
    if (k == "free_group") return GroupSpec::Kind::FreeGroup;
    if (k == "free_abelian") return GroupSpec::Kind::FreeAbelian;
    if (k == "explicit_graph") return GroupSpec::Kind::ExplicitGraph;
    throw std::runtime_error("unknown group kind '" + k + "'");
}

FiniteMetricSpace build_plain_space(const toml::Table& t, std::optional<int> override_radius,
                                    const fs::path& config_dir) {
    std::string kind = toml::get_str(t, "kind");
    if (kind == "segment") return segment_space(static_cast<int>(toml::get_int(t, "length")));
    if (kind == "cycle") return cycle_space(static_cast<int>(toml::get_int(t, "length")));
    if (kind == "file") {
        fs::path p = fs::path(toml::get_str(t, "path"));
        if (p.is_relative()) p = config_dir / p;
        return space_from_json(json::parse(read_file(p.string())));
    }
    GroupSpec spec;
    spec.kind = group_kind(kind);
    spec.rank = static_cast<int>(toml::get_int_or(t, "rank", 0));
    if (spec.kind == GroupSpec::Kind::ExplicitGraph) {
        auto flat = toml::get_int_array_or(t, "edges", {});
        if (flat.size() % 2) throw std::runtime_error("'edges' must list pairs");
        std::size_t n = 0;
        for (auto v : flat) n = std::max<std::size_t>(n, static_cast<std::size_t>(v) + 1);
        spec.adjacency.assign(n, {});
        for (std::size_t i = 0; i + 1 < flat.size(); i += 2) {
            spec.adjacency[flat[i]].push_back(static_cast<PointId>(flat[i + 1]));
            spec.adjacency[flat[i + 1]].push_back(static_cast<PointId>(flat[i]));
        }
        spec.graph_base = static_cast<PointId>(toml::get_int_or(t, "base", 0));
    }
    int radius = override_radius ? *override_radius
                                 : static_cast<int>(toml::get_int(t, "radius"));
    return build_cayley_graph(spec, radius);
}

struct Built {
    std::shared_ptr<const FiniteMetricSpace> space;
    std::optional<Combing> combing;
};

std::vector<Dist> phi_table(const toml::Table& t, std::size_t heights, Dist delta) {
    std::string phi = toml::get_str_or(t, "phi", "identity");
    std::vector<Dist> out(heights + 1);
    if (phi == "identity") {
        for (std::size_t k = 0; k <= heights; ++k) out[k] = static_cast<Dist>(k) * delta;
    } else if (phi == "constant") {
        Dist v = toml::get_int_or(t, "phi_value", 1);
        for (std::size_t k = 0; k <= heights; ++k) out[k] = v;
    } else if (phi == "table") {
        out = to_dists(toml::get_int_array_or(t, "phi_table", {}));
    } else {
        throw std::runtime_error("unknown phi kind '" + phi + "'");
    }
    return out;
}

Combing make_combing_over(std::shared_ptr<const FiniteMetricSpace> space, const std::string& kind,
                          const toml::Table& t) {
    if (kind == "geodesic") return geodesic_combing(space);
    if (kind == "bresenham") return bresenham_combing(space);
    if (kind == "normal_form") {
        std::string variant = toml::get_str_or(t, "variant", "shortlex_lattice");
        if (variant == "shortlex_lattice")
            return normal_form_combing(space, NormalForm::ShortlexLattice);
        if (variant == "reduced_word") return normal_form_combing(space, NormalForm::ReducedWord);
        throw std::runtime_error("unknown normal form variant '" + variant + "'");
    }
    throw std::runtime_error("unknown combing kind '" + kind + "'");
}

Built build_space_and_combing(const toml::Table& root, const fs::path& config_dir) {
    Built out;
    // self-contained combing constructors (they carry their own space)
    if (toml::has(root, "combing")) {
        const toml::Table& ct = root.at("combing").as_table();
        std::string kind = toml::get_str_or(ct, "kind", "geodesic");
        if (kind == "nonproper" || kind == "noncoherent") {
            int T = static_cast<int>(toml::get_int(ct, "length"));
            Combing c = kind == "nonproper" ? nonproper_example(T) : noncoherent_example(T);
            out.space = c.space;
            out.combing = std::move(c);
            return out;
        }
        if (kind == "product") {
            const toml::Table& lt = ct.at("left").as_table();
            const toml::Table& rt = ct.at("right").as_table();
            auto build_factor = [&](const toml::Table& ft) {
                auto sp = std::make_shared<FiniteMetricSpace>(
                    build_plain_space(ft.at("space").as_table(), {}, config_dir));
                return make_combing_over(sp, toml::get_str_or(ft, "kind", "geodesic"), ft);
            };
            Combing a = build_factor(lt);
            Combing b = build_factor(rt);
            Dist cap = toml::get_int(ct, "radius_cap");
            Combing c = product_combing(a, b, cap);
            out.space = c.space;
            out.combing = std::move(c);
            return out;
        }
    }
    if (!toml::has(root, "space")) throw std::runtime_error("config has no [space] section");
    const toml::Table& st = root.at("space").as_table();
    std::string kind = toml::get_str(st, "kind");
    if (kind == "cone" || kind == "warped_cone") {
        ConeSpec spec;
        spec.base = build_plain_space(st.at("base").as_table(), {}, config_dir);
        spec.height_max = toml::get_int(st, "height_max");
        spec.resolution = toml::get_int_or(st, "resolution", 1);
        spec.phi = phi_table(st, static_cast<std::size_t>(spec.height_max / spec.resolution),
                             spec.resolution);
        std::pair<std::shared_ptr<FiniteMetricSpace>, Combing> built;
        if (kind == "warped_cone") {
            WarpSpec ws;
            ws.cone = std::move(spec);
            // cyclic rotations of the base point set (cycle-graph bases)
            for (auto r : toml::get_int_array_or(st, "rotations", {})) {
                std::size_t n = ws.cone.base.size();
                std::vector<PointId> perm(n);
                for (std::size_t i = 0; i < n; ++i)
                    perm[i] = static_cast<PointId>((i + static_cast<std::size_t>(r)) % n);
                ws.action.push_back(std::move(perm));
            }
            built = warped_cone(ws);
        } else {
            built = open_cone(spec);
        }
        out.space = built.first;
        out.combing = std::move(built.second);
        return out;
    }
    out.space = std::make_shared<FiniteMetricSpace>(build_plain_space(st, {}, config_dir));
    if (toml::has(root, "combing")) {
        const toml::Table& ct = root.at("combing").as_table();
        out.combing = make_combing_over(out.space, toml::get_str_or(ct, "kind", "geodesic"), ct);
    }
    return out;
}

std::optional<Dist> opt_dist(const toml::Table& t, const std::string& key) {
    if (!toml::has(t, key)) return {};
    return static_cast<Dist>(toml::get_int(t, key));
}

Ring ring_from(const toml::Table& t) {
    std::string r = toml::get_str_or(t, "ring", "Z");
    if (r == "Z") return Ring::Z();
    if (r == "Q") return Ring::Q();
    if (r == "Fp") return Ring::Fp(toml::get_int(t, "p"));
    throw std::runtime_error("unknown ring '" + r + "' (use Z, Q or Fp)");
}

// documented default recipe for corona parameters
struct CoronaParams {
    Dist r_lo, r_hi, threshold, edge_threshold;
    int stage;
};

CoronaParams corona_defaults(const Combing& c) {
    const FiniteMetricSpace& s = *c.space;
    CoronaParams p{};
    p.r_hi = s.truncation_radius;
    p.r_lo = s.truncation_radius - s.truncation_radius / 10;  // top 10%
    p.stage = static_cast<int>((2 * s.truncation_radius) / (5 * s.scale));  // 40%
    Dist step = 0;  // step constant of the combing
    for (PointId x = 0; x < s.size(); ++x)
        for (int n = 0; n < c.horizon; ++n) step = std::max(step, s.d(c.H(x, n), c.H(x, n + 1)));
    p.threshold = 2 * step;
    p.edge_threshold = 2 * p.threshold;
    return p;
}

const Combing& need_combing(const Built& b) {
    if (!b.combing) throw std::runtime_error("task requires a [combing] section");
    return *b.combing;
}

SubcomplexHandle collar_subcomplex(const SimplicialComplex& cx, const FiniteMetricSpace& s,
                                   Dist collar) {
    PointId base = s.base_point.value_or(0);
    Dist cutoff = s.truncation_radius - collar * s.scale + s.scale;
    std::vector<char> in_collar(s.size(), 0);
    for (PointId x = 0; x < s.size(); ++x) in_collar[x] = s.d(x, base) >= cutoff;
    return closed_span(cx, in_collar);
}

struct TaskOutput {
    json report;
    std::map<std::string, std::string> extra_files;  // name -> content (CSV/DOT)
    std::string verdict;                             // empty if not verdict-bearing
};

TaskOutput run_task(const toml::Table& tt, const std::string& kind, const Built& built,
                    const toml::Table& root, const fs::path& config_dir) {
    TaskOutput out;
    if (kind == "audit_controlled") {
        AuditReport r = audit_controlled(need_combing(built),
                                         to_dists(toml::get_int_array_or(tt, "fellow_radii", {})),
                                         opt_dist(tt, "collar"));
        out.report = audit_to_json(r);
        out.verdict = r.verdict;
    } else if (kind == "audit_proper") {
        AuditReport r = audit_proper(need_combing(built), toml::get_int(tt, "k_radius"),
                                     opt_dist(tt, "collar"));
        out.report = audit_to_json(r);
        out.verdict = r.verdict;
    } else if (kind == "audit_coherent") {
        AuditReport r = audit_coherent(need_combing(built), opt_dist(tt, "collar"));
        out.report = audit_to_json(r);
        out.verdict = r.verdict;
    } else if (kind == "audit_expanding") {
        AuditReport r = audit_expanding(need_combing(built),
                                        to_dists(toml::get_int_array_or(tt, "r_list", {})),
                                        to_ints(toml::get_int_array_or(tt, "n_list", {})),
                                        opt_dist(tt, "collar"), opt_dist(tt, "tolerance"));
        out.report = audit_to_json(r);
        out.extra_files["f_table.csv"] = expanding_table_csv(r);
        out.verdict = r.verdict;
    } else if (kind == "quasi_geodesic") {
        QuasiGeodesicParams r = audit_quasi_geodesic(need_combing(built));
        out.report["found"] = r.found;
        out.report["lambda_num"] = r.lambda_num;
        out.report["lambda_den"] = r.lambda_den;
        out.report["k"] = r.k;
        json ws = json::array();
        for (const auto& w : r.violations)
            ws.push_back({{"kind", w.kind}, {"points", w.points}, {"stages", w.stages},
                          {"dist", w.dist}});
        out.report["witnesses"] = ws;
        out.verdict = r.found ? "SupportedAtScale" : "RefutedAtScale";
    } else if (kind == "gromov_fellow") {
        GromovFellowReport r =
            check_gromov_fellow(need_combing(built), toml::get_int(tt, "delta"),
                                static_cast<std::size_t>(toml::get_int_or(tt, "sample_budget", 20000)));
        out.report["pass"] = r.pass;
        out.report["delta"] = r.delta;
        out.report["pairs_checked"] = r.pairs_checked;
        json ws = json::array();
        for (const auto& w : r.failures)
            ws.push_back({{"kind", w.kind}, {"points", w.points}, {"stages", w.stages},
                          {"dist", w.dist}});
        out.report["witnesses"] = ws;
        out.verdict = r.pass ? "SupportedAtScale" : "RefutedAtScale";
    } else if (kind == "hyperbolicity") {
        HalfInt h = estimate_hyperbolicity(
            *built.space, static_cast<std::size_t>(toml::get_int_or(tt, "sample_budget", 2000)));
        out.report["delta_twice"] = h.twice;
    } else if (kind == "rips") {
        SimplicialComplex cx =
            rips_complex(*built.space, toml::get_int(tt, "R"),
                         static_cast<int>(toml::get_int_or(tt, "dim_cap", 3)));
        json counts = json::array();
        for (int q = 0; q <= cx.dim_cap; ++q) counts.push_back(cx.count(q));
        out.report["R"] = *cx.scale;
        out.report["dim_cap"] = cx.dim_cap;
        out.report["counts"] = counts;
    } else if (kind == "cohomology") {
        int dim_cap = static_cast<int>(toml::get_int_or(tt, "dim_cap", 3));
        SimplicialComplex cx = rips_complex(*built.space, toml::get_int(tt, "R"), dim_cap);
        std::vector<int> degrees = to_ints(toml::get_int_array_or(tt, "degrees", {0, 1, 2}));
        std::optional<SubcomplexHandle> rel;
        if (toml::has(tt, "collar"))
            rel = collar_subcomplex(cx, *built.space, toml::get_int(tt, "collar"));
        CohomologyResult r =
            cohomology(cx, ring_from(tt), degrees, rel ? &*rel : nullptr);
        out.report = cohomology_to_json(r);
        out.report["R"] = *cx.scale;
        out.report["relative"] = rel.has_value();
    } else if (kind == "stabilization") {
        if (!toml::has(root, "space")) throw std::runtime_error("stabilization needs [space]");
        const toml::Table& st = root.at("space").as_table();
        std::vector<std::pair<Dist, FiniteMetricSpace>> family;
        for (auto T : toml::get_int_array_or(tt, "truncations", {}))
            family.emplace_back(T, build_plain_space(st, static_cast<int>(T), config_dir));
        StabilizationReport r = coarse_cohomology_report(
            family, to_dists(toml::get_int_array_or(tt, "scales", {})),
            to_ints(toml::get_int_array_or(tt, "degrees", {0, 1, 2})),
            toml::get_int_or(tt, "collar", 1),
            static_cast<int>(toml::get_int_or(tt, "dim_cap", 3)));
        out.report = stabilization_to_json(r);
        out.verdict = r.verdict;
    } else if (kind == "corona") {
        const Combing& c = need_combing(built);
        CoronaParams dflt = corona_defaults(c);
        Dist r_lo = toml::get_int_or(tt, "r_lo", dflt.r_lo);
        Dist r_hi = toml::get_int_or(tt, "r_hi", dflt.r_hi);
        int stage = static_cast<int>(toml::get_int_or(tt, "stage", dflt.stage));
        Dist threshold = toml::get_int_or(tt, "threshold", dflt.threshold);
        Dist edge_threshold = toml::get_int_or(tt, "edge_threshold", dflt.edge_threshold);
        PointId base = built.space->base_point.value_or(0);
        std::vector<PointId> pts = annulus(*built.space, base, r_lo, r_hi);
        ClusterPartition p = boundary_clusters(c, pts, stage, threshold, r_lo, r_hi);
        NerveGraph g = cluster_nerve(c, p, edge_threshold);
        CohomologyResult nc = nerve_cohomology(g, ring_from(tt));
        out.report["partition"] = partition_to_json(p);
        out.report["nerve"] = nerve_to_json(g);
        out.report["nerve_cohomology"] = cohomology_to_json(nc);
        out.report["cluster_count"] = p.clusters.size();
        out.extra_files["nerve.dot"] = nerve_to_dot(g);
    } else if (kind == "asdim") {
        AsdimEstimate r =
            estimate_asdim_upper(*built.space, to_dists(toml::get_int_array_or(tt, "scales", {})));
        out.report["scales"] = r.scales;
        out.report["nerve_dims"] = r.nerve_dims;
        out.report["upper_bound"] = r.upper_bound;
    } else if (kind == "uniform_triviality") {
        UniformTrivialityProbe r = uniform_triviality_probe(
            *built.space, static_cast<int>(toml::get_int(tt, "degree")),
            toml::get_int(tt, "inner_scale"), toml::get_int(tt, "outer_scale"),
            toml::get_int(tt, "r"), toml::get_int(tt, "s"),
            static_cast<int>(toml::get_int_or(tt, "dim_cap", 3)));
        out.report["degree"] = r.degree;
        out.report["inner_scale"] = r.inner_scale;
        out.report["outer_scale"] = r.outer_scale;
        out.report["r"] = r.r;
        out.report["s"] = r.s;
        out.report["generators"] = r.generators;
        out.report["vanishes"] = r.vanishes;
        out.report["all_vanish"] = r.all_vanish;
        out.verdict = r.all_vanish ? "SupportedAtScale" : "RefutedAtScale";
    } else {
        throw std::runtime_error("unknown task kind '" + kind + "'");
    }
    return out;
}

}  // namespace

RunResult run_config(const std::string& config_path, const std::string& out_dir, int threads) {
    RunResult res;
    try {
        if (threads < 1) throw std::runtime_error("--threads must be >= 1");
        toml::Table root = toml::parse_file(config_path);
        int fv = static_cast<int>(toml::get_int_or(root, "format_version", FORMAT_VERSION));
        if (fv != FORMAT_VERSION)
            throw std::runtime_error("unsupported format_version " + std::to_string(fv));
        // budgets: config may override the defaults; the environment variable
        // (already folded into the default) wins for the point budget
        if (toml::has(root, "budget")) {
            const toml::Table& bt = root.at("budget").as_table();
            Budget& b = global_budget();
            if (!std::getenv("COARSE_LAB_BUDGET_POINTS"))
                b.points = static_cast<std::size_t>(toml::get_int_or(bt, "points",
                                                                     static_cast<std::int64_t>(b.points)));
            b.simplices = static_cast<std::size_t>(
                toml::get_int_or(bt, "simplices", static_cast<std::int64_t>(b.simplices)));
            b.matrix_cells = static_cast<std::size_t>(
                toml::get_int_or(bt, "matrix_cells", static_cast<std::int64_t>(b.matrix_cells)));
        }
        fs::path config_dir = fs::absolute(config_path).parent_path();
        fs::path out(out_dir);
        fs::create_directories(out);

        Built built;
        if (toml::has(root, "space") || toml::has(root, "combing"))
            built = build_space_and_combing(root, config_dir);

        auto dump = [&](const fs::path& p, const json& j) {
            write_file(p.string(), j.dump(2) + "\n");
            res.report_files.push_back(p.string());
        };
        json artifacts;
        if (built.space) {
            json sj = space_to_json(*built.space);
            sj["format_version"] = FORMAT_VERSION;
            write_file((out / "space.json").string(), sj.dump(2) + "\n");
            artifacts["space"] = "space.json";
        }
        if (built.combing) {
            json cj = combing_to_json(*built.combing);
            cj["format_version"] = FORMAT_VERSION;
            write_file((out / "combing.json").string(), cj.dump(2) + "\n");
            artifacts["combing"] = "combing.json";
        }

        const std::vector<std::shared_ptr<toml::Table>>* tasks = nullptr;
        if (toml::has(root, "task")) {
            if (!root.at("task").is_table_array())
                throw std::runtime_error("[[task]] must be an array of tables");
            tasks = &root.at("task").as_table_array();
        }
        int idx = 0;
        if (tasks)
            for (const auto& tp : *tasks) {
                const toml::Table& tt = *tp;
                ++idx;
                std::string kind = toml::get_str(tt, "kind");
                std::string name = toml::get_str_or(tt, "name", kind);
                std::string stem =
                    (idx < 10 ? "0" : "") + std::to_string(idx) + "_" + name;
                TaskOutput t = run_task(tt, kind, built, root, config_dir);
                json rep;
                rep["format_version"] = FORMAT_VERSION;
                rep["task"] = kind;
                rep["name"] = name;
                rep["artifacts"] = artifacts;
                rep["report"] = t.report;
                if (!t.verdict.empty()) rep["verdict"] = t.verdict;
                std::string expect = toml::get_str_or(tt, "expect", "");
                if (!expect.empty()) {
                    rep["expect"] = expect;
                    if (t.verdict != expect) {
                        // refutations against a declared Supported expectation are
                        // the designated "experiment disagrees" exit
                        res.exit_code = std::max(res.exit_code,
                                                 t.verdict == "RefutedAtScale" ? 2 : 1);
                        if (res.exit_code == 1 && res.error.empty())
                            res.error = "task '" + name + "' verdict '" + t.verdict +
                                        "' does not match expectation '" + expect + "'";
                    }
                }
                dump(out / (stem + ".json"), rep);
                for (const auto& [suffix, content] : t.extra_files) {
                    fs::path p = out / (stem + "_" + suffix);
                    write_file(p.string(), content);
                    res.report_files.push_back(p.string());
                }
            }
        // timestamps live here so the reports themselves stay byte-identical
        json meta;
        meta["format_version"] = FORMAT_VERSION;
        meta["config"] = fs::absolute(config_path).string();
        meta["threads"] = threads;
        meta["generated_at"] = static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
        write_file((out / "metadata.json").string(), meta.dump(2) + "\n");
    } catch (const std::exception& e) {
        res.exit_code = 1;
        res.error = e.what();
    }
    return res;
}

int verify_report(const std::string& report_path, std::string* diagnostics) {
    std::string diag;
    int rc = 0;
    try {
        json rep = json::parse(read_file(report_path));
        fs::path dir = fs::absolute(report_path).parent_path();
        std::shared_ptr<FiniteMetricSpace> space;
        std::optional<Combing> combing;
        if (rep.contains("artifacts")) {
            const json& art = rep["artifacts"];
            if (art.contains("space"))
                space = std::make_shared<FiniteMetricSpace>(
                    space_from_json(json::parse(read_file((dir / art["space"].get<std::string>()).string()))));
            if (art.contains("combing")) {
                if (!space) throw std::runtime_error("combing artifact without a space artifact");
                combing = combing_from_json(
                    json::parse(read_file((dir / art["combing"].get<std::string>()).string())), space);
            }
        }
        std::size_t checked = 0, mismatched = 0;
        if (rep.contains("report") && rep["report"].contains("witnesses")) {
            if (!combing) throw std::runtime_error("report has witnesses but no combing artifact");
            for (const json& wj : rep["report"]["witnesses"]) {
                Witness w;
                w.kind = wj.at("kind").get<std::string>();
                w.points = wj.at("points").get<std::vector<PointId>>();
                w.stages = wj.at("stages").get<std::vector<int>>();
                w.dist = wj.at("dist").get<Dist>();
                Dist got = eval_witness(*combing, w);
                ++checked;
                if (got != w.dist) {
                    ++mismatched;
                    diag += "witness mismatch (" + w.kind + "): recorded " +
                            std::to_string(w.dist) + ", re-evaluated " + std::to_string(got) + "\n";
                }
            }
        }
        diag += std::to_string(checked) + " witnesses checked, " + std::to_string(mismatched) +
                " mismatched\n";
        if (mismatched) rc = 1;
    } catch (const std::exception& e) {
        diag += std::string("error: ") + e.what() + "\n";
        rc = 1;
    }
    if (diagnostics) *diagnostics = diag;
    return rc;
}

}  // namespace coarse
