// Acceptance suite: runs the shipped configs end-to-end and checks the frozen
// expectations, printing one PASS/FAIL line per criterion. Exit code is the
// number of failing criteria.
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/cohomology.hpp"
#include "coarse/groups.hpp"
#include "coarse/rips.hpp"
#include "coarse/runner.hpp"
#include "coarse/serialize.hpp"

using namespace coarse;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunRecord {
    RunResult result;
    fs::path out;
};

fs::path g_configs;
fs::path g_work;
std::map<std::string, RunRecord> g_runs;

const RunRecord& run(const std::string& config_stem) {
    auto it = g_runs.find(config_stem);
    if (it != g_runs.end()) return it->second;
    RunRecord rec;
    rec.out = g_work / config_stem;
    rec.result = run_config((g_configs / (config_stem + ".toml")).string(), rec.out.string());
    return g_runs.emplace(config_stem, std::move(rec)).first->second;
}

json report(const std::string& config_stem, const std::string& task_file) {
    return json::parse(read_file((run(config_stem).out / task_file).string()));
}

struct Check {
    bool ok = true;
    std::string why;
    void expect(bool cond, const std::string& msg) {
        if (!cond && ok) {
            ok = false;
            why = msg;
        }
    }
};

bool has_witness(const json& rep, const std::vector<PointId>& points,
                 const std::vector<int>& stages, Dist dist) {
    for (const auto& w : rep.at("report").at("witnesses"))
        if (w.at("points").get<std::vector<PointId>>() == points &&
            w.at("stages").get<std::vector<int>>() == stages && w.at("dist").get<Dist>() == dist)
            return true;
    return false;
}

// f value at the largest (n, rho) cell for the given r
Dist tail_of(const json& audit, Dist r) {
    int best_n = -1;
    Dist best_rho = -1, f = 0;
    for (const auto& cell : audit.at("report").at("f_table")) {
        if (cell.at(0).get<Dist>() != r) continue;
        int n = cell.at(1).get<int>();
        Dist rho = cell.at(2).get<Dist>();
        if (n > best_n || (n == best_n && rho > best_rho)) {
            best_n = n;
            best_rho = rho;
            f = cell.at(3).get<Dist>();
        }
    }
    return f;
}

Check criterion1() {
    Check c;
    const RunRecord& r = run("c01_nonproper_proper");
    c.expect(r.result.exit_code == 2, "expected disagreement exit code 2");
    json rep = report("c01_nonproper_proper", "01_properness.json");
    c.expect(rep.at("verdict") == "RefutedAtScale", "verdict is not RefutedAtScale");
    bool m10 = false;
    for (const auto& row : rep.at("report").at("m_table"))
        if (row.at(0) == 10 && row.at(1) == 100) m10 = true;
    c.expect(m10, "m(10) = 100 missing from the m-table");
    bool witness = false;
    for (const auto& w : rep.at("report").at("witnesses"))
        if (w.at("points").get<std::vector<PointId>>() == std::vector<PointId>{100})
            witness = true;
    c.expect(witness, "witness x = 100 missing");
    return c;
}

Check criterion2() {
    Check c;
    const RunRecord& r = run("c02_noncoherent_coherent");
    c.expect(r.result.exit_code == 2, "expected disagreement exit code 2");
    json rep = report("c02_noncoherent_coherent", "01_coherence.json");
    c.expect(rep.at("verdict") == "RefutedAtScale", "verdict is not RefutedAtScale");
    for (int n = 1; n <= 10; ++n)
        c.expect(has_witness(rep, {static_cast<PointId>(12 * n)}, {4 * n, 5 * n},
                             static_cast<Dist>(4 * n)),
                 "witness (12n, [4n, 5n], 4n) missing for n = " + std::to_string(n));
    return c;
}

Check criterion3() {
    Check c;
    const RunRecord& r = run("c03_tree_suite");
    c.expect(r.result.exit_code == 0, "tree suite run failed: " + r.result.error);
    json coh = report("c03_tree_suite", "03_coherence.json");
    for (const auto& row : coh.at("report").at("coh_table"))
        c.expect(row.at(1) == 0, "coherence table is not identically zero");
    json exp = report("c03_tree_suite", "04_expansion.json");
    for (const auto& cell : exp.at("report").at("f_table")) {
        Dist rr = cell.at(0).get<Dist>(), rho = cell.at(2).get<Dist>();
        int n = cell.at(1).get<int>();
        if (rho >= n + rr)
            c.expect(cell.at(3) == 0, "f(r, n, rho) != 0 although rho >= n + r");
    }
    json hyp = report("c03_tree_suite", "05_hyperbolicity.json");
    c.expect(hyp.at("report").at("delta_twice") == 0, "tree hyperbolicity is not zero");
    json cor = report("c03_tree_suite", "06_boundary.json");
    c.expect(cor.at("report").at("cluster_count") == 36, "sphere-8 stage-3 clusters != 36");
    return c;
}

Check criterion4() {
    Check c;
    const RunRecord& sup = run("c04_bresenham_expanding");
    c.expect(sup.result.exit_code == 0, "bresenham run failed: " + sup.result.error);
    json a = report("c04_bresenham_expanding", "01_expansion.json");
    c.expect(a.at("verdict") == "SupportedAtScale", "bresenham expansion not supported");
    for (Dist r : {1, 2, 3, 4})
        c.expect(tail_of(a, r) <= 3, "bresenham tail exceeds 3 at r = " + std::to_string(r));
    const RunRecord& ref = run("c04_product_expanding");
    c.expect(ref.result.exit_code == 0, "product run failed: " + ref.result.error);
    json b = report("c04_product_expanding", "01_expansion.json");
    c.expect(b.at("verdict") == "RefutedAtScale", "product expansion not refuted");
    for (Dist r : {4, 6, 8})
        c.expect(tail_of(b, r) >= r - 2, "product tail below r - 2 at r = " + std::to_string(r));
    return c;
}

Check criterion5() {
    Check c;
    c.expect(report("c05_cycle6", "01_circle.json").at("report").at("betti") ==
                 json::array({1, 1}),
             "hexagon betti != (1, 1)");
    c.expect(report("c05_simplex5", "01_simplex.json").at("report").at("betti") ==
                 json::array({1, 0, 0}),
             "full simplex betti != (1, 0, 0)");
    c.expect(report("c05_z_line", "01_interval_rel_boundary.json").at("report").at("betti") ==
                 json::array({0, 1}),
             "relative interval betti != (0, 1)");
    json stab = report("c05_z2_stab", "01_plane_stability.json");
    c.expect(run("c05_z2_stab").result.exit_code == 0, "plane stabilization run failed");
    c.expect(stab.at("verdict") == "Stable", "plane stabilization not Stable");
    for (const auto& cell : stab.at("report").at("cells"))
        c.expect(cell.at("betti").at(2) == 1, "plane cell betti_2 != 1");
    return c;
}

Check criterion6() {
    Check c;
    std::vector<SimplicialComplex> corpus;
    corpus.push_back(rips_complex(cycle_space(6), 1, 2));
    corpus.push_back(rips_complex(cycle_space(6), 2, 3));
    corpus.push_back(full_simplex(6, 4));
    GroupSpec grid;
    grid.kind = GroupSpec::Kind::FreeAbelian;
    grid.rank = 2;
    corpus.push_back(rips_complex(build_cayley_graph(grid, 4), 2, 3));
    for (const auto& cx : corpus) {
        RelativeBasis basis = relative_basis(cx, nullptr);
        for (int q = 0; q + 2 < static_cast<int>(cx.simplices.size()); ++q) {
            SparseMat a = coboundary(cx, q, basis);
            SparseMat b = coboundary(cx, q + 1, basis);
            std::map<std::pair<std::size_t, std::size_t>, std::int64_t> prod;
            std::map<std::size_t, std::vector<std::pair<std::size_t, std::int64_t>>> a_rows;
            for (auto [i, j, v] : a.entries) a_rows[i].push_back({j, v});
            for (auto [i, k, v] : b.entries)
                for (auto [j, w] : a_rows[k]) prod[{i, j}] += v * w;
            for (const auto& [ij, v] : prod)
                c.expect(v == 0, "delta compose delta has a nonzero entry");
        }
        for (int q = 0; q + 1 < static_cast<int>(cx.simplices.size()); ++q) {
            SparseMat m = coboundary(cx, q, basis);
            if (!m.rows || !m.cols || m.rows > 200 || m.cols > 200) continue;
            SnfResult fast = smith_normal_form(m);
            SnfResult slow = smith_normal_form_naive(m);
            c.expect(fast.rank == slow.rank && fast.diagonal == slow.diagonal,
                     "sparse SNF disagrees with the dense oracle");
        }
    }
    return c;
}

Check criterion7() {
    Check c;
    c.expect(report("c07_cone_identity", "01_boundary.json").at("report").at("cluster_count") == 3,
             "identity cone cluster count != 3");
    c.expect(report("c07_cone_constant", "01_boundary.json").at("report").at("cluster_count") == 1,
             "constant cone cluster count != 1");
    return c;
}

Check criterion8() {
    Check c;
    // free group: edgeless nerve (dimension 0), signature tops out in degree 1
    json f2 = report("c08_f2_signature", "01_boundary.json");
    c.expect(f2.at("report").at("nerve").at("edges").empty(), "free-group nerve has edges");
    json f2stab = report("c08_f2_signature", "02_signature.json");
    c.expect(f2stab.at("report").at("pattern_stable") == true, "free-group pattern unstable");
    c.expect(f2stab.at("report").at("top_nonzero_degree") == 1,
             "free-group top nonzero degree != 1");
    // corona over the circle: nerve is a 6-cycle (dimension 1)
    json circ = report("c08_cone_circle", "01_boundary.json");
    c.expect(circ.at("report").at("cluster_count") == 6, "circle corona cluster count != 6");
    c.expect(circ.at("report").at("nerve").at("edges").size() == 6, "circle nerve is not a 6-cycle");
    c.expect(circ.at("report").at("nerve_cohomology").at("betti") == json::array({1, 1}),
             "circle nerve betti != (1, 1)");
    // plane: top stable nonzero degree 2 = nerve dimension 1 + 1
    json z2 = report("c05_z2_stab", "01_plane_stability.json");
    c.expect(z2.at("report").at("top_nonzero_degree") == 2, "plane top nonzero degree != 2");
    return c;
}

Check criterion9() {
    Check c;
    run("c03_tree_suite");
    run("c09_z2_lemma_echo");
    for (const auto& [stem, rec] : g_runs) {
        if (!fs::exists(rec.out)) continue;
        std::string coherent, proper;
        for (const auto& entry : fs::directory_iterator(rec.out)) {
            if (entry.path().extension() != ".json") continue;
            if (entry.path().filename() == "metadata.json") continue;
            json rep = json::parse(read_file(entry.path().string()));
            if (!rep.contains("task")) continue;
            if (rep.at("task") == "audit_coherent") coherent = rep.at("verdict");
            if (rep.at("task") == "audit_proper") proper = rep.at("verdict");
        }
        c.expect(!(coherent == "SupportedAtScale" && proper == "RefutedAtScale"),
                 "coherent-but-nonproper combing found in " + stem);
    }
    return c;
}

Check criterion10() {
    Check c;
    for (const auto& entry : fs::directory_iterator(g_configs)) {
        if (entry.path().extension() != ".toml") continue;
        std::string stem = entry.path().stem().string();
        const RunRecord& first = run(stem);
        fs::path again = g_work / (stem + "_again");
        RunResult second = run_config(entry.path().string(), again.string());
        c.expect(second.exit_code == first.result.exit_code,
                 "exit code changed on re-run of " + stem);
        for (const auto& f : fs::directory_iterator(first.out)) {
            std::string name = f.path().filename().string();
            if (name == "metadata.json") continue;  // carries the timestamp
            c.expect(fs::exists(again / name), "re-run of " + stem + " lacks " + name);
            if (fs::exists(again / name))
                c.expect(read_file(f.path().string()) == read_file((again / name).string()),
                         "payload " + name + " differs between runs of " + stem);
        }
        for (const std::string& rf : first.result.report_files) {
            if (fs::path(rf).extension() != ".json") continue;
            std::string diag;
            c.expect(verify_report(rf, &diag) == 0,
                     "verify failed on " + fs::path(rf).filename().string() + ": " + diag);
        }
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <configs-dir>\n");
        return 64;
    }
    g_configs = argv[1];
    g_work = fs::temp_directory_path() / "coarse_acceptance";
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"nonproper example refuted with exact witness", criterion1},
        {"noncoherent example refuted with exact witnesses", criterion2},
        {"tree sanity suite", criterion3},
        {"expansion dichotomy on the plane lattice", criterion4},
        {"cohomology oracles", criterion5},
        {"delta-delta zero and SNF cross-validation", criterion6},
        {"cone corona dichotomy", criterion7},
        {"corona dimension echo", criterion8},
        {"coherent implies proper across the corpus", criterion9},
        {"determinism and verification", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why = std::string("exception: ") + e.what();
        }
        if (c.ok) {
            std::printf("PASS criterion %zu: %s\n", i + 1, criteria[i].first.c_str());
        } else {
            ++failed;
            std::printf("FAIL criterion %zu: %s — %s\n", i + 1, criteria[i].first.c_str(),
                        c.why.c_str());
        }
        std::fflush(stdout);
    }
    fs::remove_all(g_work);
    return failed;
}
