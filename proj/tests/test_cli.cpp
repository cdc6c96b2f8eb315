#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <memory>

#include <json.hpp>

#include "coarse/audit.hpp"
#include "coarse/groups.hpp"
#include "coarse/runner.hpp"
#include "coarse/serialize.hpp"
#include "coarse/toml_lite.hpp"

using namespace coarse;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("coarse_test_" + tag + "_" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string write_config(const fs::path& dir, const std::string& name,
                         const std::string& body) {
    fs::path p = dir / name;
    write_file(p.string(), body);
    return p.string();
}

}  // namespace

TEST_CASE("toml subset parses values, tables and arrays of tables") {
    toml::Table t = toml::parse(
        "format_version = 1\n"
        "title = \"hello\\tworld\"\n"
        "flag = true\n"
        "\n"
        "[space]\n"
        "kind = \"cycle\"  # trailing comment\n"
        "length = 6\n"
        "scales = [1, 2, 3]\n"
        "names = [\"a\", \"b\"]\n"
        "\n"
        "[space.extra]\n"
        "depth = 2\n"
        "\n"
        "[[task]]\n"
        "kind = \"rips\"\n"
        "\n"
        "[[task]]\n"
        "kind = \"cohomology\"\n");
    CHECK(toml::get_int(t, "format_version") == 1);
    CHECK(toml::get_str(t, "title") == "hello\tworld");
    CHECK(t.at("flag").as_bool());
    const toml::Table& sp = t.at("space").as_table();
    CHECK(toml::get_str(sp, "kind") == "cycle");
    CHECK(toml::get_int(sp, "length") == 6);
    CHECK(toml::get_int_array_or(sp, "scales", {}) ==
          std::vector<std::int64_t>{1, 2, 3});
    CHECK(sp.at("names").as_str_array() == std::vector<std::string>{"a", "b"});
    CHECK(toml::get_int(sp.at("extra").as_table(), "depth") == 2);
    const auto& tasks = t.at("task").as_table_array();
    REQUIRE(tasks.size() == 2);
    CHECK(toml::get_str(*tasks[0], "kind") == "rips");
    CHECK(toml::get_str(*tasks[1], "kind") == "cohomology");
}

TEST_CASE("toml errors carry line numbers") {
    try {
        toml::parse("a = 1\nb = \n");
        FAIL("expected parse_error");
    } catch (const toml::parse_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(toml::parse("a = 1\na = 2\n"), toml::parse_error);
    CHECK_THROWS_AS(toml::parse("x = 3.14\n"), toml::parse_error);   // no floats
    CHECK_THROWS_AS(toml::parse("x = [1, \"a\"]\n"), toml::parse_error);
    // scalar promoted to one-element array by the helper
    toml::Table t = toml::parse("r = 4\n");
    CHECK(toml::get_int_array_or(t, "r", {}) == std::vector<std::int64_t>{4});
    CHECK_THROWS(toml::get_int(t, "missing"));
}

TEST_CASE("space and combing serialization round-trips") {
    GroupSpec spec;
    spec.kind = GroupSpec::Kind::FreeAbelian;
    spec.rank = 2;
    auto s = std::make_shared<FiniteMetricSpace>(build_cayley_graph(spec, 4));
    json sj = space_to_json(*s);
    FiniteMetricSpace back = space_from_json(sj);
    REQUIRE(back.size() == s->size());
    CHECK(back.labels == s->labels);
    CHECK(back.lattice == s->lattice);
    CHECK(back.truncation_radius == s->truncation_radius);
    for (PointId x = 0; x < s->size(); ++x)
        for (PointId y = 0; y <= x; ++y) CHECK(back.d(x, y) == s->d(x, y));

    Combing c = bresenham_combing(s);
    Combing cb = combing_from_json(combing_to_json(c),
                                   std::make_shared<FiniteMetricSpace>(back));
    cb.validate();
    CHECK(cb.horizon == c.horizon);
    CHECK(cb.settle == c.settle);
    for (PointId x = 0; x < s->size(); ++x)
        for (int n = 0; n <= c.horizon; ++n) CHECK(cb.H(x, n) == c.H(x, n));
}

TEST_CASE("audit reports survive the JSON round-trip") {
    Combing c = nonproper_example(60);
    AuditReport r = audit_proper(c, 0);
    AuditReport back = audit_from_json(audit_to_json(r));
    CHECK(back.verdict == r.verdict);
    CHECK(back.m_table == r.m_table);
    CHECK(back.witnesses.size() == r.witnesses.size());
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        CHECK(back.witnesses[i].kind == r.witnesses[i].kind);
        CHECK(back.witnesses[i].points == r.witnesses[i].points);
        CHECK(back.witnesses[i].stages == r.witnesses[i].stages);
        CHECK(back.witnesses[i].dist == r.witnesses[i].dist);
    }
}

TEST_CASE("run_config with no tasks writes artifacts and succeeds") {
    TempDir tmp("notasks");
    std::string cfg = write_config(tmp.path, "c.toml",
                                   "format_version = 1\n"
                                   "[space]\n"
                                   "kind = \"cycle\"\n"
                                   "length = 6\n"
                                   "[combing]\n"
                                   "kind = \"geodesic\"\n");
    RunResult r = run_config(cfg, (tmp.path / "out").string());
    CHECK(r.exit_code == 0);
    CHECK(r.report_files.empty());
    CHECK(fs::exists(tmp.path / "out" / "space.json"));
    CHECK(fs::exists(tmp.path / "out" / "combing.json"));
    CHECK(fs::exists(tmp.path / "out" / "metadata.json"));
}

TEST_CASE("broken configs exit with code 1 and a message") {
    TempDir tmp("broken");
    std::string cfg = write_config(tmp.path, "bad.toml",
                                   "[space]\nkind = \"no_such_kind\"\n");
    RunResult r = run_config(cfg, (tmp.path / "out").string());
    CHECK(r.exit_code == 1);
    CHECK_FALSE(r.error.empty());

    RunResult missing = run_config((tmp.path / "absent.toml").string(),
                                   (tmp.path / "out2").string());
    CHECK(missing.exit_code == 1);
}

TEST_CASE("refuted verdict against a Supported expectation exits 2") {
    TempDir tmp("expect");
    std::string cfg = write_config(tmp.path, "c.toml",
                                   "format_version = 1\n"
                                   "[combing]\n"
                                   "kind = \"nonproper\"\n"
                                   "length = 40\n"
                                   "[[task]]\n"
                                   "kind = \"audit_proper\"\n"
                                   "k_radius = 0\n"
                                   "expect = \"SupportedAtScale\"\n");
    RunResult r = run_config(cfg, (tmp.path / "out").string());
    CHECK(r.exit_code == 2);
    REQUIRE(r.report_files.size() == 1);
    json rep = json::parse(read_file(r.report_files[0]));
    CHECK(rep["verdict"] == "RefutedAtScale");
    CHECK(rep["expect"] == "SupportedAtScale");
    CHECK(rep["format_version"] == 1);
}

TEST_CASE("verify accepts honest reports and rejects tampered ones") {
    TempDir tmp("verify");
    std::string cfg = write_config(tmp.path, "c.toml",
                                   "format_version = 1\n"
                                   "[space]\n"
                                   "kind = \"free_group\"\n"
                                   "rank = 2\n"
                                   "radius = 3\n"
                                   "[combing]\n"
                                   "kind = \"geodesic\"\n"
                                   "[[task]]\n"
                                   "kind = \"audit_controlled\"\n"
                                   "name = \"ctrl\"\n");
    RunResult r = run_config(cfg, (tmp.path / "out").string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.report_files.size() == 1);
    const std::string report = r.report_files[0];
    const std::string pristine = read_file(report);
    std::string diag;
    CHECK(verify_report(report, &diag) == 0);

    // corrupt one witness distance
    json rep = json::parse(pristine);
    REQUIRE_FALSE(rep["report"]["witnesses"].empty());
    rep["report"]["witnesses"][0]["dist"] =
        rep["report"]["witnesses"][0]["dist"].get<Dist>() + 1;
    write_file(report, rep.dump(2) + "\n");
    diag.clear();
    CHECK(verify_report(report, &diag) == 1);
    CHECK_FALSE(diag.empty());

    // missing artifacts are also a verification failure
    write_file(report, pristine);
    fs::remove(tmp.path / "out" / "space.json");
    CHECK(verify_report(report, nullptr) == 1);
}

TEST_CASE("identical runs produce byte-identical payloads") {
    TempDir tmp("determinism");
    std::string cfg = write_config(tmp.path, "c.toml",
                                   "format_version = 1\n"
                                   "[space]\n"
                                   "kind = \"free_abelian\"\n"
                                   "rank = 2\n"
                                   "radius = 6\n"
                                   "[combing]\n"
                                   "kind = \"bresenham\"\n"
                                   "[[task]]\n"
                                   "kind = \"audit_expanding\"\n"
                                   "r_list = [1, 2]\n"
                                   "n_list = [2, 4]\n"
                                   "[[task]]\n"
                                   "kind = \"corona\"\n");
    RunResult a = run_config(cfg, (tmp.path / "a").string());
    RunResult b = run_config(cfg, (tmp.path / "b").string());
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
        std::string name = entry.path().filename().string();
        if (name == "metadata.json") continue;  // carries the timestamp
        CHECK(read_file(entry.path().string()) ==
              read_file((tmp.path / "b" / name).string()));
        ++compared;
    }
    CHECK(compared >= 4);  // space, combing, two task reports (plus extras)
}
