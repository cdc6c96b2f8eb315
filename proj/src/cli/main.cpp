#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "coarse/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"coarse-lab: finite-stage audits of combings, coarse cohomology and corona "
                 "approximations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", report_path;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "execute a TOML run config");
    run->add_option("config", config_path, "path to the config file")->required();
    run->add_option("--out", out_dir, "output directory for reports");
    run->add_option("--threads", threads, "worker cap (does not affect outputs)");

    CLI::App* verify = app.add_subcommand("verify", "re-check every witness in a report");
    verify->add_option("report", report_path, "path to a report JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        coarse::RunResult res = coarse::run_config(config_path, out_dir, threads);
        if (!res.error.empty()) std::fprintf(stderr, "error: %s\n", res.error.c_str());
        for (const auto& f : res.report_files) std::printf("%s\n", f.c_str());
        return res.exit_code;
    }
    std::string diag;
    int rc = coarse::verify_report(report_path, &diag);
    std::fputs(diag.c_str(), rc == 0 ? stdout : stderr);
    return rc;
}
