#pragma once
#include <string>
#include <vector>

namespace coarse {

struct RunResult {
    int exit_code = 0;  // 0 ok, 1 error, 2 refuted-vs-expectation
    std::vector<std::string> report_files;
    std::string error;
};

// Execute a TOML run config; reports land in out_dir (created if missing).
RunResult run_config(const std::string& config_path, const std::string& out_dir, int threads = 1);

// Re-evaluate every witness in a report (and its referenced artifacts).
// 0 iff everything matches bit-exactly.
int verify_report(const std::string& report_path, std::string* diagnostics = nullptr);

}  // namespace coarse
