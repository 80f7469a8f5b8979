// Subprocess helper for the CLI golden tests.

#ifndef TKB_TESTS_RUN_CLI_HPP
#define TKB_TESTS_RUN_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace tkb::testcli {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string cli_path() {
    const char* env = std::getenv("TKB_CLI");
    return env ? env : "./tableau-kb";
}

inline std::string fixtures_dir() {
    const char* env = std::getenv("TKB_FIXTURES");
    return env ? env : "fixtures";
}

inline CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const std::string base = "/tmp/tkb_cli_" + std::to_string(++counter);
    const std::string out = base + ".out", err = base + ".err";
    const std::string cmd = cli_path() + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return result;
}

} // namespace tkb::testcli

#endif // TKB_TESTS_RUN_CLI_HPP
