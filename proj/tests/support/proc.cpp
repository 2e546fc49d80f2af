#include "proc.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bugfix::testing {

std::string shell_quote(const std::string& text) {
    std::string quoted = "'";
    for (const char c : text) {
        if (c == '\'')
            quoted += "'\\''";
        else
            quoted += c;
    }
    quoted += "'";
    return quoted;
}

RunResult run_command(const std::string& command, const std::string& cwd) {
    std::string full = command + " 2>/dev/null";
    if (!cwd.empty()) full = "cd " + shell_quote(cwd) + " && " + full;

    RunResult result;
    FILE* pipe = popen(full.c_str(), "r");
    if (pipe == nullptr) throw std::runtime_error("popen failed: " + full);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
    const int status = pclose(pipe);
    result.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
    return result;
}

std::string make_scratch_dir(const std::string& hint) {
    static std::mt19937_64 rng(std::random_device{}());
    const auto base = std::filesystem::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::ostringstream name;
        name << "bugfix_" << hint << "_" << std::hex << rng();
        const auto dir = base / name.str();
        std::error_code ec;
        if (std::filesystem::create_directory(dir, ec)) return dir.string();
    }
    throw std::runtime_error("cannot create scratch directory");
}

std::string read_file_or_empty(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file_or_throw(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

} // namespace bugfix::testing
