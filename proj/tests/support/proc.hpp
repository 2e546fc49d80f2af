#ifndef BUGFIX_TESTS_PROC_HPP
#define BUGFIX_TESTS_PROC_HPP

#include <string>
#include <vector>

namespace bugfix::testing {

struct RunResult {
    int exit_code = -1;
    std::string out;  // captured stdout
};

// Runs a command line through the shell with stderr folded away to a
// side channel; `cwd` empty means inherit.  Arguments are quoted by
// the caller.
RunResult run_command(const std::string& command, const std::string& cwd = "");

// Shell-quotes one argument.
std::string shell_quote(const std::string& text);

// Creates a fresh scratch directory under the system temp root.
std::string make_scratch_dir(const std::string& hint);

std::string read_file_or_empty(const std::string& path);
void write_file_or_throw(const std::string& path, const std::string& content);

} // namespace bugfix::testing

#endif
