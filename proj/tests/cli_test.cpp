#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/proc.hpp"

using bugfix::testing::RunResult;
using bugfix::testing::make_scratch_dir;
using bugfix::testing::read_file_or_empty;
using bugfix::testing::run_command;
using bugfix::testing::shell_quote;
using json = nlohmann::ordered_json;

namespace {

// Builds a command line for the installed binary; `env` is a raw
// shell prefix such as "VAR='value' ".
std::string cli(const std::string& args, const std::string& env = "") {
    return env + shell_quote(BUGFIX_CLI_PATH) + " " + args;
}

std::vector<std::string> corpus_paths() {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(FIXTURES_DIR "/corpus"))
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::string quoted_join(const std::vector<std::string>& items) {
    std::string out;
    for (const std::string& item : items) {
        if (!out.empty()) out += " ";
        out += shell_quote(item);
    }
    return out;
}

} // namespace

TEST_CASE("validate accepts the bundled catalog") {
    const RunResult result = run_command(cli("validate"));
    CHECK(result.exit_code == 0);
    CHECK(result.out.empty());
}

TEST_CASE("validate reports spec problems on stdout and exits nonzero") {
    const std::string dir = make_scratch_dir("validate");

    SUBCASE("parse failures carry their position") {
        bugfix::testing::write_file_or_throw(dir + "/bad.bugfix", "construct lower end\n");
        const RunResult result = run_command(cli("validate bad.bugfix"), dir);
        CHECK(result.exit_code == 1);
        CHECK(result.out.find("bad.bugfix") != std::string::npos);
        CHECK(result.out.find("1:11") != std::string::npos);
    }

    SUBCASE("registry diagnostics are printed after sealing") {
        bugfix::testing::write_file_or_throw(dir + "/ghost.bugfix",
                                             "construct THING inherit GHOST end\n");
        const RunResult result = run_command(cli("validate ghost.bugfix"), dir);
        CHECK(result.exit_code == 1);
        CHECK(result.out.find("GHOST") != std::string::npos);
    }
}

TEST_CASE("match prints findings and signals them in the exit code") {
    const std::string dir = make_scratch_dir("match");
    bugfix::testing::write_file_or_throw(dir + "/prog.mini", "x = a + b;\n");
    bugfix::testing::write_file_or_throw(dir + "/quiet.mini", "return 0;\n");

    SUBCASE("text output lists the subject and every binding") {
        const RunResult result = run_command(cli("match --pattern PLUS_MINUS prog.mini"), dir);
        CHECK(result.exit_code == 1);
        CHECK(result.out ==
              "prog.mini: PLUS_MINUS\n"
              "    e: SUM node 4 span [4, 9)\n"
              "    e1: IDENTIFIER node 5 span [4, 5)\n"
              "    e2: IDENTIFIER node 6 span [8, 9)\n");
    }

    SUBCASE("json output is one row per file and pattern") {
        const RunResult result =
            run_command(cli("match --format json --pattern PLUS_MINUS prog.mini"), dir);
        CHECK(result.exit_code == 1);
        CHECK(result.out ==
              R"([{"path":"prog.mini","pattern":"PLUS_MINUS","matches":[)"
              R"({"subject":{"name":"e","construct":"SUM","id":4,"span":[4,9]},)"
              R"("bindings":[{"name":"e1","construct":"IDENTIFIER","id":5,"span":[4,5]},)"
              R"({"name":"e2","construct":"IDENTIFIER","id":6,"span":[8,9]}]}]}])"
              "\n");
    }

    SUBCASE("a clean file produces no output and exit zero") {
        const RunResult text = run_command(cli("match quiet.mini"), dir);
        CHECK(text.exit_code == 0);
        CHECK(text.out.empty());

        const RunResult rows = run_command(cli("match --format json quiet.mini"), dir);
        CHECK(rows.exit_code == 0);
        CHECK(rows.out == "[]\n");
    }

    SUBCASE("a missing input is an error, not a usage mistake") {
        const RunResult result = run_command(cli("match nope.mini"), dir);
        CHECK(result.exit_code == 1);
        CHECK(result.out.empty());
    }
}

TEST_CASE("fix prints unified diffs and leaves the input alone") {
    const std::string dir = make_scratch_dir("fix");
    bugfix::testing::write_file_or_throw(dir + "/prog.mini", "x = a + b;\n");

    const RunResult result = run_command(cli("fix --pattern PLUS_MINUS prog.mini"), dir);
    CHECK(result.exit_code == 1);
    CHECK(result.out ==
          "--- prog.mini\n"
          "+++ prog.mini (PLUS_MINUS)\n"
          "@@ -1,1 +1,1 @@\n"
          "-x = a + b;\n"
          "+x = a - b;\n");
    CHECK(read_file_or_empty(dir + "/prog.mini") == "x = a + b;\n");
}

TEST_CASE("fix dedupes patterns that suggest the same text") {
    // PLUS_MINUS and OFF_BY_ONE_INC both turn a + 1 into a - 1; only
    // the first proposal is shown.
    const std::string dir = make_scratch_dir("fix_dedupe");
    bugfix::testing::write_file_or_throw(dir + "/twice.mini", "x = a + 1;\n");

    const RunResult result = run_command(cli("fix twice.mini"), dir);
    CHECK(result.exit_code == 1);
    CHECK(result.out ==
          "--- twice.mini\n"
          "+++ twice.mini (PLUS_MINUS)\n"
          "@@ -1,1 +1,1 @@\n"
          "-x = a + 1;\n"
          "+x = a - 1;\n");
}

TEST_CASE("fix --in-place rewrites files until nothing matches") {
    const std::string dir = make_scratch_dir("fix_in_place");
    bugfix::testing::write_file_or_throw(dir + "/prog.mini", "x = a + b;\n");

    const RunResult first = run_command(cli("fix --in-place --pattern PLUS_MINUS prog.mini"), dir);
    CHECK(first.exit_code == 1);
    CHECK(first.out == "rewrote prog.mini\n");
    CHECK(read_file_or_empty(dir + "/prog.mini") == "x = a - b;\n");

    const RunResult second =
        run_command(cli("fix --in-place --pattern PLUS_MINUS prog.mini"), dir);
    CHECK(second.exit_code == 0);
    CHECK(second.out.empty());
    CHECK(read_file_or_empty(dir + "/prog.mini") == "x = a - b;\n");
}

TEST_CASE("seed writes sibling files and prints the ground truth") {
    const std::string dir = make_scratch_dir("seed");
    bugfix::testing::write_file_or_throw(dir + "/work.mini", "x = a - b;\ny = c - d;\n");

    const RunResult result =
        run_command(cli("seed --pattern PLUS_MINUS --count 2 --rng-seed 42 work.mini"), dir);
    CHECK(result.exit_code == 0);
    CHECK(read_file_or_empty(dir + "/work.mini") == "x = a - b;\ny = c - d;\n");
    CHECK(read_file_or_empty(dir + "/work.seeded.mini") == "x = a + b;\ny = c + d;\n");

    const json truth = json::parse(result.out);
    CHECK(truth["version"] == 1);
    CHECK(truth["rng_seed"] == 42);
    CHECK(truth["applied"] == 2);
    CHECK(truth["truncated"] == false);
    REQUIRE(truth["files"].size() == 1);
    for (const json& record : truth["files"][0]["records"]) {
        CHECK(record["pattern"] == "PLUS_MINUS");
        CHECK(record["seed_pattern"] == "PLUS_MINUS_REV");
    }
}

TEST_CASE("a seeded corpus restores byte for byte from its ground truth") {
    const std::string dir = make_scratch_dir("seed_restore");
    const std::string work = "x = a - b;\ny = c - d;\n";
    const std::string other = "p.flush();\n";
    bugfix::testing::write_file_or_throw(dir + "/work.mini", work);
    bugfix::testing::write_file_or_throw(dir + "/other.mini", other);

    const RunResult seeded =
        run_command(cli("seed --count 2 --rng-seed 9 --in-place work.mini other.mini"), dir);
    REQUIRE(seeded.exit_code == 0);
    const json truth = json::parse(seeded.out);
    CHECK(truth["applied"] == 2);
    CHECK(read_file_or_empty(dir + "/work.mini") != work);
    // The qualified call offers no seed site, so the file is untouched.
    CHECK(read_file_or_empty(dir + "/other.mini") == other);

    bugfix::testing::write_file_or_throw(dir + "/truth.json", seeded.out);
    const RunResult restored = run_command(cli("fix --in-place truth.json"), dir);
    CHECK(restored.exit_code == 1);
    CHECK(restored.out == "restored work.mini\n");
    CHECK(read_file_or_empty(dir + "/work.mini") == work);
    CHECK(read_file_or_empty(dir + "/other.mini") == other);
}

TEST_CASE("report reproduces the recorded corpus statistics") {
    const std::string paths = quoted_join(corpus_paths());

    SUBCASE("json output is byte-identical to the recorded report") {
        const RunResult result = run_command(cli("report --format json " + paths));
        CHECK(result.exit_code == 0);
        CHECK(result.out == read_file_or_empty(FIXTURES_DIR "/expected_report.json"));
    }

    SUBCASE("the table names categories and patterns") {
        const RunResult result = run_command(cli("report " + paths));
        CHECK(result.exit_code == 0);
        CHECK(result.out.find("null_check") != std::string::npos);
        CHECK(result.out.find("MISSING_NULL_CHECK") != std::string::npos);
        CHECK(result.out.find("40.0%") != std::string::npos);
    }
}

TEST_CASE("spec files come from flags, the environment, or the bundle") {
    const std::string dir = make_scratch_dir("spec_sources");
    bugfix::testing::write_file_or_throw(dir + "/good.bugfix", "construct THING end\n");
    bugfix::testing::write_file_or_throw(dir + "/broken.bugfix",
                                         "construct THING inherit GHOST end\n");

    const std::string good_env = "BUGFIX_SPEC_PATH=" + shell_quote(dir + "/good.bugfix") + " ";
    const std::string broken_env = "BUGFIX_SPEC_PATH=" + shell_quote(dir + "/broken.bugfix") + " ";

    CHECK(run_command(cli("validate", good_env)).exit_code == 0);

    const RunResult broken = run_command(cli("validate", broken_env));
    CHECK(broken.exit_code == 1);
    CHECK(broken.out.find("GHOST") != std::string::npos);

    // An explicit --spec wins over the environment.
    const RunResult flagged =
        run_command(cli("validate --spec " + shell_quote(dir + "/good.bugfix"), broken_env));
    CHECK(flagged.exit_code == 0);
}

TEST_CASE("render canonicalizes programs and honors the language flag") {
    const std::string dir = make_scratch_dir("render");
    bugfix::testing::write_file_or_throw(dir + "/loose.mini", "x   =   a*( b+c )  ;\n");
    bugfix::testing::write_file_or_throw(
        dir + "/call2.json",
        R"({"construct":"CALL","fields":{"args":[{"construct":"IDENTIFIER","value":"low"},)"
        R"({"construct":"IDENTIFIER","value":"high"}],)"
        R"("r":{"construct":"ROUTINE","value":"clamp"}}})");
    bugfix::testing::write_file_or_throw(
        dir + "/call0.json",
        R"({"construct":"CALL","fields":{"args":[],"r":{"construct":"ROUTINE","value":"poll"}}})");

    CHECK(run_command(cli("render loose.mini"), dir).out == "x = a * (b + c);\n");
    CHECK(run_command(cli("render call2.json"), dir).out == "clamp(low, high)\n");
    CHECK(run_command(cli("render --lang java call2.json"), dir).out == "clamp (low, high)\n");
    CHECK(run_command(cli("render --lang eiffel call2.json"), dir).out == "clamp (low, high)\n");
    CHECK(run_command(cli("render --lang eiffel call0.json"), dir).out == "poll\n");

    // Statements have no Eiffel syntax, so whole programs cannot be
    // rendered there.
    const RunResult program = run_command(cli("render --lang eiffel loose.mini"), dir);
    CHECK(program.exit_code == 1);
    CHECK(program.out.empty());
}

TEST_CASE("usage mistakes exit with code two") {
    CHECK(run_command(cli("")).exit_code == 2);
    CHECK(run_command(cli("frobnicate")).exit_code == 2);
    CHECK(run_command(cli("seed work.mini")).exit_code == 2);
    CHECK(run_command(cli("match")).exit_code == 2);
}
