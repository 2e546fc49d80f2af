#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "fsio.hpp"
#include "scan.hpp"

using namespace bugfix;

namespace {

const Registry& catalog_registry() {
    static const Registry registry = bundled_registry();
    return registry;
}

std::vector<std::string> corpus_paths() {
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(FIXTURES_DIR "/corpus"))
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::int64_t count_of(const std::vector<std::pair<std::string, std::int64_t>>& rows,
                      const std::string& key) {
    for (const auto& [name, count] : rows)
        if (name == key) return count;
    return -1;
}

} // namespace

TEST_CASE("percentages render with one decimal") {
    CHECK(format_percent(51, 364) == "14.0%");
    CHECK(format_percent(0, 0) == "0.0%");
    CHECK(format_percent(0, 7) == "0.0%");
    CHECK(format_percent(7, 7) == "100.0%");
    CHECK(format_percent(1, 3) == "33.3%");
    CHECK(format_percent(2, 3) == "66.7%");
    CHECK(format_percent(1, 8) == "12.5%");
    CHECK(format_percent(1, 16) == "6.3%");
}

TEST_CASE("programs load from source or tree documents") {
    const Tree source = load_program(catalog_registry(), FIXTURES_DIR "/corpus/account.mini");
    CHECK(source.root->construct() == "PROGRAM");
    CHECK_THROWS_AS(load_program(catalog_registry(), FIXTURES_DIR "/no-such-file.mini"), Error);

    const auto scratch = std::filesystem::temp_directory_path() / "bugfix_scan_test.json";
    write_text_file(scratch.string(), R"({"construct":"IDENTIFIER","value":"x"})");
    const Tree doc = load_program(catalog_registry(), scratch.string());
    CHECK(doc.root->construct() == "IDENTIFIER");
    std::filesystem::remove(scratch);
}

TEST_CASE("the bundled corpus scans to the expected counts") {
    const Report report = scan_corpus(catalog_registry(), corpus_paths());
    CHECK(report.files == 10);
    CHECK(report.errors.empty());
    CHECK(report.total() == 10);

    CHECK(count_of(report.per_pattern, "MISSING_NULL_CHECK") == 4);
    CHECK(count_of(report.per_pattern, "PLUS_MINUS") == 2);
    CHECK(count_of(report.per_pattern, "EQ_NEQ") == 1);
    CHECK(count_of(report.per_pattern, "OFF_BY_ONE_INC") == 1);
    CHECK(count_of(report.per_pattern, "ORDER_LT_LE") == 1);
    CHECK(count_of(report.per_pattern, "TRUE_FALSE_FLIP") == 1);
    CHECK(count_of(report.per_pattern, "SWAPPED_ARGUMENTS") == 0);
    CHECK(count_of(report.per_pattern, "OFF_BY_ONE_DEC") == 0);

    // Seed-only patterns never scan, so they have no row at all.
    CHECK(count_of(report.per_pattern, "MISSING_NULL_CHECK_REV") == -1);
    CHECK(count_of(report.per_pattern, "WRONG_VARIABLE") == -1);
    CHECK(report.per_pattern.size() == 12);
    CHECK(std::is_sorted(report.per_pattern.begin(), report.per_pattern.end()));

    // Categories stay in reporting order, fully populated.
    const std::vector<std::string> expected_order{"null_check", "incorrect_variable",
                                                  "off_by_one", "order_operator", "true_false"};
    REQUIRE(report.per_category.size() == expected_order.size());
    for (std::size_t i = 0; i < expected_order.size(); ++i)
        CHECK(report.per_category[i].first == expected_order[i]);
    CHECK(count_of(report.per_category, "null_check") == 4);
    CHECK(count_of(report.per_category, "incorrect_variable") == 0);
    CHECK(count_of(report.per_category, "off_by_one") == 3);
    CHECK(count_of(report.per_category, "order_operator") == 2);
    CHECK(count_of(report.per_category, "true_false") == 1);
}

TEST_CASE("the corpus report matches the frozen document byte for byte") {
    const Report report = scan_corpus(catalog_registry(), corpus_paths());
    const std::string expected = read_text_file(FIXTURES_DIR "/expected_report.json");
    CHECK(report_json(report).dump() + "\n" == expected);
}

TEST_CASE("scan results do not depend on the order paths are given in") {
    auto paths = corpus_paths();
    const std::string forward = report_json(scan_corpus(catalog_registry(), paths)).dump();
    std::reverse(paths.begin(), paths.end());
    const std::string backward = report_json(scan_corpus(catalog_registry(), paths)).dump();
    CHECK(forward == backward);
}

TEST_CASE("unreadable and malformed files are reported, not fatal") {
    const auto scratch = std::filesystem::temp_directory_path() / "bugfix_scan_broken.mini";
    write_text_file(scratch.string(), "x = ;\n");

    std::vector<std::string> paths = {FIXTURES_DIR "/corpus/account.mini",
                                      FIXTURES_DIR "/missing.mini", scratch.string()};
    const Report report = scan_corpus(catalog_registry(), paths);
    CHECK(report.files == 1);
    REQUIRE(report.errors.size() == 2);
    // Errors come back sorted by path.
    CHECK(report.errors[0].path < report.errors[1].path);
    for (const auto& error : report.errors) CHECK_FALSE(error.message.empty());
    std::filesystem::remove(scratch);
}

TEST_CASE("an empty corpus yields an all-zero report") {
    const Report report = scan_corpus(catalog_registry(), {});
    CHECK(report.files == 0);
    CHECK(report.total() == 0);
    CHECK(report.errors.empty());
    const auto doc = report_json(report);
    CHECK(doc["files"] == 0);
    for (const auto& [key, value] : doc["percentages"].items()) {
        CAPTURE(key);
        CHECK(value == 0.0);
    }
}

TEST_CASE("the text report tabulates categories with shares") {
    const Report report = scan_corpus(catalog_registry(), corpus_paths());
    const std::string text = report_text(report);
    CHECK(text.find("null_check") != std::string::npos);
    CHECK(text.find("40.0%") != std::string::npos);
    CHECK(text.find("MISSING_NULL_CHECK") != std::string::npos);
    CHECK(text.find("10") != std::string::npos);
}
