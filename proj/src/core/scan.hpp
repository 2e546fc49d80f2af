#ifndef BUGFIX_CORE_SCAN_HPP
#define BUGFIX_CORE_SCAN_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "node.hpp"
#include "registry.hpp"

namespace bugfix {

// Loads a program tree from disk: `.json` documents are decoded
// against the registry, anything else is parsed as MiniLang source.
Tree load_program(const Registry& registry, const std::string& path);

struct ScanError {
    std::string path;
    std::string message;
};

// Corpus-wide match statistics.  Patterns marked seed-only describe
// mutations, not defects, and are left out of scanning.
struct Report {
    std::int64_t files = 0;  // successfully scanned
    std::vector<std::pair<std::string, std::int64_t>> per_pattern;   // sorted by name
    std::vector<std::pair<std::string, std::int64_t>> per_category;  // reporting order
    std::vector<ScanError> errors;                                   // sorted by path

    std::int64_t total() const;
};

// Scans every path with every scannable pattern and aggregates the
// counts.  Files that cannot be read, parsed, or decoded are recorded
// under `errors` and skipped; the scan itself never fails.  The result
// is independent of the order paths are given in.
Report scan_corpus(const Registry& registry, const std::vector<std::string>& paths);

// Share of `count` in `total` as a percentage with one decimal, e.g.
// 51 of 364 gives "14.0%".  A zero total gives "0.0%".
std::string format_percent(std::int64_t count, std::int64_t total);

// Canonical JSON form: keys files, per_pattern, per_category,
// percentages, errors.
nlohmann::ordered_json report_json(const Report& report);

// Human-readable table.
std::string report_text(const Report& report);

} // namespace bugfix

#endif
