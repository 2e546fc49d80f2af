#include "scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include "errors.hpp"
#include "fsio.hpp"
#include "match.hpp"
#include "minilang.hpp"
#include "spec_ast.hpp"
#include "tree_json.hpp"

namespace bugfix {

namespace {

bool is_json_path(const std::string& path) {
    constexpr std::string_view suffix = ".json";
    return path.size() >= suffix.size() && path.ends_with(suffix);
}

// Bucket a pattern reports under; patterns without a category are
// grouped so the shares still cover every match.
std::string category_of(const Pattern& pattern) {
    return pattern.category ? *pattern.category : "uncategorized";
}

double rounded_share(std::int64_t count, std::int64_t total) {
    if (total == 0) return 0.0;
    const double share = 100.0 * static_cast<double>(count) / static_cast<double>(total);
    return std::round(share * 10.0) / 10.0;
}

} // namespace

Tree load_program(const Registry& registry, const std::string& path) {
    const std::string text = read_text_file(path);
    if (is_json_path(path)) return decode_tree(registry, text);
    return parse_minilang(registry, text);
}

std::int64_t Report::total() const {
    std::int64_t sum = 0;
    for (const auto& [name, count] : per_pattern) sum += count;
    return sum;
}

Report scan_corpus(const Registry& registry, const std::vector<std::string>& paths) {
    std::vector<const Pattern*> scannable;
    for (const Pattern& pattern : registry.patterns())
        if (!pattern.seed_only) scannable.push_back(&pattern);

    std::map<std::string, std::int64_t> pattern_counts;
    for (const Pattern* pattern : scannable) pattern_counts[pattern->name] = 0;

    Report report;
    std::vector<std::string> sorted_paths = paths;
    std::sort(sorted_paths.begin(), sorted_paths.end());
    for (const std::string& path : sorted_paths) {
        Tree tree;
        try {
            tree = load_program(registry, path);
        } catch (const Error& error) {
            report.errors.push_back({path, error.what()});
            continue;
        }
        ++report.files;
        for (const Pattern* pattern : scannable) {
            pattern_counts[pattern->name] +=
                static_cast<std::int64_t>(match_pattern(registry, tree, *pattern).size());
        }
    }

    report.per_pattern.assign(pattern_counts.begin(), pattern_counts.end());

    // Canonical categories always appear, in reporting order; anything
    // else a loaded spec introduced follows alphabetically.
    std::map<std::string, std::int64_t> category_counts;
    for (const std::string& name : category_names()) category_counts[name] = 0;
    for (const Pattern* pattern : scannable) {
        category_counts[category_of(*pattern)] += pattern_counts[pattern->name];
    }
    for (const std::string& name : category_names()) {
        report.per_category.emplace_back(name, category_counts[name]);
        category_counts.erase(name);
    }
    for (const auto& [name, count] : category_counts) report.per_category.emplace_back(name, count);
    return report;
}

std::string format_percent(std::int64_t count, std::int64_t total) {
    const double share = rounded_share(count, total);
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f%%", share);
    return buffer;
}

nlohmann::ordered_json report_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["files"] = report.files;
    doc["per_pattern"] = nlohmann::ordered_json::object();
    for (const auto& [name, count] : report.per_pattern) doc["per_pattern"][name] = count;
    const std::int64_t total = report.total();
    doc["per_category"] = nlohmann::ordered_json::object();
    doc["percentages"] = nlohmann::ordered_json::object();
    for (const auto& [name, count] : report.per_category) {
        doc["per_category"][name] = count;
        doc["percentages"][name] = rounded_share(count, total);
    }
    doc["errors"] = nlohmann::ordered_json::array();
    for (const ScanError& error : report.errors) {
        doc["errors"].push_back({{"path", error.path}, {"message", error.message}});
    }
    return doc;
}

std::string report_text(const Report& report) {
    std::size_t width = std::string("category").size();
    for (const auto& [name, count] : report.per_pattern) width = std::max(width, name.size());
    for (const auto& [name, count] : report.per_category) width = std::max(width, name.size());

    const std::int64_t total = report.total();
    std::ostringstream out;
    out << "files: " << report.files << "\n";
    out << "matches: " << total << "\n";
    out << "\n";
    out << std::left << std::setw(static_cast<int>(width)) << "pattern" << std::right
        << std::setw(8) << "count" << "\n";
    for (const auto& [name, count] : report.per_pattern) {
        out << std::left << std::setw(static_cast<int>(width)) << name << std::right
            << std::setw(8) << count << "\n";
    }
    out << "\n";
    out << std::left << std::setw(static_cast<int>(width)) << "category" << std::right
        << std::setw(8) << "count" << std::setw(8) << "share" << "\n";
    for (const auto& [name, count] : report.per_category) {
        out << std::left << std::setw(static_cast<int>(width)) << name << std::right
            << std::setw(8) << count << std::setw(8) << format_percent(count, total) << "\n";
    }
    if (!report.errors.empty()) {
        out << "\nerrors:\n";
        for (const ScanError& error : report.errors) {
            out << error.path << ": " << error.message << "\n";
        }
    }
    return std::move(out).str();
}

} // namespace bugfix
