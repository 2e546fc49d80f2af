#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bugfix.h"

namespace {

// Preserves the key order of everything the library hands back.
using json = nlohmann::ordered_json;

// ------------------------------------------------------------------
// Library plumbing
// ------------------------------------------------------------------

struct ContextDeleter {
    void operator()(bugfix_context* context) const { bugfix_context_free(context); }
};
using ContextPtr = std::unique_ptr<bugfix_context, ContextDeleter>;

struct TreeDeleter {
    void operator()(bugfix_tree* tree) const { bugfix_tree_free(tree); }
};
using TreePtr = std::unique_ptr<bugfix_tree, TreeDeleter>;

// Takes ownership of a string the library allocated.
std::string take(char* text) {
    std::string out = text == nullptr ? "" : text;
    bugfix_string_free(text);
    return out;
}

int complain(const bugfix_context* context, const std::string& prefix) {
    std::cerr << prefix << bugfix_last_error(context) << "\n";
    return 1;
}

bool read_file(const std::string& path, std::string& out, std::string& error) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        error = path + ": cannot read file";
        return false;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = std::move(buffer).str();
    return true;
}

bool write_file(const std::string& path, const std::string& content, std::string& error) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        error = path + ": cannot write file";
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        error = path + ": cannot write file";
        return false;
    }
    return true;
}

bool has_suffix(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() && text.ends_with(suffix);
}

// Spec files named on the command line, else BUGFIX_SPEC_PATH
// (colon-separated), else the catalog compiled into the library.
std::vector<std::string> effective_specs(const std::vector<std::string>& given) {
    if (!given.empty()) return given;
    std::vector<std::string> paths;
    const char* env = std::getenv("BUGFIX_SPEC_PATH");
    if (env != nullptr) {
        std::string item;
        std::istringstream stream{std::string(env)};
        while (std::getline(stream, item, ':'))
            if (!item.empty()) paths.push_back(item);
    }
    return paths;
}

// Loads and seals a context.  On failure prints the problem and
// resets the pointer.
ContextPtr make_context(const std::vector<std::string>& spec_args) {
    ContextPtr context(bugfix_context_new());
    if (!context) {
        std::cerr << "out of memory\n";
        return nullptr;
    }
    const std::vector<std::string> specs = effective_specs(spec_args);
    if (specs.empty()) {
        if (bugfix_context_add_bundled(context.get()) != BUGFIX_OK) {
            complain(context.get(), "catalog: ");
            return nullptr;
        }
    }
    for (const std::string& path : specs) {
        std::string text;
        std::string error;
        if (!read_file(path, text, error)) {
            std::cerr << error << "\n";
            return nullptr;
        }
        if (bugfix_context_add_spec(context.get(), path.c_str(), text.c_str()) != BUGFIX_OK) {
            complain(context.get(), path + ": ");
            return nullptr;
        }
    }
    if (bugfix_context_seal(context.get()) != BUGFIX_OK) {
        complain(context.get(), "");
        return nullptr;
    }
    return context;
}

// Refuses to run engine operations against a spec with validation
// problems.
bool ensure_clean(bugfix_context* context) {
    char* raw = nullptr;
    if (bugfix_context_diagnostics(context, &raw) != BUGFIX_OK) {
        complain(context, "");
        return false;
    }
    const std::string diagnostics = take(raw);
    if (!diagnostics.empty()) {
        std::cerr << diagnostics << "\n";
        return false;
    }
    return true;
}

TreePtr load_tree(bugfix_context* context, const std::string& path, const std::string& source) {
    bugfix_tree* raw = nullptr;
    const bugfix_status status =
        has_suffix(path, ".json") ? bugfix_decode_tree(context, source.c_str(), &raw)
                                  : bugfix_parse_program(context, source.c_str(), &raw);
    if (status != BUGFIX_OK) {
        complain(context, path + ": ");
        return nullptr;
    }
    return TreePtr(raw);
}

// Renders for human-facing diffs; JSON trees re-encode canonically
// when written back to disk instead.
bool render_text(bugfix_context* context, const bugfix_tree* tree, const std::string& language,
                 const std::string& path, std::string& out) {
    char* raw = nullptr;
    if (bugfix_render_tree(context, tree, language.c_str(), &raw) != BUGFIX_OK) {
        complain(context, path + ": ");
        return false;
    }
    out = take(raw);
    return true;
}

bool emit_for_path(bugfix_context* context, const bugfix_tree* tree, const std::string& language,
                   const std::string& path, std::string& out) {
    if (!has_suffix(path, ".json")) return render_text(context, tree, language, path, out);
    char* raw = nullptr;
    if (bugfix_encode_tree(context, tree, &raw) != BUGFIX_OK) {
        complain(context, path + ": ");
        return false;
    }
    out = take(raw) + "\n";
    return true;
}

std::vector<std::string> pattern_names(bugfix_context* context) {
    char* raw = nullptr;
    if (bugfix_pattern_names(context, 0, &raw) != BUGFIX_OK) return {};
    const std::string joined = take(raw);
    std::vector<std::string> names;
    std::string item;
    std::istringstream stream(joined);
    while (std::getline(stream, item))
        if (!item.empty()) names.push_back(item);
    return names;
}

bool matches_of(bugfix_context* context, const bugfix_tree* tree, const std::string& pattern,
                const std::string& path, json& out) {
    char* raw = nullptr;
    if (bugfix_match(context, tree, pattern.c_str(), &raw) != BUGFIX_OK) {
        complain(context, path + ": ");
        return false;
    }
    out = json::parse(take(raw));
    return true;
}

// ------------------------------------------------------------------
// Unified diff over rendered lines
// ------------------------------------------------------------------

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (const char c : text) {
        if (c == '\n') {
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) lines.push_back(std::move(current));
    return lines;
}

struct DiffOp {
    char tag;  // ' ', '-', '+'
    const std::string* line;
};

std::vector<DiffOp> diff_ops(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1
                                     : std::max(lcs[i + 1][j], lcs[i][j + 1]);
        }
    }
    std::vector<DiffOp> ops;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < n && j < m) {
        if (a[i] == b[j]) {
            ops.push_back({' ', &a[i]});
            ++i;
            ++j;
        } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
            ops.push_back({'-', &a[i]});
            ++i;
        } else {
            ops.push_back({'+', &b[j]});
            ++j;
        }
    }
    for (; i < n; ++i) ops.push_back({'-', &a[i]});
    for (; j < m; ++j) ops.push_back({'+', &b[j]});
    return ops;
}

// One hunk with three lines of context around the changed region.
std::string unified_diff(const std::string& from_label, const std::string& to_label,
                         const std::string& before, const std::string& after) {
    const std::vector<std::string> a = split_lines(before);
    const std::vector<std::string> b = split_lines(after);
    const std::vector<DiffOp> ops = diff_ops(a, b);

    std::size_t first = ops.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < ops.size(); ++k) {
        if (ops[k].tag != ' ') {
            first = std::min(first, k);
            last = k;
        }
    }
    if (first == ops.size()) return "";  // identical

    constexpr std::size_t context = 3;
    const std::size_t begin = first >= context ? first - context : 0;
    const std::size_t end = std::min(ops.size(), last + context + 1);

    std::size_t a_pos = 1;
    std::size_t b_pos = 1;
    for (std::size_t k = 0; k < begin; ++k) {
        if (ops[k].tag != '+') ++a_pos;
        if (ops[k].tag != '-') ++b_pos;
    }
    std::size_t a_count = 0;
    std::size_t b_count = 0;
    for (std::size_t k = begin; k < end; ++k) {
        if (ops[k].tag != '+') ++a_count;
        if (ops[k].tag != '-') ++b_count;
    }

    std::ostringstream out;
    out << "--- " << from_label << "\n";
    out << "+++ " << to_label << "\n";
    out << "@@ -" << (a_count == 0 ? a_pos - 1 : a_pos) << "," << a_count << " +"
        << (b_count == 0 ? b_pos - 1 : b_pos) << "," << b_count << " @@\n";
    for (std::size_t k = begin; k < end; ++k) {
        out << ops[k].tag << *ops[k].line << "\n";
    }
    return std::move(out).str();
}

// ------------------------------------------------------------------
// Subcommands
// ------------------------------------------------------------------

struct Options {
    std::vector<std::string> specs;
    std::vector<std::string> inputs;
    std::string pattern;
    std::string lang = "mini";
    std::string format = "text";
    bool in_place = false;
    std::int64_t count = 0;
    std::uint64_t rng_seed = 0;
};

int run_validate(const Options& options) {
    ContextPtr context(bugfix_context_new());
    if (!context) {
        std::cerr << "out of memory\n";
        return 1;
    }
    std::vector<std::string> specs = options.specs;
    specs.insert(specs.end(), options.inputs.begin(), options.inputs.end());
    specs = effective_specs(specs);
    int rc = 0;
    if (specs.empty()) {
        if (bugfix_context_add_bundled(context.get()) != BUGFIX_OK)
            return complain(context.get(), "catalog: ");
    }
    for (const std::string& path : specs) {
        std::string text;
        std::string error;
        if (!read_file(path, text, error)) {
            std::cout << error << "\n";
            rc = 1;
            continue;
        }
        if (bugfix_context_add_spec(context.get(), path.c_str(), text.c_str()) != BUGFIX_OK) {
            std::cout << path << ": " << bugfix_last_error(context.get()) << "\n";
            rc = 1;
        }
    }
    if (rc != 0) return rc;
    if (bugfix_context_seal(context.get()) != BUGFIX_OK) {
        std::cout << bugfix_last_error(context.get()) << "\n";
        return 1;
    }
    char* raw = nullptr;
    if (bugfix_context_diagnostics(context.get(), &raw) != BUGFIX_OK)
        return complain(context.get(), "");
    const std::string diagnostics = take(raw);
    if (!diagnostics.empty()) {
        std::cout << diagnostics << "\n";
        return 1;
    }
    return 0;
}

void print_match_text(const std::string& path, const std::string& pattern, const json& matches) {
    for (const json& match : matches) {
        const json& subject = match["subject"];
        std::cout << path << ": " << pattern << "\n";
        auto line = [](const json& binding) {
            std::ostringstream out;
            out << "    " << binding["name"].get<std::string>() << ": "
                << binding["construct"].get<std::string>() << " node " << binding["id"].get<std::int64_t>();
            if (binding.contains("span")) {
                out << " span [" << binding["span"][0].get<std::int64_t>() << ", "
                    << binding["span"][1].get<std::int64_t>() << ")";
            }
            return std::move(out).str();
        };
        std::cout << line(subject) << "\n";
        for (const json& binding : match["bindings"]) std::cout << line(binding) << "\n";
    }
}

int run_match(const Options& options) {
    ContextPtr context = make_context(options.specs);
    if (!context || !ensure_clean(context.get())) return 1;
    const std::vector<std::string> patterns =
        options.pattern.empty() ? pattern_names(context.get())
                                : std::vector<std::string>{options.pattern};
    json rows = json::array();
    bool any = false;
    for (const std::string& path : options.inputs) {
        std::string source;
        std::string error;
        if (!read_file(path, source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        TreePtr tree = load_tree(context.get(), path, source);
        if (!tree) return 1;
        for (const std::string& pattern : patterns) {
            json matches;
            if (!matches_of(context.get(), tree.get(), pattern, path, matches)) return 1;
            if (matches.empty()) continue;
            any = true;
            if (options.format == "json") {
                rows.push_back({{"path", path}, {"pattern", pattern}, {"matches", matches}});
            } else {
                print_match_text(path, pattern, matches);
            }
        }
    }
    if (options.format == "json") std::cout << rows.dump() << "\n";
    return any ? 1 : 0;
}

int run_render(const Options& options) {
    ContextPtr context = make_context(options.specs);
    if (!context || !ensure_clean(context.get())) return 1;
    for (const std::string& path : options.inputs) {
        std::string source;
        std::string error;
        if (!read_file(path, source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        TreePtr tree = load_tree(context.get(), path, source);
        if (!tree) return 1;
        std::string text;
        if (!render_text(context.get(), tree.get(), options.lang, path, text)) return 1;
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    }
    return 0;
}

// Restores the files a ground-truth document describes.
int run_fix_truth(bugfix_context* context, const Options& options, const std::string& truth_path,
                  const std::string& truth_text, const json& truth) {
    const std::filesystem::path base = std::filesystem::path(truth_path).parent_path();
    bool any = false;
    for (const json& file : truth["files"]) {
        const std::string recorded = file["path"].get<std::string>();
        if (file["records"].empty()) continue;
        const std::filesystem::path disk =
            std::filesystem::path(recorded).is_absolute() ? std::filesystem::path(recorded)
                                                          : base / recorded;
        std::string source;
        std::string error;
        if (!read_file(disk.string(), source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        char* raw = nullptr;
        if (bugfix_restore_file(context, truth_text.c_str(), recorded.c_str(), source.c_str(),
                                options.lang.c_str(), &raw) != BUGFIX_OK) {
            return complain(context, disk.string() + ": ");
        }
        const std::string restored = take(raw);
        if (restored == source) continue;
        any = true;
        if (options.in_place) {
            if (!write_file(disk.string(), restored, error)) {
                std::cerr << error << "\n";
                return 1;
            }
            std::cout << "restored " << disk.string() << "\n";
        } else {
            std::cout << unified_diff(disk.string(), disk.string() + " (restored)", source,
                                      restored);
        }
    }
    return any ? 1 : 0;
}

int run_fix(const Options& options) {
    ContextPtr context = make_context(options.specs);
    if (!context || !ensure_clean(context.get())) return 1;

    // A JSON argument holding a ground-truth document switches to
    // restoration; everything else is treated as a program.
    for (const std::string& path : options.inputs) {
        if (!has_suffix(path, ".json")) continue;
        std::string text;
        std::string error;
        if (!read_file(path, text, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        json doc = json::parse(text, nullptr, false);
        if (doc.is_object() && doc.contains("version") && doc.contains("files")) {
            if (options.inputs.size() != 1) {
                std::cerr << "a ground-truth document must be the only input\n";
                return 2;
            }
            return run_fix_truth(context.get(), options, path, text, doc);
        }
    }

    const std::vector<std::string> patterns =
        options.pattern.empty() ? pattern_names(context.get())
                                : std::vector<std::string>{options.pattern};
    bool any = false;
    for (const std::string& path : options.inputs) {
        std::string source;
        std::string error;
        if (!read_file(path, source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        TreePtr tree = load_tree(context.get(), path, source);
        if (!tree) return 1;

        if (options.in_place) {
            // Apply fixes until none are left, touching each subject
            // only once so complementary patterns cannot oscillate.
            std::set<std::int64_t> fixed;
            bool changed = false;
            for (int round = 0; round < 10000; ++round) {
                bool applied = false;
                for (const std::string& pattern : patterns) {
                    json matches;
                    if (!matches_of(context.get(), tree.get(), pattern, path, matches)) return 1;
                    for (std::size_t index = 0; index < matches.size(); ++index) {
                        const std::int64_t id = matches[index]["subject"]["id"].get<std::int64_t>();
                        if (fixed.count(id) != 0) continue;
                        bugfix_tree* next = nullptr;
                        if (bugfix_apply(context.get(), tree.get(), pattern.c_str(), index,
                                         &next) != BUGFIX_OK) {
                            return complain(context.get(), path + ": ");
                        }
                        tree.reset(next);
                        fixed.insert(id);
                        applied = true;
                        changed = true;
                        break;
                    }
                    if (applied) break;
                }
                if (!applied) break;
            }
            if (changed) {
                std::string out;
                if (!emit_for_path(context.get(), tree.get(), options.lang, path, out)) return 1;
                if (!write_file(path, out, error)) {
                    std::cerr << error << "\n";
                    return 1;
                }
                std::cout << "rewrote " << path << "\n";
                any = true;
            }
            continue;
        }

        std::string before;
        if (!render_text(context.get(), tree.get(), options.lang, path, before)) return 1;
        std::set<std::string> seen;  // rendered results already shown
        for (const std::string& pattern : patterns) {
            json matches;
            if (!matches_of(context.get(), tree.get(), pattern, path, matches)) return 1;
            for (std::size_t index = 0; index < matches.size(); ++index) {
                bugfix_tree* raw = nullptr;
                if (bugfix_apply(context.get(), tree.get(), pattern.c_str(), index, &raw) !=
                    BUGFIX_OK) {
                    return complain(context.get(), path + ": ");
                }
                TreePtr fixed_tree(raw);
                std::string after;
                if (!render_text(context.get(), fixed_tree.get(), options.lang, path, after))
                    return 1;
                if (!seen.insert(after).second) continue;
                std::cout << unified_diff(path, path + " (" + pattern + ")", before, after);
                any = true;
            }
        }
    }
    return any ? 1 : 0;
}

std::string seeded_name(const std::string& path) {
    const std::filesystem::path p(path);
    const std::filesystem::path renamed =
        p.parent_path() / (p.stem().string() + ".seeded" + p.extension().string());
    return renamed.string();
}

int run_seed(const Options& options) {
    ContextPtr context = make_context(options.specs);
    if (!context || !ensure_clean(context.get())) return 1;
    json request;
    request["files"] = json::array();
    for (const std::string& path : options.inputs) {
        std::string source;
        std::string error;
        if (!read_file(path, source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
        request["files"].push_back({{"path", path}, {"source", source}});
    }
    request["count"] = options.count;
    request["rng_seed"] = options.rng_seed;
    request["language"] = options.lang;
    if (!options.pattern.empty()) request["pattern"] = options.pattern;

    char* raw = nullptr;
    if (bugfix_seed(context.get(), request.dump().c_str(), &raw) != BUGFIX_OK)
        return complain(context.get(), "");
    const json response = json::parse(take(raw));

    for (const json& file : response["files"]) {
        const std::string path = file["path"].get<std::string>();
        const std::string source = file["source"].get<std::string>();
        std::string error;
        if (options.in_place) {
            if (file["changed"].get<bool>() && !write_file(path, source, error)) {
                std::cerr << error << "\n";
                return 1;
            }
        } else if (!write_file(seeded_name(path), source, error)) {
            std::cerr << error << "\n";
            return 1;
        }
    }
    const json& truth = response["truth"];
    if (truth["truncated"].get<bool>()) {
        std::cerr << "warning: only " << truth["applied"] << " of " << truth["requested"]
                  << " requested mutations had sites\n";
    }
    std::cout << truth.dump() << "\n";
    return 0;
}

int run_report(const Options& options) {
    ContextPtr context = make_context(options.specs);
    if (!context || !ensure_clean(context.get())) return 1;
    std::vector<const char*> paths;
    paths.reserve(options.inputs.size());
    for (const std::string& path : options.inputs) paths.push_back(path.c_str());

    char* raw = nullptr;
    if (bugfix_scan(context.get(), paths.data(), paths.size(), 1, &raw) != BUGFIX_OK)
        return complain(context.get(), "");
    const std::string report_text = take(raw);
    const json report = json::parse(report_text);
    if (options.format == "json") {
        std::cout << report_text;
        if (report_text.empty() || report_text.back() != '\n') std::cout << "\n";
    } else {
        if (bugfix_scan(context.get(), paths.data(), paths.size(), 0, &raw) != BUGFIX_OK)
            return complain(context.get(), "");
        std::cout << take(raw);
    }
    return report["errors"].empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pattern-based bug detection, repair, and seeding"};
    app.require_subcommand(1);

    Options validate_opts;
    Options match_opts;
    Options fix_opts;
    Options seed_opts;
    Options render_opts;
    Options report_opts;

    auto add_spec_option = [](CLI::App* sub, Options& options) {
        sub->add_option("--spec", options.specs,
                        "specification file; repeatable (default: BUGFIX_SPEC_PATH, then the "
                        "bundled catalog)");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check specification files");
    add_spec_option(validate_cmd, validate_opts);
    validate_cmd->add_option("specs", validate_opts.inputs, "specification files");

    CLI::App* match_cmd = app.add_subcommand("match", "find pattern matches in programs");
    add_spec_option(match_cmd, match_opts);
    match_cmd->add_option("--pattern", match_opts.pattern, "restrict to one pattern");
    match_cmd->add_option("--format", match_opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    match_cmd->add_option("files", match_opts.inputs, "program files")->required();

    CLI::App* fix_cmd =
        app.add_subcommand("fix", "suggest or apply fixes; restores seeded corpora from a "
                                  "ground-truth document");
    add_spec_option(fix_cmd, fix_opts);
    fix_cmd->add_option("--pattern", fix_opts.pattern, "restrict to one pattern");
    fix_cmd->add_option("--lang", fix_opts.lang, "rendering language (default mini)");
    fix_cmd->add_flag("--in-place", fix_opts.in_place, "rewrite files instead of printing diffs");
    fix_cmd->add_option("files", fix_opts.inputs, "program files or one ground-truth document")
        ->required();

    CLI::App* seed_cmd = app.add_subcommand("seed", "inject bugs and emit their ground truth");
    add_spec_option(seed_cmd, seed_opts);
    seed_cmd->add_option("--pattern", seed_opts.pattern, "seed with one pattern only");
    seed_cmd->add_option("--lang", seed_opts.lang, "rendering language (default mini)");
    seed_cmd->add_option("--count", seed_opts.count, "number of mutations")
        ->required()
        ->check(CLI::NonNegativeNumber);
    seed_cmd->add_option("--rng-seed", seed_opts.rng_seed, "random generator seed")->required();
    seed_cmd->add_flag("--in-place", seed_opts.in_place,
                       "overwrite inputs instead of writing <stem>.seeded files");
    seed_cmd->add_option("files", seed_opts.inputs, "program files")->required();

    CLI::App* render_cmd = app.add_subcommand("render", "print a program in a concrete syntax");
    add_spec_option(render_cmd, render_opts);
    render_cmd->add_option("--lang", render_opts.lang, "rendering language (default mini)");
    render_cmd->add_option("files", render_opts.inputs, "program files")->required();

    CLI::App* report_cmd = app.add_subcommand("report", "scan a corpus and report statistics");
    add_spec_option(report_cmd, report_opts);
    report_cmd->add_option("--format", report_opts.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    report_cmd->add_option("files", report_opts.inputs, "corpus files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 2;
    }

    if (*validate_cmd) return run_validate(validate_opts);
    if (*match_cmd) return run_match(match_opts);
    if (*fix_cmd) return run_fix(fix_opts);
    if (*seed_cmd) return run_seed(seed_opts);
    if (*render_cmd) return run_render(render_opts);
    if (*report_cmd) return run_report(report_opts);
    return 2;
}
