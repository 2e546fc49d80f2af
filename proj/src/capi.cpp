#include "bugfix.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "errors.hpp"
#include "fix.hpp"
#include "match.hpp"
#include "minilang.hpp"
#include "node.hpp"
#include "registry.hpp"
#include "render.hpp"
#include "reverse.hpp"
#include "scan.hpp"
#include "seed.hpp"
#include "spec_parser.hpp"
#include "spec_printer.hpp"
#include "tree_json.hpp"

using namespace bugfix;

struct bugfix_context {
    std::vector<SpecUnit> units;
    std::optional<Registry> registry;
    std::string last_error;
};

struct bugfix_tree {
    Tree tree;
};

namespace {

bugfix_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Syntax: return BUGFIX_ERR_SYNTAX;
        case ErrorKind::Validation: return BUGFIX_ERR_VALIDATION;
        case ErrorKind::NotFound: return BUGFIX_ERR_NOT_FOUND;
        case ErrorKind::Apply: return BUGFIX_ERR_APPLY;
        case ErrorKind::NotInvertible: return BUGFIX_ERR_NOT_INVERTIBLE;
        case ErrorKind::Io: return BUGFIX_ERR_IO;
        case ErrorKind::Usage: return BUGFIX_ERR_USAGE;
    }
    return BUGFIX_ERR_INTERNAL;
}

// Runs the body of an API call, routing failures into the context's
// last-error slot.
template <typename Fn>
bugfix_status guarded(bugfix_context* context, Fn&& body) {
    if (context == nullptr) return BUGFIX_ERR_USAGE;
    context->last_error.clear();
    try {
        return body();
    } catch (const Error& error) {
        context->last_error = error.what();
        return status_of(error.kind());
    } catch (const std::exception& error) {
        context->last_error = error.what();
        return BUGFIX_ERR_INTERNAL;
    }
}

char* duplicate(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out == nullptr) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

bugfix_status give_string(bugfix_context* context, const std::string& text, char** out) {
    if (out == nullptr) {
        context->last_error = "output parameter is null";
        return BUGFIX_ERR_USAGE;
    }
    *out = duplicate(text);
    if (*out == nullptr) {
        context->last_error = "out of memory";
        return BUGFIX_ERR_INTERNAL;
    }
    return BUGFIX_OK;
}

const Registry& sealed(bugfix_context* context) {
    if (!context->registry) throw Error(ErrorKind::Usage, "context is not sealed");
    return *context->registry;
}

std::string require_text(const char* value, const char* what) {
    if (value == nullptr) throw Error(ErrorKind::Usage, std::string(what) + " is null");
    return value;
}

bool json_path(const std::string& path) {
    constexpr std::string_view suffix = ".json";
    return path.size() >= suffix.size() && path.ends_with(suffix);
}

Tree load_source(const Registry& registry, const std::string& path, const std::string& source) {
    if (json_path(path)) return decode_tree(registry, source);
    return parse_minilang(registry, source);
}

std::string emit_source(const Registry& registry, const Tree& tree, const std::string& path,
                        const std::string& language) {
    if (json_path(path)) return encode_tree(tree) + "\n";
    return render_tree(registry, *tree.root, language);
}

nlohmann::ordered_json binding_json(const std::string& name, const Node& node) {
    nlohmann::ordered_json out;
    out["name"] = name;
    out["construct"] = node.construct();
    out["id"] = node.id;
    if (node.span) out["span"] = {node.span->begin, node.span->end};
    return out;
}

const Pattern& named_pattern(const Registry& registry, const std::string& name) {
    const Pattern* pattern = registry.find_pattern(name);
    if (pattern == nullptr) throw Error(ErrorKind::NotFound, "unknown pattern '" + name + "'");
    return *pattern;
}

} // namespace

extern "C" {

const char* bugfix_version(void) { return "1.0.0"; }

bugfix_context* bugfix_context_new(void) {
    try {
        return new bugfix_context();
    } catch (...) {
        return nullptr;
    }
}

void bugfix_context_free(bugfix_context* context) { delete context; }

const char* bugfix_last_error(const bugfix_context* context) {
    return context == nullptr ? "" : context->last_error.c_str();
}

bugfix_status bugfix_context_add_spec(bugfix_context* context, const char* name, const char* text) {
    return guarded(context, [&] {
        if (context->registry) throw Error(ErrorKind::Usage, "context is already sealed");
        const std::string unit_name = name == nullptr ? "" : name;
        context->units.push_back(parse_spec(require_text(text, "spec text"), unit_name));
        return BUGFIX_OK;
    });
}

bugfix_status bugfix_context_add_bundled(bugfix_context* context) {
    return guarded(context, [&] {
        if (context->registry) throw Error(ErrorKind::Usage, "context is already sealed");
        context->units.push_back(parse_spec(bundled_catalog_text(), "catalog"));
        return BUGFIX_OK;
    });
}

bugfix_status bugfix_context_seal(bugfix_context* context) {
    return guarded(context, [&] {
        if (context->registry) throw Error(ErrorKind::Usage, "context is already sealed");
        context->registry = build_registry(context->units);
        return BUGFIX_OK;
    });
}

bugfix_status bugfix_context_diagnostics(bugfix_context* context, char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        std::string joined;
        for (const std::string& problem : validate_registry(registry)) {
            if (!joined.empty()) joined += "\n";
            joined += problem;
        }
        return give_string(context, joined, out);
    });
}

bugfix_status bugfix_pattern_names(bugfix_context* context, int include_seed_only, char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        std::string joined;
        for (const Pattern& pattern : registry.patterns()) {
            if (pattern.seed_only && include_seed_only == 0) continue;
            if (!joined.empty()) joined += "\n";
            joined += pattern.name;
        }
        return give_string(context, joined, out);
    });
}

bugfix_status bugfix_canonical_spec(bugfix_context* context, char** out) {
    return guarded(context, [&] {
        sealed(context);
        SpecUnit merged;
        for (const SpecUnit& unit : context->units) {
            merged.constructs.insert(merged.constructs.end(), unit.constructs.begin(),
                                     unit.constructs.end());
            merged.syntaxes.insert(merged.syntaxes.end(), unit.syntaxes.begin(),
                                   unit.syntaxes.end());
            merged.patterns.insert(merged.patterns.end(), unit.patterns.begin(),
                                   unit.patterns.end());
        }
        return give_string(context, render_spec(merged), out);
    });
}

bugfix_status bugfix_parse_program(bugfix_context* context, const char* source, bugfix_tree** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        if (out == nullptr) throw Error(ErrorKind::Usage, "output parameter is null");
        Tree tree = parse_minilang(registry, require_text(source, "source"));
        *out = new bugfix_tree{std::move(tree)};
        return BUGFIX_OK;
    });
}

bugfix_status bugfix_decode_tree(bugfix_context* context, const char* json_text, bugfix_tree** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        if (out == nullptr) throw Error(ErrorKind::Usage, "output parameter is null");
        Tree tree = decode_tree(registry, require_text(json_text, "json text"));
        *out = new bugfix_tree{std::move(tree)};
        return BUGFIX_OK;
    });
}

void bugfix_tree_free(bugfix_tree* tree) { delete tree; }

bugfix_status bugfix_encode_tree(bugfix_context* context, const bugfix_tree* tree, char** out) {
    return guarded(context, [&] {
        sealed(context);
        if (tree == nullptr) throw Error(ErrorKind::Usage, "tree is null");
        return give_string(context, encode_tree(tree->tree), out);
    });
}

bugfix_status bugfix_render_tree(bugfix_context* context, const bugfix_tree* tree,
                                 const char* language, char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        if (tree == nullptr) throw Error(ErrorKind::Usage, "tree is null");
        const std::string text =
            render_tree(registry, *tree->tree.root, require_text(language, "language"));
        return give_string(context, text, out);
    });
}

bugfix_status bugfix_match(bugfix_context* context, const bugfix_tree* tree, const char* pattern,
                           char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        if (tree == nullptr) throw Error(ErrorKind::Usage, "tree is null");
        const Pattern& target = named_pattern(registry, require_text(pattern, "pattern"));
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const Match& match : match_pattern(registry, tree->tree, target)) {
            nlohmann::ordered_json row;
            row["subject"] = binding_json(match.subject_name, *match.subject);
            row["bindings"] = nlohmann::ordered_json::array();
            for (const auto& [name, node] : match.bindings) {
                row["bindings"].push_back(binding_json(name, *node));
            }
            rows.push_back(std::move(row));
        }
        return give_string(context, rows.dump(), out);
    });
}

bugfix_status bugfix_apply(bugfix_context* context, const bugfix_tree* tree, const char* pattern,
                           size_t match_index, bugfix_tree** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        if (tree == nullptr) throw Error(ErrorKind::Usage, "tree is null");
        if (out == nullptr) throw Error(ErrorKind::Usage, "output parameter is null");
        const Pattern& target = named_pattern(registry, require_text(pattern, "pattern"));
        const std::vector<Match> matches = match_pattern(registry, tree->tree, target);
        if (match_index >= matches.size()) {
            throw Error(ErrorKind::Apply,
                        "match index " + std::to_string(match_index) + " is out of range; '" +
                            target.name + "' has " + std::to_string(matches.size()) + " match(es)");
        }
        Tree fixed = apply_fix(registry, tree->tree, target, matches[match_index]);
        *out = new bugfix_tree{std::move(fixed)};
        return BUGFIX_OK;
    });
}

bugfix_status bugfix_reverse_pattern(bugfix_context* context, const char* pattern, char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        const Pattern& target = named_pattern(registry, require_text(pattern, "pattern"));
        return give_string(context, render_pattern(reverse_pattern(registry, target)), out);
    });
}

bugfix_status bugfix_seed(bugfix_context* context, const char* request_json,
                          char** response_json_out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        nlohmann::json request;
        try {
            request = nlohmann::json::parse(require_text(request_json, "request"));
        } catch (const nlohmann::json::exception& error) {
            throw Error(ErrorKind::Syntax, std::string("invalid JSON: ") + error.what());
        }
        if (!request.is_object()) throw Error(ErrorKind::Usage, "seed request must be an object");
        if (!request.contains("files") || !request["files"].is_array())
            throw Error(ErrorKind::Usage, "seed request needs a files array");
        if (!request.contains("count") || !request["count"].is_number_integer())
            throw Error(ErrorKind::Usage, "seed request needs an integer count");
        if (!request.contains("rng_seed") || !request["rng_seed"].is_number_integer())
            throw Error(ErrorKind::Usage, "seed request needs an integer rng_seed");
        const std::string language = request.value("language", std::string("mini"));

        std::vector<SeedInputFile> inputs;
        for (const nlohmann::json& file : request["files"]) {
            if (!file.is_object() || !file.contains("path") || !file.contains("source") ||
                !file["path"].is_string() || !file["source"].is_string()) {
                throw Error(ErrorKind::Usage, "seed request files need path and source strings");
            }
            const std::string path = file["path"].get<std::string>();
            inputs.push_back({path, load_source(registry, path, file["source"].get<std::string>())});
        }

        const SeedPlan plan = request.contains("pattern")
                                  ? seed_plan_for(registry, request["pattern"].get<std::string>())
                                  : default_seed_plan(registry);
        const SeedOutcome outcome =
            seed_corpus(registry, inputs, plan, request["count"].get<std::int64_t>(),
                        request["rng_seed"].get<std::uint64_t>());

        nlohmann::ordered_json response;
        response["truth"] = ground_truth_json(outcome);
        response["files"] = nlohmann::ordered_json::array();
        for (const SeedFileResult& file : outcome.files) {
            nlohmann::ordered_json row;
            row["path"] = file.path;
            row["source"] = emit_source(registry, file.tree, file.path, language);
            row["changed"] = file.changed;
            response["files"].push_back(std::move(row));
        }
        return give_string(context, response.dump(), response_json_out);
    });
}

bugfix_status bugfix_restore_file(bugfix_context* context, const char* truth_json,
                                  const char* path, const char* source, const char* language,
                                  char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        const GroundTruth truth = parse_ground_truth(require_text(truth_json, "ground truth"));
        const std::string path_key = require_text(path, "path");
        const RestoreFile* entry = nullptr;
        for (const RestoreFile& file : truth.files) {
            if (file.path == path_key) {
                entry = &file;
                break;
            }
        }
        if (entry == nullptr) {
            throw Error(ErrorKind::NotFound,
                        "the ground truth has no entry for '" + path_key + "'");
        }
        const std::string lang = language == nullptr ? "mini" : language;
        Tree tree = load_source(registry, path_key, require_text(source, "source"));
        Tree restored = restore_tree(registry, tree, entry->records);
        return give_string(context, emit_source(registry, restored, path_key, lang), out);
    });
}

bugfix_status bugfix_scan(bugfix_context* context, const char* const* paths, size_t path_count,
                          int as_json, char** out) {
    return guarded(context, [&] {
        const Registry& registry = sealed(context);
        std::vector<std::string> files;
        files.reserve(path_count);
        for (size_t i = 0; i < path_count; ++i) {
            files.push_back(require_text(paths == nullptr ? nullptr : paths[i], "path"));
        }
        const Report report = scan_corpus(registry, files);
        return give_string(context, as_json != 0 ? report_json(report).dump() : report_text(report),
                           out);
    });
}

void bugfix_string_free(char* text) { std::free(text); }

} // extern "C"
