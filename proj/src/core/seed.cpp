#include "seed.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "errors.hpp"
#include "fix.hpp"
#include "match.hpp"
#include "reverse.hpp"
#include "tree_json.hpp"

namespace bugfix {

namespace {

// Mutation pattern for a repair pattern: its derived reverse when the
// pattern is invertible, otherwise a shipped <NAME>_REV seed pattern.
std::optional<Pattern> seeder_for(const Registry& registry, const Pattern& repair) {
    try {
        return reverse_pattern(registry, repair);
    } catch (const NotInvertibleError&) {
    }
    const Pattern* shipped = registry.find_pattern(repair.name + "_REV");
    if (shipped != nullptr && shipped->seed_only) return *shipped;
    return std::nullopt;
}

// True when one subject lies on the other's spine; damaging both would
// stack mutations instead of producing independent sites.
bool overlapping(const Node* a, const Node* b) {
    return is_within(a, b) || is_within(b, a);
}

// Position of the node carrying `id` in document order, counting from
// 1: the id it will carry once the rendered file is parsed again.
std::int64_t preorder_position(const Node& root, std::int64_t id) {
    std::int64_t position = 0;
    std::int64_t found = 0;
    walk_preorder(root, [&](const Node& node) {
        ++position;
        if (found == 0 && node.id == id) found = position;
    });
    if (found == 0) throw Error(ErrorKind::Apply, "seeded site lost its identity");
    return found;
}

} // namespace

SeedPlan default_seed_plan(const Registry& registry) {
    SeedPlan plan;
    for (const Pattern& pattern : registry.patterns()) {
        if (pattern.seed_only) continue;
        std::optional<Pattern> seeder = seeder_for(registry, pattern);
        if (!seeder) continue;
        plan.entries.push_back({std::move(*seeder), pattern.name});
    }
    return plan;
}

SeedPlan seed_plan_for(const Registry& registry, const std::string& name) {
    const Pattern* pattern = registry.find_pattern(name);
    if (pattern == nullptr) throw Error(ErrorKind::NotFound, "unknown pattern '" + name + "'");
    SeedPlan plan;
    if (pattern->seed_only) {
        // A seed pattern named <BASE>_REV is undone by BASE; any other
        // seed pattern restores by splicing the recorded original.
        std::string repair = name;
        constexpr std::string_view suffix = "_REV";
        if (name.size() > suffix.size() && name.ends_with(suffix)) {
            const Pattern* base = registry.find_pattern(name.substr(0, name.size() - suffix.size()));
            if (base != nullptr && !base->seed_only) repair = base->name;
        }
        plan.entries.push_back({*pattern, std::move(repair)});
        return plan;
    }
    std::optional<Pattern> seeder = seeder_for(registry, *pattern);
    if (!seeder) reverse_pattern(registry, *pattern);  // rethrows the precise reason
    plan.entries.push_back({std::move(*seeder), pattern->name});
    return plan;
}

SeedOutcome seed_corpus(const Registry& registry, const std::vector<SeedInputFile>& files,
                        const SeedPlan& plan, std::int64_t count, std::uint64_t rng_seed) {
    SeedOutcome outcome;
    outcome.rng_seed = rng_seed;
    outcome.requested = count;

    // Working state of every file; the pristine inputs stay alive so
    // drawn matches can still be resolved by id after earlier rewrites.
    std::vector<Tree> current;
    current.reserve(files.size());
    for (const SeedInputFile& file : files) current.push_back(clone_tree(file.tree));

    struct Site {
        std::size_t file = 0;
        std::size_t entry = 0;
        Match match;
    };
    std::vector<Site> pool;
    for (std::size_t f = 0; f < files.size(); ++f) {
        for (std::size_t e = 0; e < plan.entries.size(); ++e) {
            for (Match& match : match_pattern(registry, files[f].tree, plan.entries[e].seeder)) {
                pool.push_back({f, e, std::move(match)});
            }
        }
    }

    struct Applied {
        std::size_t file = 0;
        std::size_t entry = 0;
        const Node* subject = nullptr;  // pristine node
        std::int64_t subject_id = 0;
        std::int64_t ordinal = 0;
        nlohmann::ordered_json original;
        nlohmann::ordered_json mutated;
    };
    std::vector<Applied> applied;

    Xorshift64 rng(rng_seed);
    while (outcome.applied < count && !pool.empty()) {
        std::size_t index = static_cast<std::size_t>(rng.next() % pool.size());
        Site site = std::move(pool[index]);
        pool[index] = std::move(pool.back());
        pool.pop_back();

        bool blocked = false;
        for (const Applied& done : applied) {
            if (done.file == site.file && overlapping(done.subject, site.match.subject)) {
                blocked = true;
                break;
            }
        }
        if (blocked) continue;

        const SeedPlanEntry& entry = plan.entries[site.entry];
        Tree next = apply_fix(registry, current[site.file], entry.seeder, site.match);

        Applied record;
        record.file = site.file;
        record.entry = site.entry;
        record.subject = site.match.subject;
        record.subject_id = site.match.subject->id;
        record.ordinal = ++outcome.applied;
        record.original = node_to_json(*site.match.subject, false);
        // The replacement root carries the subject's id, so the site
        // stays addressable after the rewrite.
        const Node* mutated_root = find_by_id(*next.root, record.subject_id);
        if (mutated_root == nullptr) throw Error(ErrorKind::Apply, "seeded site lost its identity");
        record.mutated = node_to_json(*mutated_root, false);
        applied.push_back(std::move(record));
        current[site.file] = std::move(next);
    }
    outcome.truncated = outcome.applied < outcome.requested;

    outcome.files.reserve(files.size());
    for (std::size_t f = 0; f < files.size(); ++f) {
        SeedFileResult result;
        result.path = files[f].path;
        result.tree = std::move(current[f]);
        outcome.files.push_back(std::move(result));
    }
    for (Applied& done : applied) {
        SeedRecord record;
        record.ordinal = done.ordinal;
        record.pattern = plan.entries[done.entry].repair;
        record.seed_pattern = plan.entries[done.entry].seeder.name;
        record.location = preorder_position(*outcome.files[done.file].tree.root, done.subject_id);
        record.original = std::move(done.original);
        record.mutated = std::move(done.mutated);
        outcome.files[done.file].changed = true;
        outcome.files[done.file].records.push_back(std::move(record));
    }
    for (SeedFileResult& file : outcome.files) {
        std::sort(file.records.begin(), file.records.end(),
                  [](const SeedRecord& a, const SeedRecord& b) { return a.ordinal < b.ordinal; });
    }
    return outcome;
}

nlohmann::ordered_json ground_truth_json(const SeedOutcome& outcome) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["rng_seed"] = outcome.rng_seed;
    doc["requested"] = outcome.requested;
    doc["applied"] = outcome.applied;
    doc["truncated"] = outcome.truncated;
    doc["files"] = nlohmann::ordered_json::array();
    for (const SeedFileResult& file : outcome.files) {
        nlohmann::ordered_json entry;
        entry["path"] = file.path;
        entry["records"] = nlohmann::ordered_json::array();
        for (const SeedRecord& record : file.records) {
            nlohmann::ordered_json row;
            row["ordinal"] = record.ordinal;
            row["pattern"] = record.pattern;
            row["seed_pattern"] = record.seed_pattern;
            row["location"] = record.location;
            row["original"] = record.original;
            row["mutated"] = record.mutated;
            entry["records"].push_back(std::move(row));
        }
        doc["files"].push_back(std::move(entry));
    }
    return doc;
}

namespace {

[[noreturn]] void reject_truth(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Syntax, "ground truth: " + where + " " + what);
}

std::int64_t require_integer(const nlohmann::json& doc, const std::string& where) {
    if (!doc.is_number_integer()) reject_truth(where, "must be an integer");
    return doc.get<std::int64_t>();
}

std::string require_string(const nlohmann::json& doc, const std::string& where) {
    if (!doc.is_string()) reject_truth(where, "must be a string");
    return doc.get<std::string>();
}

const nlohmann::json& require_member(const nlohmann::json& doc, const char* member,
                                     const std::string& where) {
    auto it = doc.find(member);
    if (it == doc.end()) reject_truth(where + "." + member, "is missing");
    return *it;
}

} // namespace

GroundTruth parse_ground_truth(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& error) {
        throw Error(ErrorKind::Syntax, std::string("invalid JSON: ") + error.what());
    }
    if (!doc.is_object()) reject_truth("$", "must be an object");
    if (require_integer(require_member(doc, "version", "$"), "$.version") != 1)
        reject_truth("$.version", "is not a version this tool understands");

    GroundTruth truth;
    const nlohmann::json& seed = require_member(doc, "rng_seed", "$");
    if (!seed.is_number_integer() && !seed.is_number_unsigned())
        reject_truth("$.rng_seed", "must be an integer");
    truth.rng_seed = seed.get<std::uint64_t>();
    truth.requested = require_integer(require_member(doc, "requested", "$"), "$.requested");
    truth.applied = require_integer(require_member(doc, "applied", "$"), "$.applied");
    const nlohmann::json& truncated = require_member(doc, "truncated", "$");
    if (!truncated.is_boolean()) reject_truth("$.truncated", "must be a boolean");
    truth.truncated = truncated.get<bool>();

    const nlohmann::json& files = require_member(doc, "files", "$");
    if (!files.is_array()) reject_truth("$.files", "must be an array");
    for (std::size_t f = 0; f < files.size(); ++f) {
        const std::string file_path = "$.files[" + std::to_string(f) + "]";
        const nlohmann::json& file = files[f];
        if (!file.is_object()) reject_truth(file_path, "must be an object");
        RestoreFile out;
        out.path = require_string(require_member(file, "path", file_path), file_path + ".path");
        const nlohmann::json& records = require_member(file, "records", file_path);
        if (!records.is_array()) reject_truth(file_path + ".records", "must be an array");
        for (std::size_t r = 0; r < records.size(); ++r) {
            const std::string record_path = file_path + ".records[" + std::to_string(r) + "]";
            const nlohmann::json& record = records[r];
            if (!record.is_object()) reject_truth(record_path, "must be an object");
            RestoreRecord row;
            row.ordinal =
                require_integer(require_member(record, "ordinal", record_path), record_path + ".ordinal");
            row.pattern =
                require_string(require_member(record, "pattern", record_path), record_path + ".pattern");
            row.location = require_integer(require_member(record, "location", record_path),
                                           record_path + ".location");
            if (row.location <= 0) reject_truth(record_path + ".location", "must be a positive integer");
            row.original = require_member(record, "original", record_path);
            row.mutated = require_member(record, "mutated", record_path);
            if (!row.original.is_object()) reject_truth(record_path + ".original", "must be a node object");
            if (!row.mutated.is_object()) reject_truth(record_path + ".mutated", "must be a node object");
            out.records.push_back(std::move(row));
        }
        truth.files.push_back(std::move(out));
    }
    return truth;
}

namespace {

// Replaces the subtree at `site` with `replacement`, keeping the
// site's id on the new root and numbering the rest in document order
// after the largest id in the tree.
void splice(Tree& tree, Node* site, NodePtr replacement) {
    // The spliced copy comes in without ids; its root takes over the
    // site's id and the rest are numbered past everything taken.
    replacement->id = site->id;
    if (tree.root.get() == site) {
        tree.root = std::move(replacement);
    } else {
        Node* parent = site->parent;
        bool placed = false;
        for (FieldSlot& slot : parent->fields) {
            if (!slot.is_list && slot.single.get() == site) {
                slot.single = std::move(replacement);
                placed = true;
                break;
            }
            if (slot.is_list) {
                for (NodePtr& element : slot.list) {
                    if (element.get() == site) {
                        element = std::move(replacement);
                        placed = true;
                        break;
                    }
                }
            }
            if (placed) break;
        }
        if (!placed) throw Error(ErrorKind::Apply, "restored site lost its identity");
    }
    set_parents(*tree.root);
    std::int64_t next = max_id(*tree.root);
    walk_preorder(*tree.root, [&](Node& node) {
        if (node.id == 0) node.id = ++next;
    });
}

} // namespace

Tree restore_tree(const Registry& registry, const Tree& seeded,
                  const std::vector<RestoreRecord>& records) {
    Tree tree = clone_tree(seeded);
    for (const RestoreRecord& record : records) {
        Node* site = find_by_id(*tree.root, record.location);
        if (site == nullptr) {
            throw Error(ErrorKind::Apply, "no node with id " + std::to_string(record.location) +
                                              "; the ground truth does not describe this file");
        }
        NodePtr mutated = decode_node_json(registry, record.mutated, "$");
        if (!structural_equal(*site, *mutated)) {
            throw Error(ErrorKind::Apply, "node " + std::to_string(record.location) +
                                              " does not carry the recorded mutation");
        }
        NodePtr original = decode_node_json(registry, record.original, "$");
        const Pattern* repair = registry.find_pattern(record.pattern);
        if (repair == nullptr) {
            throw Error(ErrorKind::NotFound, "unknown pattern '" + record.pattern + "'");
        }
        if (repair->seed_only) {
            splice(tree, site, std::move(original));
            continue;
        }
        bool restored = false;
        const std::vector<Match> matches = match_pattern(registry, tree, *repair);
        for (const Match& match : matches) {
            if (match.subject->id != record.location) continue;
            Tree candidate = apply_fix(registry, tree, *repair, match);
            const Node* result = find_by_id(*candidate.root, record.location);
            if (result != nullptr && structural_equal(*result, *original)) {
                tree = std::move(candidate);
                restored = true;
                break;
            }
        }
        if (!restored) {
            throw Error(ErrorKind::Apply, "no application of '" + record.pattern + "' at node " +
                                              std::to_string(record.location) +
                                              " reproduces the recorded original");
        }
    }
    return tree;
}

} // namespace bugfix
