#ifndef BUGFIX_CORE_SEED_HPP
#define BUGFIX_CORE_SEED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "node.hpp"
#include "registry.hpp"
#include "spec_ast.hpp"

namespace bugfix {

// Deterministic generator behind site selection.  The draw sequence
// depends only on the seed, so equal seeds give equal corpora.
struct Xorshift64 {
    std::uint64_t state;

    explicit Xorshift64(std::uint64_t seed) : state(seed == 0 ? 1 : seed) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

// One mutation source: the pattern applied to damage a site, plus the
// name of the pattern that repairs it again.
struct SeedPlanEntry {
    Pattern seeder;
    std::string repair;
};

struct SeedPlan {
    std::vector<SeedPlanEntry> entries;
};

// Pairs every repairable catalog pattern with its mutation: the
// derived reverse when the pattern is invertible, otherwise a shipped
// <NAME>_REV seed pattern.  Patterns with neither are left out, as are
// seed-only patterns (those are mutations already and must be asked
// for by name).
SeedPlan default_seed_plan(const Registry& registry);

// Restricts seeding to one pattern, named from either side: a repair
// pattern seeds through its reverse, a seed-only pattern is applied
// directly and repaired by its base pattern when one exists.  Throws
// NotFound for unknown names and NotInvertibleError when a repair
// pattern has no usable reverse.
SeedPlan seed_plan_for(const Registry& registry, const std::string& name);

struct SeedInputFile {
    std::string path;
    Tree tree;
};

// One applied mutation, in ground-truth form.  `location` is the
// position of the mutated subtree root in document order, which is the
// id the node carries once the seeded file is parsed again.
struct SeedRecord {
    std::int64_t ordinal = 0;
    std::string pattern;       // repairs the site
    std::string seed_pattern;  // was applied to the site
    std::int64_t location = 0;
    nlohmann::ordered_json original;  // structural, no ids or spans
    nlohmann::ordered_json mutated;
};

struct SeedFileResult {
    std::string path;
    Tree tree;  // state after seeding
    bool changed = false;
    std::vector<SeedRecord> records;  // in application order
};

struct SeedOutcome {
    std::uint64_t rng_seed = 0;
    std::int64_t requested = 0;
    std::int64_t applied = 0;
    bool truncated = false;  // ran out of sites before `requested`
    std::vector<SeedFileResult> files;
};

// Damages up to `count` sites across the corpus.  Candidate sites are
// all matches of the plan's seed patterns, enumerated in file, plan,
// match order; they are drawn at random without replacement, and a
// draw that overlaps an already damaged site in the same file is
// discarded.
SeedOutcome seed_corpus(const Registry& registry, const std::vector<SeedInputFile>& files,
                        const SeedPlan& plan, std::int64_t count, std::uint64_t rng_seed);

// Ground-truth document for a seeding run.
nlohmann::ordered_json ground_truth_json(const SeedOutcome& outcome);

// Parsed ground truth, ready to drive restoration.
struct RestoreRecord {
    std::int64_t ordinal = 0;
    std::string pattern;
    std::int64_t location = 0;
    nlohmann::json original;
    nlohmann::json mutated;
};

struct RestoreFile {
    std::string path;
    std::vector<RestoreRecord> records;
};

struct GroundTruth {
    std::uint64_t rng_seed = 0;
    std::int64_t requested = 0;
    std::int64_t applied = 0;
    bool truncated = false;
    std::vector<RestoreFile> files;
};

// Validates and loads a ground-truth document; rejections name the
// offending member.
GroundTruth parse_ground_truth(const std::string& json_text);

// Undoes recorded mutations: each site is re-matched with its repair
// pattern and the application reproducing the recorded original is
// taken; sites of seed-only patterns splice the original back in.
Tree restore_tree(const Registry& registry, const Tree& seeded,
                  const std::vector<RestoreRecord>& records);

} // namespace bugfix

#endif
