#ifndef BUGFIX_CORE_REGISTRY_HPP
#define BUGFIX_CORE_REGISTRY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "spec_ast.hpp"

namespace bugfix {

// The merged view of one or more spec units: constructs, syntax
// rules, and patterns by name, plus the conformance relation.
class Registry {
public:
    const std::vector<ConstructDef>& constructs() const { return constructs_; }
    const std::vector<SyntaxRule>& syntaxes() const { return syntaxes_; }
    const std::vector<Pattern>& patterns() const { return patterns_; }

    bool has_construct(const std::string& name) const;
    const ConstructDef* find_construct(const std::string& name) const;
    // Throws NotFound.
    const ConstructDef& construct(const std::string& name) const;

    const FieldDef* field_def(const std::string& construct_name, const std::string& field) const;

    const SyntaxRule* find_syntax(const std::string& construct_name, const std::string& language) const;
    const Pattern* find_pattern(const std::string& name) const;

    // Reflexive-transitive conformance over inherit edges.
    bool conforms(const std::string& sub, const std::string& super) const;

    // Languages named by any syntax rule, sorted and deduplicated.
    std::vector<std::string> languages() const;

    // Stable digest of the construct definitions; trees carry it so a
    // tree is only interpreted against the registry that produced it.
    std::uint64_t fingerprint() const { return fingerprint_; }

private:
    friend Registry build_registry(const std::vector<SpecUnit>& units);

    std::vector<ConstructDef> constructs_;
    std::vector<SyntaxRule> syntaxes_;
    std::vector<Pattern> patterns_;
    std::unordered_map<std::string, std::size_t> construct_index_;
    std::unordered_map<std::string, std::size_t> pattern_index_;
    std::map<std::pair<std::string, std::string>, std::size_t> syntax_index_;
    std::unordered_map<std::string, std::unordered_set<std::string>> ancestors_;
    std::uint64_t fingerprint_ = 0;
};

// Merges units in order.  Redefining a construct, a pattern, or a
// (construct, language) syntax rule across units is an error.  The
// five literal atoms (IDENTIFIER, INT_LIT, TRUE_LIT, FALSE_LIT,
// NULL_LIT) are appended when no unit defines them.
Registry build_registry(const std::vector<SpecUnit>& units);

// Static diagnostics, sorted: unknown types, inheritance cycles,
// template references to unknown or mis-shaped fields, and pattern
// terms or fixes that can never be satisfied by any conforming
// construct.  An empty result means the registry is usable.
std::vector<std::string> validate_registry(const Registry& registry);

} // namespace bugfix

#endif
