#ifndef BUGFIX_TESTS_RANDOM_SPECS_HPP
#define BUGFIX_TESTS_RANDOM_SPECS_HPP

#include <cstdint>
#include <random>

#include "spec_ast.hpp"

namespace bugfix::testing {

// Random specification units for the print/parse round-trip property.
// Everything generated is already in canonical form (default ", "
// separator stored empty, lowercase language tags, hygienic names), so
// parse_spec(render_spec(u)) must reproduce u exactly.
class SpecGen {
public:
    explicit SpecGen(std::uint64_t seed) : rng_(seed) {}

    SpecUnit unit();

private:
    int pick(int bound);
    std::string construct_name(const SpecUnit& unit);
    Term term(const std::vector<std::string>& vars, int depth);
    Condition condition(const std::vector<std::string>& vars, int depth);
    NodeExpr node_expr(const SpecUnit& unit, const std::vector<std::string>& vars, int depth);
    Instantiation instantiation(const SpecUnit& unit, const std::vector<std::string>& vars,
                                int depth);
    std::vector<TemplateElement> template_body(const ConstructDef& construct, int depth);
    void add_constructs(SpecUnit& unit);
    void add_syntaxes(SpecUnit& unit);
    void add_patterns(SpecUnit& unit);

    std::mt19937_64 rng_;
};

} // namespace bugfix::testing

#endif
