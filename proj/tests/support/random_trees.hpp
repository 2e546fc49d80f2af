#ifndef BUGFIX_TESTS_RANDOM_TREES_HPP
#define BUGFIX_TESTS_RANDOM_TREES_HPP

#include <cstdint>
#include <random>

#include "node.hpp"
#include "registry.hpp"

namespace bugfix::testing {

// Random MiniLang tree builder.  Every tree it produces is valid
// against the catalog registry and stays within the canonical
// fragment, so rendering and re-parsing is loss-free.
class TreeGen {
public:
    TreeGen(const Registry& registry, std::uint64_t seed, int max_nodes = 30)
        : registry_(&registry), rng_(seed), max_nodes_(max_nodes) {}

    // A PROGRAM of random statements, at most max_nodes nodes, ids in
    // document order.
    Tree program();

    // A PROGRAM holding one call statement f(...) with the given
    // argument count; arguments are leaf expressions.
    Tree call_program(int args);

private:
    NodePtr statement(int depth);
    NodePtr expression(int depth);
    NodePtr leaf();
    NodePtr identifier();
    NodePtr routine();
    Tree finish(NodePtr root);

    int pick(int bound);  // uniform in [0, bound)
    bool room(int needed) const { return made_ + needed <= max_nodes_; }

    const Registry* registry_;
    std::mt19937_64 rng_;
    int max_nodes_;
    int made_ = 0;
};

} // namespace bugfix::testing

#endif
