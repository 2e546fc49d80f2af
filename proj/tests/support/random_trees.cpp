#include "random_trees.hpp"

#include <array>
#include <string>

namespace bugfix::testing {

namespace {

constexpr std::array kIdentifiers = {"a", "b", "c", "p", "q", "acc"};
constexpr std::array kRoutines = {"f", "g", "close", "run"};
constexpr std::array kBinaryOps = {"SUM",       "DIFFERENCE", "PRODUCT",
                                   "EQ_BIN_OP", "NEQ_BIN_OP", "LT_BIN_OP",
                                   "LE_BIN_OP", "GT_BIN_OP",  "GE_BIN_OP"};

} // namespace

int TreeGen::pick(int bound) {
    return static_cast<int>(rng_() % static_cast<std::uint64_t>(bound));
}

NodePtr TreeGen::identifier() {
    ++made_;
    return make_atom(*registry_, "IDENTIFIER",
                     Value(std::string(kIdentifiers[pick(kIdentifiers.size())])));
}

NodePtr TreeGen::routine() {
    ++made_;
    return make_atom(*registry_, "ROUTINE", Value(std::string(kRoutines[pick(kRoutines.size())])));
}

NodePtr TreeGen::leaf() {
    ++made_;
    switch (pick(6)) {
        case 0: return make_atom(*registry_, "INT_LIT", Value(std::int64_t{1}));
        case 1: return make_atom(*registry_, "INT_LIT", Value(static_cast<std::int64_t>(pick(4))));
        case 2: return make_atom(*registry_, "TRUE_LIT", Value(std::string("true")));
        case 3: return make_atom(*registry_, "FALSE_LIT", Value(std::string("false")));
        case 4: return make_atom(*registry_, "NULL_LIT", Value(std::string("null")));
        default:
            --made_;
            return identifier();
    }
}

NodePtr TreeGen::expression(int depth) {
    // Composite expressions need headroom: a binary op costs at least
    // three nodes, a call at least two.
    if (depth >= 4 || !room(3)) return leaf();
    switch (pick(8)) {
        case 0:
        case 1:
        case 2: {  // binary operator
            auto node = make_node(*registry_, kBinaryOps[pick(kBinaryOps.size())]);
            ++made_;
            node->slot("first")->single = expression(depth + 1);
            node->slot("second")->single = expression(depth + 1);
            return node;
        }
        case 3: {  // plain call
            auto node = make_node(*registry_, "CALL");
            ++made_;
            node->slot("r")->single = routine();
            const int args = pick(3);
            for (int i = 0; i < args && room(1); ++i)
                node->slot("args")->list.push_back(expression(depth + 1));
            return node;
        }
        case 4: {  // qualified call
            auto node = make_node(*registry_, "QUALIFIED_CALL");
            ++made_;
            node->slot("recv")->single = room(4) && pick(3) == 0 ? expression(depth + 1)
                                                                 : identifier();
            node->slot("r")->single = routine();
            const int args = pick(2);
            for (int i = 0; i < args && room(1); ++i)
                node->slot("args")->list.push_back(expression(depth + 1));
            return node;
        }
        default: return leaf();
    }
}

NodePtr TreeGen::statement(int depth) {
    // Expression statements must be calls for the text to re-parse.
    const int choice = pick(8);
    if (choice < 3 || !room(4)) {  // assignment
        auto node = make_node(*registry_, "ASSIGN");
        ++made_;
        node->slot("lhs")->single = identifier();
        node->slot("rhs")->single = room(3) ? expression(depth) : leaf();
        return node;
    }
    if (choice < 5) {  // call statement
        auto node = make_node(*registry_, "CALL_STMT");
        ++made_;
        auto call = make_node(*registry_, pick(2) == 0 ? "CALL" : "QUALIFIED_CALL");
        ++made_;
        if (call->slot("recv") != nullptr) call->slot("recv")->single = identifier();
        call->slot("r")->single = routine();
        if (pick(2) == 0 && room(1)) call->slot("args")->list.push_back(expression(depth + 1));
        node->slot("expr")->single = std::move(call);
        return node;
    }
    if (choice < 6) {  // return
        auto node = make_node(*registry_, "RETURN");
        ++made_;
        node->slot("expr")->single = expression(depth);
        return node;
    }
    auto node = make_node(*registry_, "IF");  // if statement
    ++made_;
    node->slot("cond")->single = expression(depth + 1);
    const int then_count = 1 + pick(2);
    for (int i = 0; i < then_count && room(2); ++i)
        node->slot("then")->list.push_back(statement(depth + 1));
    if (pick(2) == 0 && room(2)) node->slot("else")->list.push_back(statement(depth + 1));
    return node;
}

Tree TreeGen::finish(NodePtr root) {
    renumber_preorder(*root);
    set_parents(*root);
    Tree tree;
    tree.root = std::move(root);
    tree.registry_fingerprint = registry_->fingerprint();
    return tree;
}

Tree TreeGen::program() {
    // The room() guards keep growth near the cap; the occasional tree
    // that lands a node or two over is redrawn so the bound is exact.
    for (;;) {
        made_ = 0;
        auto root = make_node(*registry_, "PROGRAM");
        ++made_;
        const int statements = 1 + pick(3);
        for (int i = 0; i < statements && room(3); ++i)
            root->slot("body")->list.push_back(statement(0));
        int nodes = 0;
        walk_preorder(*root, [&](const Node&) { ++nodes; });
        if (nodes <= max_nodes_) return finish(std::move(root));
    }
}

Tree TreeGen::call_program(int args) {
    made_ = 0;
    auto root = make_node(*registry_, "PROGRAM");
    auto stmt = make_node(*registry_, "CALL_STMT");
    auto call = make_node(*registry_, "CALL");
    call->slot("r")->single = routine();
    for (int i = 0; i < args; ++i) call->slot("args")->list.push_back(leaf());
    stmt->slot("expr")->single = std::move(call);
    root->slot("body")->list.push_back(std::move(stmt));
    return finish(std::move(root));
}

} // namespace bugfix::testing
