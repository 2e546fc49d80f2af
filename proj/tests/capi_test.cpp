#include <doctest.h>

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include <bugfix.h>

namespace {

using json = nlohmann::json;

struct ContextDeleter {
    void operator()(bugfix_context* context) const { bugfix_context_free(context); }
};
struct TreeDeleter {
    void operator()(bugfix_tree* tree) const { bugfix_tree_free(tree); }
};
using ContextPtr = std::unique_ptr<bugfix_context, ContextDeleter>;
using TreePtr = std::unique_ptr<bugfix_tree, TreeDeleter>;

std::string take(char* text) {
    std::string copy = text == nullptr ? "" : text;
    bugfix_string_free(text);
    return copy;
}

ContextPtr sealed_catalog() {
    ContextPtr context(bugfix_context_new());
    REQUIRE(context != nullptr);
    REQUIRE(bugfix_context_add_bundled(context.get()) == BUGFIX_OK);
    REQUIRE(bugfix_context_seal(context.get()) == BUGFIX_OK);
    return context;
}

TreePtr parse(bugfix_context* context, const char* source) {
    bugfix_tree* raw = nullptr;
    REQUIRE(bugfix_parse_program(context, source, &raw) == BUGFIX_OK);
    return TreePtr(raw);
}

} // namespace

TEST_CASE("the library identifies itself") {
    const char* version = bugfix_version();
    REQUIRE(version != nullptr);
    CHECK(std::string(version).find('.') != std::string::npos);
}

TEST_CASE("operations demand a sealed context") {
    ContextPtr context(bugfix_context_new());
    bugfix_tree* tree = nullptr;
    CHECK(bugfix_parse_program(context.get(), "f();\n", &tree) == BUGFIX_ERR_USAGE);
    CHECK(std::string(bugfix_last_error(context.get())).find("seal") != std::string::npos);

    REQUIRE(bugfix_context_add_bundled(context.get()) == BUGFIX_OK);
    REQUIRE(bugfix_context_seal(context.get()) == BUGFIX_OK);
    // Sealing twice is misuse, as is adding more units afterwards.
    CHECK(bugfix_context_seal(context.get()) == BUGFIX_ERR_USAGE);
    CHECK(bugfix_context_add_spec(context.get(), "late", "construct X end\n") ==
          BUGFIX_ERR_USAGE);
    // A successful call clears the error message.
    char* out = nullptr;
    REQUIRE(bugfix_context_diagnostics(context.get(), &out) == BUGFIX_OK);
    take(out);
    CHECK(std::string(bugfix_last_error(context.get())).empty());
}

TEST_CASE("spec syntax errors surface with their position") {
    ContextPtr context(bugfix_context_new());
    CHECK(bugfix_context_add_spec(context.get(), "bad", "construct lower end\n") ==
          BUGFIX_ERR_SYNTAX);
    const std::string message = bugfix_last_error(context.get());
    CHECK(message.find("1:11") != std::string::npos);
}

TEST_CASE("clashing units fail at seal time") {
    ContextPtr context(bugfix_context_new());
    REQUIRE(bugfix_context_add_spec(context.get(), "a", "construct A end\n") == BUGFIX_OK);
    REQUIRE(bugfix_context_add_spec(context.get(), "b", "construct A atom end\n") == BUGFIX_OK);
    CHECK(bugfix_context_seal(context.get()) == BUGFIX_ERR_VALIDATION);
}

TEST_CASE("diagnostics list validation problems line by line") {
    ContextPtr context(bugfix_context_new());
    REQUIRE(bugfix_context_add_spec(context.get(), "odd",
                                    "construct A feature\n    x: GHOST\nend\n") == BUGFIX_OK);
    REQUIRE(bugfix_context_seal(context.get()) == BUGFIX_OK);
    char* out = nullptr;
    REQUIRE(bugfix_context_diagnostics(context.get(), &out) == BUGFIX_OK);
    const std::string diagnostics = take(out);
    CHECK(diagnostics.find("GHOST") != std::string::npos);
}

TEST_CASE("pattern names come in definition order") {
    ContextPtr context = sealed_catalog();
    char* out = nullptr;
    REQUIRE(bugfix_pattern_names(context.get(), 0, &out) == BUGFIX_OK);
    const std::string scannable = take(out);
    CHECK(scannable.find("SWAPPED_ARGUMENTS\nPLUS_MINUS\n") == 0);
    CHECK(scannable.find("WRONG_VARIABLE") == std::string::npos);

    REQUIRE(bugfix_pattern_names(context.get(), 1, &out) == BUGFIX_OK);
    const std::string all = take(out);
    CHECK(all.find("MISSING_NULL_CHECK_REV") != std::string::npos);
    CHECK(all.find("WRONG_VARIABLE") != std::string::npos);
}

TEST_CASE("trees round-trip through parse, encode, decode, and render") {
    ContextPtr context = sealed_catalog();
    TreePtr tree = parse(context.get(), "if (p != null) { p.close(); }\n");

    char* out = nullptr;
    REQUIRE(bugfix_encode_tree(context.get(), tree.get(), &out) == BUGFIX_OK);
    const std::string encoded = take(out);

    bugfix_tree* raw = nullptr;
    REQUIRE(bugfix_decode_tree(context.get(), encoded.c_str(), &raw) == BUGFIX_OK);
    TreePtr decoded(raw);
    REQUIRE(bugfix_encode_tree(context.get(), decoded.get(), &out) == BUGFIX_OK);
    CHECK(take(out) == encoded);

    REQUIRE(bugfix_render_tree(context.get(), decoded.get(), "mini", &out) == BUGFIX_OK);
    CHECK(take(out) == "if (p != null) { p.close(); }\n");

    CHECK(bugfix_render_tree(context.get(), decoded.get(), "klingon", &out) ==
          BUGFIX_ERR_NOT_FOUND);
    CHECK(bugfix_parse_program(context.get(), "x = ;\n", &raw) == BUGFIX_ERR_SYNTAX);
}

TEST_CASE("matches are reported as JSON with subject and bindings") {
    ContextPtr context = sealed_catalog();
    TreePtr tree = parse(context.get(), "f(a, b);\n");
    char* out = nullptr;
    REQUIRE(bugfix_match(context.get(), tree.get(), "SWAPPED_ARGUMENTS", &out) == BUGFIX_OK);
    const json matches = json::parse(take(out));
    REQUIRE(matches.is_array());
    REQUIRE(matches.size() == 2);
    CHECK(matches[0]["subject"]["name"] == "c");
    CHECK(matches[0]["subject"]["construct"] == "CALL");
    CHECK(matches[0]["subject"]["id"] == 3);
    REQUIRE(matches[0]["bindings"].size() == 2);
    CHECK(matches[0]["bindings"][0]["name"] == "a1");
    CHECK(matches[0]["bindings"][0]["id"] == 4);
    CHECK(matches[0]["bindings"][1]["id"] == 5);
    CHECK(matches[1]["bindings"][0]["id"] == 5);

    CHECK(bugfix_match(context.get(), tree.get(), "NO_SUCH", &out) == BUGFIX_ERR_NOT_FOUND);
}

TEST_CASE("applying a fix by match index rewrites the tree") {
    ContextPtr context = sealed_catalog();
    TreePtr tree = parse(context.get(), "f(a, b);\n");
    bugfix_tree* raw = nullptr;
    REQUIRE(bugfix_apply(context.get(), tree.get(), "SWAPPED_ARGUMENTS", 0, &raw) == BUGFIX_OK);
    TreePtr fixed(raw);
    char* out = nullptr;
    REQUIRE(bugfix_render_tree(context.get(), fixed.get(), "mini", &out) == BUGFIX_OK);
    CHECK(take(out) == "f(b, a);\n");
    // The input tree is untouched.
    REQUIRE(bugfix_render_tree(context.get(), tree.get(), "mini", &out) == BUGFIX_OK);
    CHECK(take(out) == "f(a, b);\n");

    CHECK(bugfix_apply(context.get(), tree.get(), "SWAPPED_ARGUMENTS", 2, &raw) ==
          BUGFIX_ERR_APPLY);
    const std::string message = bugfix_last_error(context.get());
    CHECK(message.find("out of range") != std::string::npos);
}

TEST_CASE("pattern reversal returns canonical text or a typed failure") {
    ContextPtr context = sealed_catalog();
    char* out = nullptr;
    REQUIRE(bugfix_reverse_pattern(context.get(), "PLUS_MINUS", &out) == BUGFIX_OK);
    const std::string text = take(out);
    CHECK(text.find("pattern PLUS_MINUS_REV") == 0);
    CHECK(text.find("SUM [first <- e1, second <- e2]") != std::string::npos);

    CHECK(bugfix_reverse_pattern(context.get(), "WRONG_VARIABLE", &out) ==
          BUGFIX_ERR_NOT_INVERTIBLE);
    CHECK(std::string(bugfix_last_error(context.get())).find("not invertible") !=
          std::string::npos);
}

TEST_CASE("seeding and restoration round-trip through the boundary") {
    ContextPtr context = sealed_catalog();
    const json request = {
        {"files", json::array({{{"path", "a.mini"}, {"source", "x = a - b;\ny = c - d;\n"}}})},
        {"count", 2},
        {"rng_seed", 42},
        {"pattern", "PLUS_MINUS"},
    };
    char* out = nullptr;
    REQUIRE(bugfix_seed(context.get(), request.dump().c_str(), &out) == BUGFIX_OK);
    const json response = json::parse(take(out));
    CHECK(response["truth"]["applied"] == 2);
    CHECK(response["truth"]["rng_seed"] == 42);
    REQUIRE(response["files"].size() == 1);
    CHECK(response["files"][0]["changed"] == true);
    const std::string seeded = response["files"][0]["source"];
    CHECK(seeded == "x = a + b;\ny = c + d;\n");

    REQUIRE(bugfix_restore_file(context.get(), response["truth"].dump().c_str(), "a.mini",
                                seeded.c_str(), "mini", &out) == BUGFIX_OK);
    CHECK(take(out) == "x = a - b;\ny = c - d;\n");

    // A path the truth does not mention is an error.
    CHECK(bugfix_restore_file(context.get(), response["truth"].dump().c_str(), "other.mini",
                              seeded.c_str(), "mini", &out) == BUGFIX_ERR_NOT_FOUND);

    // Malformed requests are rejected up front: shape problems are usage
    // errors, unparseable text is a syntax error.
    CHECK(bugfix_seed(context.get(), "{}", &out) == BUGFIX_ERR_USAGE);
    CHECK(bugfix_seed(context.get(), "not json", &out) == BUGFIX_ERR_SYNTAX);
}

TEST_CASE("scanning aggregates counts across paths") {
    ContextPtr context = sealed_catalog();
    const std::string a = FIXTURES_DIR "/corpus/account.mini";
    const std::string b = FIXTURES_DIR "/corpus/session.mini";
    const std::vector<const char*> paths = {a.c_str(), b.c_str()};
    char* out = nullptr;
    REQUIRE(bugfix_scan(context.get(), paths.data(), paths.size(), 1, &out) == BUGFIX_OK);
    const json report = json::parse(take(out));
    CHECK(report["files"] == 2);
    CHECK(report["errors"].empty());
    CHECK(report["per_pattern"].contains("PLUS_MINUS"));

    REQUIRE(bugfix_scan(context.get(), paths.data(), paths.size(), 0, &out) == BUGFIX_OK);
    CHECK(take(out).find("null_check") != std::string::npos);
}

TEST_CASE("freeing a null string is harmless") {
    bugfix_string_free(nullptr);
}
