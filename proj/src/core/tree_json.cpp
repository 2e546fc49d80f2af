#include "tree_json.hpp"

#include <set>

#include "errors.hpp"

namespace bugfix {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& path, const std::string& message) {
    throw Error(ErrorKind::Syntax, path + ": " + message);
}

class Decoder {
public:
    explicit Decoder(const Registry& registry) : reg_(registry) {}

    NodePtr decode(const json& doc, const std::string& path) {
        if (!doc.is_object()) reject(path, "expected a node object");
        for (const auto& [key, unused] : doc.items()) {
            if (key != "construct" && key != "id" && key != "span" && key != "value" &&
                key != "fields") {
                reject(path + "." + key, "unknown member");
            }
        }

        auto construct_it = doc.find("construct");
        if (construct_it == doc.end()) reject(path + ".construct", "missing member");
        if (!construct_it->is_string()) reject(path + ".construct", "must be a string");
        std::string construct = construct_it->get<std::string>();
        const ConstructDef* def = reg_.find_construct(construct);
        if (!def) reject(path + ".construct", "unknown construct '" + construct + "'");

        auto node = std::make_unique<Node>(construct);

        if (auto it = doc.find("id"); it != doc.end()) {
            if (!it->is_number_integer()) reject(path + ".id", "id must be an integer");
            std::int64_t id = it->get<std::int64_t>();
            if (id <= 0) reject(path + ".id", "non-positive id");
            if (!seen_ids_.insert(id).second)
                reject(path + ".id", "duplicate id " + std::to_string(id));
            node->id = id;
        }

        if (auto it = doc.find("span"); it != doc.end()) {
            if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() ||
                !(*it)[1].is_number_integer()) {
                reject(path + ".span", "malformed span");
            }
            Span span{(*it)[0].get<std::int64_t>(), (*it)[1].get<std::int64_t>()};
            if (span.begin < 0 || span.begin > span.end) reject(path + ".span", "malformed span");
            node->span = span;
        }

        auto value_it = doc.find("value");
        if (def->is_atom) {
            if (value_it == doc.end()) reject(path + ".value", "atom requires a value");
            if (value_it->is_number_integer()) {
                node->value = value_it->get<std::int64_t>();
            } else if (value_it->is_string()) {
                node->value = value_it->get<std::string>();
            } else {
                reject(path + ".value", "value must be a string or an integer");
            }
            if (construct == "INT_LIT" && !std::holds_alternative<std::int64_t>(*node->value)) {
                reject(path + ".value", "INT_LIT value must be an integer");
            }
            auto require_text = [&](const char* expected) {
                const auto* text = std::get_if<std::string>(&*node->value);
                if (!text || *text != expected) {
                    reject(path + ".value",
                           construct + " value must be \"" + expected + "\"");
                }
            };
            if (construct == "TRUE_LIT") require_text("true");
            if (construct == "FALSE_LIT") require_text("false");
            if (construct == "NULL_LIT") require_text("null");
            if (doc.contains("fields")) reject(path + ".fields", "atom does not take fields");
            return node;
        }
        if (value_it != doc.end()) reject(path + ".value", "value on a non-atom");

        auto fields_it = doc.find("fields");
        if (!def->fields.empty() && fields_it == doc.end()) {
            reject(path + ".fields", "missing member");
        }
        if (fields_it != doc.end() && !fields_it->is_object()) {
            reject(path + ".fields", "must be an object");
        }
        if (fields_it != doc.end()) {
            for (const auto& [key, unused] : fields_it->items()) {
                if (!def->field(key)) reject(path + ".fields." + key, "unknown field");
            }
        }
        for (const FieldDef& fd : def->fields) {
            FieldSlot slot;
            slot.name = fd.name;
            slot.is_list = fd.is_list;
            std::string field_path = path + ".fields." + fd.name;
            const json* member = nullptr;
            if (fields_it != doc.end()) {
                if (auto it = fields_it->find(fd.name); it != fields_it->end()) member = &*it;
            }
            if (!member) reject(field_path, "missing field");
            if (fd.is_list) {
                if (!member->is_array()) reject(field_path, "field must be an array");
                for (std::size_t i = 0; i < member->size(); ++i) {
                    std::string child_path = field_path + "[" + std::to_string(i) + "]";
                    NodePtr child = decode((*member)[i], child_path);
                    if (!reg_.conforms(child->construct(), fd.type)) {
                        reject(child_path + ".construct", "construct '" + child->construct() +
                                                              "' does not conform to '" +
                                                              fd.type + "'");
                    }
                    slot.list.push_back(std::move(child));
                }
            } else {
                if (!member->is_object()) reject(field_path, "field must be a node object");
                NodePtr child = decode(*member, field_path);
                if (!reg_.conforms(child->construct(), fd.type)) {
                    reject(field_path + ".construct", "construct '" + child->construct() +
                                                          "' does not conform to '" + fd.type +
                                                          "'");
                }
                slot.single = std::move(child);
            }
            node->fields.push_back(std::move(slot));
        }
        return node;
    }

private:
    const Registry& reg_;
    std::set<std::int64_t> seen_ids_;
};

} // namespace

NodePtr decode_node_json(const Registry& registry, const json& doc, const std::string& path) {
    return Decoder(registry).decode(doc, path);
}

Tree decode_tree(const Registry& registry, const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Syntax, std::string("invalid JSON: ") + e.what());
    }
    Tree tree;
    tree.root = decode_node_json(registry, doc, "$");
    tree.registry_fingerprint = registry.fingerprint();

    std::int64_t next = max_id(*tree.root) + 1;
    walk_preorder(*tree.root, [&](Node& node) {
        if (node.id == 0) node.id = next++;
    });
    set_parents(*tree.root);
    return tree;
}

nlohmann::ordered_json node_to_json(const Node& node, bool with_identity) {
    nlohmann::ordered_json out;
    out["construct"] = node.construct();
    if (with_identity) {
        out["id"] = node.id;
        if (node.span) out["span"] = {node.span->begin, node.span->end};
    }
    if (node.value) {
        if (const auto* n = std::get_if<std::int64_t>(&*node.value)) {
            out["value"] = *n;
        } else {
            out["value"] = std::get<std::string>(*node.value);
        }
    }
    if (!node.fields.empty()) {
        nlohmann::ordered_json fields = nlohmann::ordered_json::object();
        for (const FieldSlot& slot : node.fields) {
            if (slot.is_list) {
                nlohmann::ordered_json list = nlohmann::ordered_json::array();
                for (const NodePtr& child : slot.list) {
                    list.push_back(node_to_json(*child, with_identity));
                }
                fields[slot.name] = std::move(list);
            } else if (slot.single) {
                fields[slot.name] = node_to_json(*slot.single, with_identity);
            }
        }
        out["fields"] = std::move(fields);
    }
    return out;
}

std::string encode_node(const Node& node, bool with_identity) {
    return node_to_json(node, with_identity).dump();
}

std::string encode_tree(const Tree& tree) { return encode_node(*tree.root, true); }

} // namespace bugfix
