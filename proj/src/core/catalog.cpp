#include "catalog.hpp"

#include <utility>
#include <vector>

#include "errors.hpp"
#include "spec_parser.hpp"

namespace bugfix {

Registry bundled_registry() {
    std::vector<SpecUnit> units;
    units.push_back(parse_spec(bundled_catalog_text(), "catalog"));
    Registry registry = build_registry(units);
    const std::vector<std::string> problems = validate_registry(registry);
    if (!problems.empty()) {
        throw Error(ErrorKind::Validation, "bundled catalog is invalid: " + problems.front());
    }
    return registry;
}

} // namespace bugfix
