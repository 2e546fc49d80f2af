#ifndef BUGFIX_CORE_CATALOG_HPP
#define BUGFIX_CORE_CATALOG_HPP

#include <string>

#include "registry.hpp"

namespace bugfix {

// Source text of the pattern library compiled into the binary.
const std::string& bundled_catalog_text();

// The bundled catalog, parsed and validated.  Used whenever no spec is
// given explicitly.
Registry bundled_registry();

} // namespace bugfix

#endif
