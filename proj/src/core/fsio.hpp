#ifndef BUGFIX_CORE_FSIO_HPP
#define BUGFIX_CORE_FSIO_HPP

#include <string>

namespace bugfix {

// Reads a whole file; throws Error(Io) when it cannot be opened.
std::string read_text_file(const std::string& path);

// Writes a whole file; throws Error(Io) when it cannot be written.
void write_text_file(const std::string& path, const std::string& content);

} // namespace bugfix

#endif
