#include "fsio.hpp"

#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace bugfix {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
    return std::move(buffer).str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

} // namespace bugfix
