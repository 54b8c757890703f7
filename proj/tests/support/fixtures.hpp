#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fomforge::testgen {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// The unit test binary bakes the fixture directory in at compile time; the
// acceptance binary takes it from the command line instead.
#ifdef FOMFORGE_TEST_DATA_DIR
inline std::string fixture_path(const std::string& name) {
    return std::string(FOMFORGE_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    return read_file(fixture_path(name));
}
#endif

}  // namespace fomforge::testgen
