#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pkflat/document.hpp"
#include "pkflat/rect_surface.hpp"

namespace pkflat::testing {

inline std::string data_path(const std::string& name) { return std::string(PKFLAT_DATA_DIR) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ValidatedSurface load_surface(const std::string& name) { return validate(parse_surface(read_data(name))); }

inline BranchDocument load_branch(const std::string& name) { return parse_branch(read_data(name)); }

inline const QN& phi() {
  static const QN value = QN::parse("1/2+1/2*s", 5);
  return value;
}

}  // namespace pkflat::testing
