#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hpx/parser.hpp"

#ifndef HPX_SOURCE_DIR
#error "HPX_SOURCE_DIR must point at the repository root"
#endif

namespace hpx::testing {

inline std::string source_path(const std::string& rel) { return std::string(HPX_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PlanningDomain load_domain(const std::string& name) {
  PlanningDomain d = parse_domain(read_file(source_path("domains/" + name + ".hpx")));
  if (d.name.empty()) d.name = name;
  return d;
}

inline Literal lit(const PlanningDomain& d, const std::string& spelled) {
  const bool negative = !spelled.empty() && spelled[0] == '-';
  const auto f = d.find_fluent(negative ? spelled.substr(1) : spelled);
  if (!f) throw std::runtime_error("no fluent " + spelled);
  return {*f, !negative};
}

inline ActionId act(const PlanningDomain& d, const std::string& name) {
  const auto a = d.find_action(name);
  if (!a) throw std::runtime_error("no action " + name);
  return *a;
}

}  // namespace hpx::testing
