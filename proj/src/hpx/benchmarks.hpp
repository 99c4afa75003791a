#pragma once

#include <string>

#include "hpx/model.hpp"

namespace hpx {

struct BenchmarkInstance {
  PlanningDomain domain;
  int max_steps = 1;
  int max_branches = 0;
};

/// n packages, exactly one holds the bomb. Package i is either the bomb
/// package or already harmless (`disarmed_i`); dunking makes it harmless.
/// Strong goal: every package disarmed. No sensing. Requires n >= 1.
BenchmarkInstance generate_bomb(int n);

/// n rooms in a ring with unknown window state. Connectivity is a static
/// relation. Strong goal: every window locked. Requires n >= 2.
BenchmarkInstance generate_rings(int n);

/// One of n diseases. Dipping the test strip colours `color_i` for disease i,
/// one sensing action per colour, medicine i cures disease i.
/// Strong goal: cured. Requires n >= 2.
BenchmarkInstance generate_sickness(int n);

/// Dispatch by name: bomb, rings, sickness. Throws std::invalid_argument.
BenchmarkInstance generate_benchmark(const std::string& name, int n);

}  // namespace hpx
