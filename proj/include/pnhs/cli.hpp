#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pnhs/core.hpp"

namespace pnhs {

inline constexpr const char* version = "0.1.0";

struct Simulation {
  Trace trace;
  bool deadlock = false;
};

/// Uniform random walk over enabled actions; stops early at a deadlock.
Simulation simulate(const PetriNet& net, const Configuration& init, std::size_t steps, std::uint64_t seed);

/// Runs one CLI invocation. Exit codes: 0 definite result, 2 unknown or
/// inconclusive, 1 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pnhs
