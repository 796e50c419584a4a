#pragma once

#include <string>
#include <vector>

#include "kbfe/serialize.hpp"

namespace kbfe {

struct DemoResult {
  Json report;
  /// Every expectation attached to the example was met.
  bool ok = false;
};

std::vector<std::string> demo_names();

/// Runs one of the built-in examples: "counterexample", "odd-quadratic" or
/// "vanishing". Throws InvalidArgument for other names.
DemoResult run_demo(const std::string& name);

}  // namespace kbfe
