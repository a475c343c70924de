#pragma once

#include <string>
#include <vector>

namespace ample {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full verification suite over the built-in fixture corpus.
/// One result per criterion; failures carry the reason.
std::vector<CriterionResult> run_acceptance(long cap = 1 << 20,
                                            unsigned seed = 0);

}  // namespace ample
