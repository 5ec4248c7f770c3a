#pragma once

#include <ostream>

namespace sdc::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kCapacityError = 2,
  kCorruptStego = 3,
};

// Entry point shared by the sdc binary and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdc::cli
