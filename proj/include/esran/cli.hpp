#pragma once

#include <string>
#include <vector>

namespace esran::harness {

// Entry point behind the esran binary. Exit codes: 0 success (for
// `decompose`: intent satisfied), 1 intent not satisfied, 2 parse or
// validation failure.
int cli_main(int argc, const char* const* argv);

// Convenience overload for tests.
int cli_main(const std::vector<std::string>& args);

}  // namespace esran::harness
