#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfom {

/// Exit codes: 0 ok, 1 validation failed, 2 NotEnclosed / ProbeTooClose,
/// 3 bad input, 4 internal. Failures print one JSON line on `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace lfom
