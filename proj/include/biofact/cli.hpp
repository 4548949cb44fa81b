#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace biofact {

// Exit statuses: 0 success, 1 validation error (bad flags or input),
// 2 runtime failure. Artifacts go to files; `out` only carries --summary
// lines and help text, `err` carries logs and the one-line error record.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biofact
