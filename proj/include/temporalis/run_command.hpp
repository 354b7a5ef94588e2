#ifndef TEMPORALIS_RUN_COMMAND_HPP
#define TEMPORALIS_RUN_COMMAND_HPP

#include <iosfwd>
#include <string>

namespace temporalis {

// One batch invocation. `command` is check, entail, normalize, ground,
// eval, or oracle. For eval, `data_path` names the interpretation file.
struct RunConfig {
  std::string command;
  std::string program_path;
  std::string data_path;
  std::string mode = "auto";  // auto, fp, general, oracle
  std::string fact;           // entail / eval query, e.g. "R@[1,2]"
  bool cautious = false;
  bool brave = false;
  std::string horizon;        // "lo:hi" override
  std::size_t max_states = 1000000;
  std::size_t max_candidates = 100000;
  bool json = false;
};

// Exit codes: 0 success (including negative answers), 2 input error,
// 3 guard exceeded, 4 internal invariant breach. Errors are reported as
// JSON on `err`.
int run_command(const RunConfig &config, std::ostream &out,
                std::ostream &err);

} // namespace temporalis

#endif
