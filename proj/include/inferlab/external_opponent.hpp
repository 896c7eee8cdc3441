#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "inferlab/interaction.hpp"

namespace inferlab {

/// Timeouts, malformed replies and dead child processes.
class OpponentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// G learner backed by a child process speaking a line protocol: each
/// conjecture sends `Q <data-sequence>` and expects `H <label> <P|Q>`. The
/// process starts on first use and lives as long as the learner. Any protocol
/// failure throws OpponentError.
Learner external_opponent(std::vector<std::string> argv,
                          std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));

}  // namespace inferlab
