#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kripke/frame.hpp"

namespace kwb {

// Exit codes: verdict true / success, verdict false, usage or resource error.
enum Exit : int { kOk = 0, kFalse = 1, kUsage = 2 };

// Frame from a command-line spec:
//   chain:K  antichain:K  fork:K  comb:K  fine:K (Fine ladder)
//   covers:N:0-1,1-2,...   a catalog name   a .json or .dot file
kripke::Frame frame_from_spec(const std::string& spec);

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kwb
