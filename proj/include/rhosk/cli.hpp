#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rhosk/process.hpp"
#include "rhosk/rewrite.hpp"

namespace rhosk {

enum ExitCode : int { kOk = 0, kInputError = 1, kExhausted = 2, kViolation = 3 };

/// Trace in the published JSON format. Each step also records the binding
/// and, when nonzero, the lift, so that it can be replayed exactly.
std::string trace_to_json(const std::string& calculus, const Trace& trace);
/// Comm steps record the indices of the input and output components as
/// their position.
std::string trace_to_json(const RhoTrace& trace);

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rhosk
