#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phex::cli {

// Exit codes: 0 all checked claims hold, 2 input/usage error, 3 cover
// hypothesis not met, 4 a checked claim is falsified.
constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kHypothesisNotMet = 3;
constexpr int kClaimFalsified = 4;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phex::cli
