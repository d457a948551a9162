#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fabkit::cli {

enum Exit : int { Ok = 0, BadInput = 1, BadKernel = 2, NoWitness = 3 };

// Runs one invocation; args excludes the program name. The output is a pure
// function of the arguments and the input files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fabkit::cli
