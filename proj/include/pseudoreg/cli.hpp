#pragma once

#include <iosfwd>

namespace pseudoreg {

// Exit status: 0 all assertions hold, 1 some assertion failed, 2 invalid
// parameters, out-of-hypothesis request or runtime error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pseudoreg
