#pragma once

#include <iosfwd>

namespace pindim::cli {

// Exit codes: 0 ok, 1 domain/precondition/soundness failure, 2 usage or parse failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pindim::cli
