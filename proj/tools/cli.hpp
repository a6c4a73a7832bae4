#pragma once

#include <iosfwd>

namespace stin {

/// Entry point of the `stin` tool, with streams injectable for tests.
/// Returns 0 ok, 1 numerical nonconvergence, 2 config error, 3 validation failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stin
