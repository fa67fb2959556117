#pragma once

namespace condvol::cli {

// Exit codes: 0 success, 2 usage error, 3 runtime/numerical failure.
int run(int argc, const char* const* argv);

}  // namespace condvol::cli
