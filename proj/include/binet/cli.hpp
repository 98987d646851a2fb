#pragma once

namespace binet {

// Entry point behind the `binet` binary. Exit codes: 0 success, 1 usage
// error, 2 data error.
int cli_main(int argc, const char* const* argv);

}  // namespace binet
