#pragma once

#include <ostream>

namespace salem::cli {

// Exit codes: 0 yes / verified / positive, 1 no / failed / not positive,
// 2 inconclusive or error (diagnostic on err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace salem::cli
