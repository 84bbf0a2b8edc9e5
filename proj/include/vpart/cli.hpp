#pragma once

namespace vpart::cli {

// Full command-line front end. Returns the process exit status: 0 on
// success, 1 on a domain error (error JSON on stderr), 2 on a usage error.
int run(int argc, const char* const* argv);

}  // namespace vpart::cli
