#pragma once

namespace vpart::parallel {

// Worker count for the OpenMP kernels: VPART_THREADS when set and positive,
// otherwise the OpenMP default.
int max_threads();

}  // namespace vpart::parallel
