#include "vpart/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace vpart::parallel {

int max_threads() {
  if (const char* env = std::getenv("VPART_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace vpart::parallel
