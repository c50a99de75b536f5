#include "wtm/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wtm {

int worker_count() {
#ifdef _OPENMP
  if (const char* env = std::getenv("WT_MINER_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace wtm
