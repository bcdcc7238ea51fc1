#include "alignlab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace alignlab {

int configured_threads() {
  const char* env = std::getenv("ALIGNLAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  try {
    const int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

void apply_thread_env() {
#ifdef _OPENMP
  if (const int n = configured_threads(); n > 0) omp_set_num_threads(n);
#endif
}

}  // namespace alignlab
