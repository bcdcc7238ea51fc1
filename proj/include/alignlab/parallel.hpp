#pragma once

namespace alignlab {

// Thread cap from ALIGNLAB_THREADS (unset or 0 = OpenMP default).
int configured_threads();

// Apply configured_threads() to the OpenMP runtime.
void apply_thread_env();

}  // namespace alignlab
