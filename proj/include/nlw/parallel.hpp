#pragma once

namespace nlw {

// Applies NLW_THREADS (a positive integer) to the OpenMP runtime; returns the thread count in use.
int configure_threads();
int thread_count();

}  // namespace nlw
