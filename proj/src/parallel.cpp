#include "nlw/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "nlw/errors.hpp"

namespace nlw {

int configure_threads() {
  if (const char* env = std::getenv("NLW_THREADS"); env && *env) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
      throw DomainError("NLW_THREADS must be a positive integer, got '" + std::string(env) + "'");
    omp_set_num_threads(static_cast<int>(n));
  }
  return thread_count();
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace nlw
