#include "dirode/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dirode {

unsigned thread_count() {
  if (const char* env = std::getenv("DIRODE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1u;
}

}  // namespace dirode
