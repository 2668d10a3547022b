#include "ctk/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ctk {

unsigned thread_cap() {
  if (const char* env = std::getenv("CONTEXTUALITY_KIT_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (...) {
      // unparseable values fall through to the hardware default
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? hw : 1;
}

}  // namespace ctk
