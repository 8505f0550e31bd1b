#include "cyclemetrics/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cyclemetrics {

int default_threads() {
  if (const char* env = std::getenv("CYCLEMETRICS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return 1;
}

}  // namespace cyclemetrics
