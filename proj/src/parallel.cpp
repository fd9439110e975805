#include "qhd/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace qhd {

int default_thread_count() {
  if (const char* env = std::getenv("QHD_THREADS"); env != nullptr && *env != '\0') {
    int value = 0;
    const char* end = env + std::strlen(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

}  // namespace qhd
