#include "shearcount/parallel.hpp"

#include <cstdlib>
#include <string>

#include "shearcount/error.hpp"

namespace shearcount {

unsigned default_thread_count() {
  if (const char* env = std::getenv("SHEARCOUNT_THREADS")) {
    const std::string text(env);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(text, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != text.size() || value < 1)
      throw InvalidParameter("SHEARCOUNT_THREADS must be a positive integer, got '" + text + "'");
    return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace shearcount
