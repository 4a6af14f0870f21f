#include "msie/hash.hpp"

#include <cstdint>

#include "msie/csv.hpp"
#include "msie/rng.hpp"

namespace msie {

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = fnv1a64(bytes);
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string file_hash(const std::filesystem::path& path) {
  return content_hash(read_file(path));
}

}  // namespace msie
