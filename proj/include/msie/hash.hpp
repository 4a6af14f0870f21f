#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace msie {

// FNV-1a 64 content hash, hex-encoded. Not cryptographic; used for the
// artifact manifest and config fingerprints where determinism is what counts.
std::string content_hash(std::string_view bytes);
std::string file_hash(const std::filesystem::path& path);

}  // namespace msie
