#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace msie {

// Per-stage record of inputs, effective-config hash, derived seed and output
// hashes. Serialization is key-sorted, so identical runs produce identical
// manifest bytes.
class Manifest {
 public:
  static Manifest load(const std::filesystem::path& out_dir);

  void record_stage(const std::string& stage, const std::vector<std::string>& inputs,
                    const std::string& config_hash, std::uint64_t seed,
                    const std::map<std::string, std::string>& output_hashes);

  void save(const std::filesystem::path& out_dir) const;
  std::string to_json() const;

 private:
  struct StageEntry {
    std::vector<std::string> inputs;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> outputs;
  };
  std::map<std::string, StageEntry> stages_;
};

}  // namespace msie
