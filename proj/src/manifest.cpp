#include "msie/manifest.hpp"

#include <nlohmann/json.hpp>

#include "msie/csv.hpp"

namespace msie {

Manifest Manifest::load(const std::filesystem::path& out_dir) {
  Manifest m;
  auto path = out_dir / "manifest.json";
  if (!std::filesystem::exists(path)) return m;
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  for (const auto& [stage, entry] : j.items()) {
    StageEntry e;
    e.inputs = entry.at("inputs").get<std::vector<std::string>>();
    e.config_hash = entry.at("config_hash").get<std::string>();
    e.seed = entry.at("seed").get<std::uint64_t>();
    e.outputs = entry.at("outputs").get<std::map<std::string, std::string>>();
    m.stages_.emplace(stage, std::move(e));
  }
  return m;
}

void Manifest::record_stage(const std::string& stage, const std::vector<std::string>& inputs,
                            const std::string& config_hash, std::uint64_t seed,
                            const std::map<std::string, std::string>& output_hashes) {
  stages_[stage] = StageEntry{inputs, config_hash, seed, output_hashes};
}

std::string Manifest::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [stage, e] : stages_) {
    j[stage] = {{"inputs", e.inputs},
                {"config_hash", e.config_hash},
                {"seed", e.seed},
                {"outputs", e.outputs}};
  }
  return j.dump(2);
}

void Manifest::save(const std::filesystem::path& out_dir) const {
  write_file(out_dir / "manifest.json", to_json());
}

}  // namespace msie
