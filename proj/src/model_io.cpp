#include "bht/model_io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace bht {

HypothesisPair read_model(const std::string& path, double tolerance) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::bad_model_file, "cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::bad_model_file, "bad JSON in " + path + ": " + e.what());
  }
  if (!j.contains("p") || !j.contains("q"))
    throw Error(Errc::bad_model_file, path + " must contain \"p\" and \"q\" arrays");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  auto p = validate_distribution(j["p"].get<std::vector<double>>(), tolerance, labels);
  auto q = validate_distribution(j["q"].get<std::vector<double>>(), tolerance, labels);
  return make_pair(std::move(p), std::move(q));
}

void write_model(const std::string& path, const HypothesisPair& pair) {
  nlohmann::json j;
  if (!pair.p().labels().empty()) j["labels"] = pair.p().labels();
  j["p"] = pair.p().masses();
  j["q"] = pair.q().masses();
  std::ofstream out(path);
  if (!out) throw Error(Errc::bad_model_file, "cannot write model file: " + path);
  out << j.dump(2) << "\n";
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_model_file, "cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::string& artifact_path, const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command_line;
  j["seed"] = manifest.seed;
  j["version"] = manifest.tool_version;
  j["model_hash"] = manifest.model_hash;
  j["timestamp"] = manifest.timestamp;
  std::ofstream out(artifact_path + ".manifest.json");
  if (!out)
    throw Error(Errc::bad_model_file, "cannot write manifest for: " + artifact_path);
  out << j.dump(2) << "\n";
}

}  // namespace bht
