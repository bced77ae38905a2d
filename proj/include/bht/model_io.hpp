#pragma once
#include <cstdint>
#include <string>

#include "bht/distribution.hpp"

namespace bht {

// Model file schema: {"labels": [...optional...], "p": [m reals], "q": [m reals]}.
// Reading validates both vectors with the given tolerance.
HypothesisPair read_model(const std::string& path, double tolerance = Tolerances{}.dist_sum);
void write_model(const std::string& path, const HypothesisPair& pair);

// FNV-1a over a file's bytes; identifies the model a data artifact came from.
std::uint64_t fnv1a_file(const std::string& path);

// Reproducibility sidecar written next to every file artifact as
// <path>.manifest.json. The data artifact itself stays byte-deterministic;
// the manifest carries the wall-clock timestamp.
struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string model_hash;  // "fnv1a:<hex>" or "none"
  std::string timestamp;   // ISO 8601 UTC
};

void write_manifest(const std::string& artifact_path, const RunManifest& manifest);

}  // namespace bht
