#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace eomsim {

struct OutputRecord {
  std::string path;
  std::size_t row_count = 0;
  std::string digest;  // hex SHA-256 of the file bytes
};

struct RunManifest {
  std::string tool_version;
  std::string config_digest;
  std::string command_line;
  std::string started;   // UTC, ISO 8601
  std::string finished;
  std::vector<OutputRecord> outputs;
};

const char* tool_version();

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);
std::string utc_timestamp();

// Hashes the file on disk and appends it to the manifest.
void record_output(RunManifest& manifest, const std::filesystem::path& path,
                   std::size_t row_count);

std::string manifest_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path,
                    const RunManifest& manifest);

}  // namespace eomsim
