#include "eomsim/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <memory>

#include "eomsim/error.hpp"
#include "json.hpp"

namespace eomsim {

const char* tool_version() { return EOMSIM_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>()};
  return sha256_hex(bytes);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void record_output(RunManifest& manifest, const std::filesystem::path& path,
                   std::size_t row_count) {
  manifest.outputs.push_back({path.string(), row_count, file_sha256(path)});
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json out;
  out["tool_version"] = m.tool_version;
  out["config_digest"] = m.config_digest;
  out["command_line"] = m.command_line;
  out["started"] = m.started;
  out["finished"] = m.finished;
  out["outputs"] = nlohmann::json::array();
  for (const auto& o : m.outputs) {
    out["outputs"].push_back(
        {{"path", o.path}, {"row_count", o.row_count}, {"digest", o.digest}});
  }
  return out.dump(2);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << manifest_json(m) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "short write to " + path.string());
}

}  // namespace eomsim
