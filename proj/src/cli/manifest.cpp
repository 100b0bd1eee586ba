#include "fraclab/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>

#include "fraclab/errors.hpp"

namespace fraclab::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 initialisation failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["argv"] = argv;
  j["parameters"] = parameters;
  if (seed >= 0) j["seed"] = seed;
  else j["seed"] = nullptr;
  j["version"] = version;
  j["timestamp"] = timestamp;
  auto files = nlohmann::ordered_json::array();
  for (const auto& p : outputs) {
    files.push_back({{"path", p},
                     {"bytes", std::filesystem::file_size(p)},
                     {"sha256", sha256_file(p)}});
  }
  j["output_files"] = files;
  j["results"] = results;
  return j;
}

void RunManifest::write(const std::string& path) const {
  const auto j = to_json();
  std::ofstream out(path);
  if (!out) throw InputError("cannot write manifest " + path);
  out << j.dump(2) << '\n';
}

}  // namespace fraclab::cli
