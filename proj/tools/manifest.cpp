#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "spinorlat/io.hpp"
#include "spinorlat/simd.hpp"

#ifndef SPINORLAT_VERSION
#define SPINORLAT_VERSION "unknown"
#endif

namespace spinorlat::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
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
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

nlohmann::json RunManifest::to_json() const {
  auto files = [](const std::vector<std::filesystem::path>& paths) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : paths) arr.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    return arr;
  };
  return {{"schema", "spinorlat.manifest/1"},
          {"command", command},
          {"version", SPINORLAT_VERSION},
          {"simd_backend", simd::backend_name(simd::active_backend())},
          {"parameters", parameters},
          {"inputs", files(inputs)},
          {"outputs", files(outputs)},
          {"exit_code", exit_code},
          {"wall_time_s", wall_time_s}};
}

std::filesystem::path RunManifest::write(const std::filesystem::path& out_dir) const {
  const auto path = out_dir / (command + ".manifest.json");
  io::write_text_file(path, io::dump(to_json()));
  return path;
}

}  // namespace spinorlat::cli
