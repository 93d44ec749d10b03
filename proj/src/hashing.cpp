#include "entspec/hashing.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "entspec/config_io.hpp"
#include "entspec/errors.hpp"

namespace entspec {

namespace {

struct Digest {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

  Digest() {
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
      throw IoError("SHA-256 initialisation failed");
    }
  }
  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx.get(), data, n); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
      out.push_back(kHex[md[i] >> 4]);
      out.push_back(kHex[md[i] & 0xf]);
    }
    return out;
  }
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Digest d;
  d.update(bytes.data(), bytes.size());
  return d.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  Digest d;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("error reading " + path.string());
  return d.hex();
}

std::string physics_hash(const SimConfig& cfg) {
  std::string text = "entspec-blocks-v1\n";
  text += "d=" + std::to_string(cfg.dim) + "\n";
  text += "L=" + format_double(cfg.box_length) + "\n";
  text += "m1=" + format_double(cfg.mass1) + "\n";
  text += "m2=" + format_double(cfg.mass2) + "\n";
  text += "hbar=" + format_double(cfg.hbar) + "\n";
  text += "n_max=" + std::to_string(cfg.n_max) + "\n";
  text += cfg.potential.kind == PotentialKind::delta ? "kind=delta\n" : "kind=gaussian\n";
  text += "A=" + format_double(cfg.potential.strength) + "\n";
  text += "w=" + format_double(cfg.potential.width) + "\n";
  return sha256_hex(text);
}

}  // namespace entspec
