#include "entspec/block_cache.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include "json.hpp"

#include "entspec/errors.hpp"
#include "entspec/hashing.hpp"

namespace entspec {

namespace {

constexpr char kMagic[8] = {'E', 'N', 'T', 'S', 'P', 'E', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, const T* data, std::size_t n) {
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(T)));
}

template <class T>
void get(std::ifstream& in, T* data, std::size_t n, const std::filesystem::path& path) {
  in.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n * sizeof(T)));
  if (!in) throw IoError("truncated block cache " + path.string());
}

}  // namespace

void save_blocks(const std::filesystem::path& dir, std::span<const MomentumBlock> blocks,
                 const SimConfig& resolved) {
  namespace fs = std::filesystem;
  const fs::path bin = dir / "blocks.bin";
  const fs::path meta = dir / "blocks.json";
  try {
    fs::create_directories(dir);
    {
      std::ofstream out(bin, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + bin.string());
      out.write(kMagic, sizeof kMagic);
      put(out, &kVersion, 1);
      const std::uint64_t count = blocks.size();
      put(out, &count, 1);
      for (const auto& b : blocks) {
        const std::int32_t key[2] = {b.key.total[0], b.key.total[1]};
        const std::uint64_t size = b.size();
        put(out, key, 2);
        put(out, &size, 1);
        put(out, b.first.data(), size);
        put(out, b.second.data(), size);
        put(out, b.energies.data(), size);
        put(out, b.modes.data(), size * size);
      }
      out.flush();
      if (!out) throw IoError("error writing " + bin.string());
    }
    const auto stats = block_stats(blocks);
    nlohmann::json j;
    j["format_version"] = kVersion;
    j["physics_hash"] = physics_hash(resolved);
    j["block_count"] = stats.count;
    j["total_dimension"] = stats.total_dimension;
    j["blocks_sha256"] = sha256_file(bin);
    std::ofstream out(meta, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + meta.string());
    out << j.dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("error writing " + meta.string());
  } catch (...) {
    std::error_code ec;
    fs::remove(bin, ec);
    fs::remove(meta, ec);
    throw;
  }
}

std::optional<std::vector<MomentumBlock>> load_blocks(const std::filesystem::path& dir,
                                                      const SimConfig& resolved) {
  namespace fs = std::filesystem;
  const fs::path bin = dir / "blocks.bin";
  const fs::path meta = dir / "blocks.json";
  if (!fs::exists(bin) || !fs::exists(meta)) return std::nullopt;

  nlohmann::json j;
  {
    std::ifstream in(meta, std::ios::binary);
    if (!in) throw IoError("cannot read " + meta.string());
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed " + meta.string() + ": " + e.what());
    }
  }
  if (j.value("format_version", 0u) != kVersion) return std::nullopt;
  if (j.value("physics_hash", std::string()) != physics_hash(resolved)) return std::nullopt;
  if (j.value("blocks_sha256", std::string()) != sha256_file(bin)) {
    throw IoError("block cache " + bin.string() + " does not match its checksum");
  }

  std::ifstream in(bin, std::ios::binary);
  if (!in) throw IoError("cannot read " + bin.string());
  char magic[sizeof kMagic];
  std::uint32_t version = 0;
  std::uint64_t count = 0;
  get(in, magic, sizeof magic, bin);
  get(in, &version, 1, bin);
  get(in, &count, 1, bin);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0 || version != kVersion) {
    throw IoError("not a block cache: " + bin.string());
  }
  std::vector<MomentumBlock> blocks(count);
  for (auto& b : blocks) {
    std::int32_t key[2];
    std::uint64_t size = 0;
    get(in, key, 2, bin);
    get(in, &size, 1, bin);
    b.key.total = {key[0], key[1]};
    b.first.resize(size);
    b.second.resize(size);
    b.energies.resize(static_cast<Eigen::Index>(size));
    b.modes.resize(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    get(in, b.first.data(), size, bin);
    get(in, b.second.data(), size, bin);
    get(in, b.energies.data(), size, bin);
    get(in, b.modes.data(), size * size, bin);
  }
  return blocks;
}

}  // namespace entspec
