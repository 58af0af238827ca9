#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "shortlab/arith.hpp"
#include "shortlab/errors.hpp"

// Cache file layout, all integers little-endian:
//   16-byte header: 12-byte magic "SHORTLABCOEF" + u32 format version
//   u64 N, u32 degree, u32 normalization, u32 label length, label bytes
//   f64 c(1..N)
//   u64 FNV-1a hash of every preceding byte

namespace shortlab::arith {

namespace {

constexpr char kMagic[12] = {'S', 'H', 'O', 'R', 'T', 'L', 'A', 'B', 'C', 'O', 'E', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "cache format assumes a little-endian host");

std::uint64_t fnv1a(const char* data, std::size_t len,
                    std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <class T>
void put(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
bool get(const std::string& buf, std::size_t& pos, T& v) {
  if (pos + sizeof v > buf.size()) return false;
  std::memcpy(&v, buf.data() + pos, sizeof v);
  pos += sizeof v;
  return true;
}

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& cache_dir, const std::string& label,
                                 std::uint64_t N) {
  return cache_dir / (label + "-" + std::to_string(N) + ".bin");
}

void write_cache(const std::filesystem::path& file, const CoefficientSeries& series) {
  std::string buf;
  const auto values = series.values();
  buf.reserve(64 + series.label().size() + 8 * values.size());
  buf.append(kMagic, sizeof kMagic);
  put(buf, kVersion);
  put(buf, std::uint64_t{series.limit()});
  put(buf, static_cast<std::uint32_t>(series.degree()));
  put(buf, static_cast<std::uint32_t>(series.normalization()));
  put(buf, static_cast<std::uint32_t>(series.label().size()));
  buf += series.label();
  if (values.size() > 1)
    buf.append(reinterpret_cast<const char*>(values.data() + 1), 8 * (values.size() - 1));
  put(buf, fnv1a(buf.data(), buf.size()));

  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write cache file " + tmp.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw ResourceError("short write to cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::optional<CoefficientSeries> read_cache(const std::filesystem::path& file,
                                            const std::string& label, std::uint64_t N) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof kMagic + 4 + 8 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
    return std::nullopt;

  std::uint64_t stored_hash = 0;
  std::memcpy(&stored_hash, buf.data() + buf.size() - 8, 8);
  if (fnv1a(buf.data(), buf.size() - 8) != stored_hash) return std::nullopt;

  std::size_t pos = sizeof kMagic;
  std::uint32_t version = 0, degree = 0, norm = 0, label_len = 0;
  std::uint64_t n = 0;
  if (!get(buf, pos, version) || version != kVersion) return std::nullopt;
  if (!get(buf, pos, n) || n != N) return std::nullopt;
  if (!get(buf, pos, degree) || !get(buf, pos, norm) || !get(buf, pos, label_len))
    return std::nullopt;
  if (pos + label_len > buf.size() || buf.compare(pos, label_len, label) != 0 ||
      label_len != label.size())
    return std::nullopt;
  pos += label_len;
  if (buf.size() - 8 - pos != 8 * N) return std::nullopt;
  if (norm > 1 || degree == 0) return std::nullopt;

  std::vector<double> values(N + 1, 0.0);
  if (N > 0) std::memcpy(values.data() + 1, buf.data() + pos, 8 * N);
  try {
    return CoefficientSeries(label, static_cast<int>(degree), static_cast<Normalization>(norm),
                             std::move(values));
  } catch (const ParameterError&) {
    return std::nullopt;
  }
}

CoefficientSeries load_or_build(const std::filesystem::path& cache_dir, const std::string& label,
                                std::uint64_t N) {
  const auto file = cache_path(cache_dir, label, N);
  if (auto cached = read_cache(file, label, N)) return std::move(*cached);
  auto series = build_series(label, N);
  try {
    write_cache(file, series);
  } catch (const std::exception&) {
    // An unwritable cache directory only costs a recompute next time.
  }
  return series;
}

}  // namespace shortlab::arith
