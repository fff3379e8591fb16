#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cft/grid.hpp"
#include "cft/version.hpp"

namespace cft {

static_assert(std::endian::native == std::endian::little,
              "MVF1 is little-endian; big-endian hosts are not supported");

// MVF1 container: magic "MVF1", u32 version=1, u32 n, u32 complexFlag,
// u32 dims[n], f64 origin[n], f64 spacing[n], then per node (row-major)
// 4^n f64 coefficients in blade-bitmask order; complex fields store the real
// block then the imaginary block per node.
class io_error : public std::runtime_error {
 public:
  enum class Code {
    open_failure,
    write_failure,
    bad_magic,
    bad_version,
    truncated_payload,
    dimension_mismatch,
    corrupt_payload,
  };

  io_error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

namespace detail {

template <typename T>
void write_raw(std::ostream& os, const T* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
}

template <typename T>
bool read_raw(std::istream& is, T* data, std::size_t count) {
  is.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(T)));
  return static_cast<std::size_t>(is.gcount()) == count * sizeof(T);
}

}  // namespace detail

inline void write_field(const SampledField& f, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw io_error(io_error::Code::open_failure, "write_field: cannot open " + path.string());
  const char magic[4] = {'M', 'V', 'F', '1'};
  os.write(magic, 4);
  const std::uint32_t header[3] = {1u, static_cast<std::uint32_t>(f.grid().n),
                                   f.is_complex() ? 1u : 0u};
  detail::write_raw(os, header, 3);
  std::vector<std::uint32_t> dims(f.grid().dims.begin(), f.grid().dims.end());
  detail::write_raw(os, dims.data(), dims.size());
  detail::write_raw(os, f.grid().origin.data(), f.grid().origin.size());
  detail::write_raw(os, f.grid().spacing.data(), f.grid().spacing.size());
  detail::write_raw(os, f.raw().data(), f.raw().size());
  if (!os) throw io_error(io_error::Code::write_failure, "write_field: write failed");
}

inline SampledField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw io_error(io_error::Code::open_failure, "read_field: cannot open " + path.string());
  char magic[4];
  if (!detail::read_raw(is, magic, 4) || std::memcmp(magic, "MVF1", 4) != 0)
    throw io_error(io_error::Code::bad_magic, "read_field: bad magic");
  std::uint32_t header[3];
  if (!detail::read_raw(is, header, 3))
    throw io_error(io_error::Code::truncated_payload, "read_field: truncated header");
  if (header[0] != 1)
    throw io_error(io_error::Code::bad_version,
                   "read_field: unsupported version " + std::to_string(header[0]));
  const std::uint32_t n = header[1];
  const bool complex_values = header[2] != 0;
  if (n < 1 || n > 4)
    throw io_error(io_error::Code::dimension_mismatch,
                   "read_field: dimension " + std::to_string(n) + " out of range");
  std::vector<std::uint32_t> dims(n);
  std::vector<double> origin(n), spacing(n);
  if (!detail::read_raw(is, dims.data(), n) || !detail::read_raw(is, origin.data(), n) ||
      !detail::read_raw(is, spacing.data(), n))
    throw io_error(io_error::Code::truncated_payload, "read_field: truncated header");

  GridSpec grid;
  try {
    grid = GridSpec(std::vector<int>(dims.begin(), dims.end()), origin, spacing);
  } catch (const std::invalid_argument& e) {
    throw io_error(io_error::Code::dimension_mismatch, std::string("read_field: ") + e.what());
  }

  SampledField f(grid, AlgebraSpec(static_cast<int>(n)), complex_values);
  if (!detail::read_raw(is, f.raw().data(), f.raw().size()))
    throw io_error(io_error::Code::truncated_payload,
                   "read_field: payload shorter than header implies");
  char extra;
  if (is.read(&extra, 1); is.gcount() != 0)
    throw io_error(io_error::Code::truncated_payload,
                   "read_field: payload longer than header implies");
  for (double v : f.raw())
    if (!std::isfinite(v))
      throw io_error(io_error::Code::corrupt_payload, "read_field: non-finite coefficient");
  return f;
}

// Optional provenance sidecar (same stem, .json). Never needed for reading a
// field back; `created` stays empty unless the caller passes a timestamp so
// that repeated runs stay byte-identical.
inline void write_manifest(const std::filesystem::path& field_path, const std::string& generator,
                           const std::map<std::string, std::string>& parameters,
                           const std::string& created = "") {
  std::filesystem::path p = field_path;
  p.replace_extension(".json");
  std::ofstream os(p, std::ios::trunc);
  if (!os)
    throw io_error(io_error::Code::open_failure, "write_manifest: cannot open " + p.string());
  os << "{\n  \"generator\": \"" << generator << "\",\n  \"parameters\": {";
  bool first = true;
  for (const auto& [k, v] : parameters) {
    os << (first ? "" : ",") << "\n    \"" << k << "\": \"" << v << "\"";
    first = false;
  }
  os << (parameters.empty() ? "" : "\n  ") << "},\n";
  os << "  \"created\": \"" << created << "\",\n";
  os << "  \"tool-version\": \"" << kToolVersion << "\"\n}\n";
  if (!os) throw io_error(io_error::Code::write_failure, "write_manifest: write failed");
}

}  // namespace cft
