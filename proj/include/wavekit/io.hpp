#pragma once

#include "wavekit/grid.hpp"
#include "wavekit/height_field.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wavekit {

/// Field file is missing, malformed, of another schema version, or for another grid.
class FieldFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFieldSchemaVersion = 1;

/// 17 significant digits, '.' separator.
std::string fmt(double x);

/// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(std::string_view data);

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// CSV with '#' metadata lines (schema, Nq, Np, Q, sigma), header `q,p,h`,
/// one row per node in (i, j) order.
void write_field(const std::filesystem::path& path, const HeightField& hf, const Grid& grid);
HeightField read_field(const std::filesystem::path& path);

}  // namespace wavekit
