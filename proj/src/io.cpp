#include "wavekit/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace wavekit {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

nlohmann::json read_json(const std::filesystem::path& path) { return nlohmann::json::parse(read_text(path)); }

void write_field(const std::filesystem::path& path, const HeightField& hf, const Grid& grid) {
  std::string s;
  s += "# wavekit-field " + std::to_string(kFieldSchemaVersion) + "\n";
  s += "# Nq = " + std::to_string(hf.nq()) + "\n";
  s += "# Np = " + std::to_string(hf.np()) + "\n";
  s += "# Q = " + fmt(hf.Q) + "\n";
  s += "# sigma = " + fmt(hf.sigma) + "\n";
  s += "q,p,h\n";
  for (int i = 0; i < hf.nq(); ++i)
    for (int j = 0; j <= hf.np(); ++j) s += fmt(grid.q(i)) + "," + fmt(grid.p(j)) + "," + fmt(hf(i, j)) + "\n";
  write_text(path, s);
}

namespace {

double to_double(const std::string& tok, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    throw FieldFormatError("field file: bad number '" + tok + "' in " + what);
  return v;
}

}  // namespace

HeightField read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FieldFormatError("field file: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("# wavekit-field ", 0) != 0)
    throw FieldFormatError("field file: missing '# wavekit-field' header in " + path.string());
  const std::string version = line.substr(16);
  if (version != std::to_string(kFieldSchemaVersion))
    throw FieldFormatError("field file: schema version " + version + " (expected " +
                           std::to_string(kFieldSchemaVersion) + ")");
  std::map<std::string, std::string> meta;
  while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw FieldFormatError("field file: bad metadata line '" + line + "'");
    meta[line.substr(2, eq - 2)] = line.substr(eq + 3);
  }
  for (const char* k : {"Nq", "Np", "Q", "sigma"})
    if (!meta.count(k)) throw FieldFormatError(std::string("field file: missing metadata ") + k);
  if (line != "q,p,h") throw FieldFormatError("field file: expected header 'q,p,h'");
  const int nq = static_cast<int>(to_double(meta["Nq"], "Nq"));
  const int np = static_cast<int>(to_double(meta["Np"], "Np"));
  if (nq < 2 || np < 1) throw FieldFormatError("field file: bad grid size");
  HeightField hf(nq, np, to_double(meta["Q"], "Q"));
  hf.sigma = to_double(meta["sigma"], "sigma");
  std::size_t rows = 0;
  const std::size_t expected = static_cast<std::size_t>(nq) * (np + 1);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (rows >= expected) throw FieldFormatError("field file: more rows than Nq*(Np+1)");
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw FieldFormatError("field file: bad row '" + line + "'");
    hf.values()[rows++] = to_double(line.substr(c2 + 1), "h");
  }
  if (rows != expected) throw FieldFormatError("field file: expected " + std::to_string(expected) + " rows, got " +
                                               std::to_string(rows));
  return hf;
}

}  // namespace wavekit
