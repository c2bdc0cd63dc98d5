#include "qplane/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_out.hpp"
#include "qplane/error.hpp"

namespace qplane {
namespace detail {
namespace {

void dump_into(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += nlohmann::ordered_json(it.key()).dump();
        out += ": ";
        dump_into(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        dump_into(out, j[i], indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  out += "\n";
  return out;
}

}  // namespace detail

namespace {

constexpr double kDropBelow = 1e-300;

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

int column_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  const std::size_t nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
  return static_cast<int>(nl == std::string_view::npos ? offset + 1 : offset - nl);
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key \"" + key + "\"", 0);
  return *it;
}

int require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + " must be an integer", 0);
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) throw ParseError(where + "." + key + " out of range", 0);
  return static_cast<int>(x);
}

double require_number(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + " must be a number", 0);
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(where + "." + key + " must be finite", 0);
  return x;
}

std::vector<std::pair<Mode, Complex>> written_modes(const ModeFunction& f) {
  std::vector<std::pair<Mode, Complex>> out;
  for (const auto& [mode, c] : f.coeffs())
    if (std::abs(c) >= kDropBelow) out.emplace_back(mode, c);
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ModeFormat mode_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? ModeFormat::Csv : ModeFormat::Json;
}

ModeFunction parse_mode_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    const int line = line_of_offset(text, at);
    const int col = column_of_offset(text, at);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) +
                         ": " + e.what(),
                     line, col);
  }
  if (!doc.is_object()) throw ParseError("mode file must be a JSON object", 1);
  const double q = require_number(doc, "q", "$");
  std::optional<QLattice> lattice;
  try {
    lattice.emplace(q);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("$.q: ") + e.what(), 0);
  }
  ModeFunction f(*lattice);
  const auto& modes = require(doc, "modes", "$");
  if (!modes.is_array()) throw ParseError("$.modes must be an array", 0);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const std::string where = "$.modes[" + std::to_string(i) + "]";
    const auto& m = modes[i];
    if (!m.is_object()) throw ParseError(where + " must be an object", 0);
    f.add(require_int(m, "k", where), require_int(m, "l", where),
          Complex(require_number(m, "re", where), require_number(m, "im", where)));
  }
  return f;
}

ModeFunction parse_mode_csv(std::string_view text, const QLattice& lattice) {
  ModeFunction f(lattice);
  std::istringstream in{std::string(text)};
  std::string row;
  int line = 0;
  bool header_seen = false;
  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!header_seen) {
      if (cells != std::vector<std::string>{"k", "l", "re", "im"})
        throw ParseError("line " + std::to_string(line) + ": expected header k,l,re,im", line);
      header_seen = true;
      continue;
    }
    if (cells.size() != 4)
      throw ParseError("line " + std::to_string(line) + ": expected 4 fields, got " + std::to_string(cells.size()),
                       line);
    try {
      std::size_t used = 0;
      const int k = std::stoi(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("k");
      const int l = std::stoi(cells[1], &used);
      if (used != cells[1].size()) throw std::invalid_argument("l");
      const double re = std::stod(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("re");
      const double im = std::stod(cells[3], &used);
      if (used != cells[3].size()) throw std::invalid_argument("im");
      if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite");
      f.add(k, l, Complex(re, im));
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line) + ": malformed row \"" + row + "\"", line);
    }
  }
  if (!header_seen) throw ParseError("empty CSV: expected header k,l,re,im", 1);
  return f;
}

std::string to_mode_json(const ModeFunction& f) {
  nlohmann::ordered_json doc;
  doc["q"] = f.q();
  doc["modes"] = nlohmann::ordered_json::array();
  for (const auto& [mode, c] : written_modes(f)) {
    nlohmann::ordered_json m;
    m["k"] = mode.k;
    m["l"] = mode.l;
    m["re"] = c.real();
    m["im"] = c.imag();
    doc["modes"].push_back(std::move(m));
  }
  return detail::dump_json(doc);
}

std::string to_mode_csv(const ModeFunction& f) {
  std::string out = "k,l,re,im\n";
  for (const auto& [mode, c] : written_modes(f))
    out += std::to_string(mode.k) + "," + std::to_string(mode.l) + "," + format_number(c.real()) + "," +
           format_number(c.imag()) + "\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

ModeFunction read_mode_file(const std::filesystem::path& path, std::optional<QLattice> lattice) {
  const std::string text = read_text_file(path);
  if (mode_format_for(path) == ModeFormat::Csv) {
    if (!lattice) throw ConfigError("CSV mode files carry no q; pass it explicitly");
    return parse_mode_csv(text, *lattice);
  }
  return parse_mode_json(text);
}

void write_mode_file(const std::filesystem::path& path, const ModeFunction& f) {
  write_text_file(path, mode_format_for(path) == ModeFormat::Csv ? to_mode_csv(f) : to_mode_json(f));
}

}  // namespace qplane
