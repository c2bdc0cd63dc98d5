#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qplane/mode_function.hpp"

namespace qplane {

enum class ModeFormat { Json, Csv };

/// Picks the format from the file extension (".csv" is CSV, anything else JSON).
ModeFormat mode_format_for(const std::filesystem::path& path);

/// {"q": number, "modes": [{"k": int, "l": int, "re": number, "im": number}, ...]}.
/// Throws ParseError with the 1-based line of the offending text.
ModeFunction parse_mode_json(std::string_view text);

/// Header `k,l,re,im`, one mode per row. The file carries no q, so the lattice
/// is supplied by the caller.
ModeFunction parse_mode_csv(std::string_view text, const QLattice& lattice);

/// Writers drop coefficients with modulus below 1e-300 and print numbers with
/// 17 significant digits.
std::string to_mode_json(const ModeFunction& f);
std::string to_mode_csv(const ModeFunction& f);

/// CSV input needs `lattice`; JSON input takes q from the file.
ModeFunction read_mode_file(const std::filesystem::path& path,
                            std::optional<QLattice> lattice = std::nullopt);
void write_mode_file(const std::filesystem::path& path, const ModeFunction& f);

/// %.17g, with non-finite values spelled "nan", "inf", "-inf".
std::string format_number(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qplane
