#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace riftrank {

// Shortest text that parses back to the same double (%.17g).
std::string fmt_double(double v);

double parse_double(std::string_view text, std::string_view what);
int64_t parse_int(std::string_view text, std::string_view what);

std::vector<std::string> split(std::string_view line, char sep);

// Identifiers embedded in comma/space separated artifacts must stay in a safe
// charset: [A-Za-z0-9_.:-]
bool is_safe_identifier(std::string_view id);

// Versioned text artifacts start with "# riftrank <kind> v<version>".
std::string artifact_header(std::string_view kind, int version = 1);
// Validates the header line and returns the version. Throws ValidationError.
int check_artifact_header(std::string_view line, std::string_view kind);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

} // namespace riftrank
