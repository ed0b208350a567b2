#include "riftrank/textio.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "riftrank/errors.hpp"

namespace riftrank {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view text, std::string_view what) {
    std::string s(text);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        throw ValidationError(std::string(what) + ": not a number: \"" + s + "\"");
    return v;
}

int64_t parse_int(std::string_view text, std::string_view what) {
    std::string s(text);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        throw ValidationError(std::string(what) + ": not an integer: \"" + s + "\"");
    return v;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

bool is_safe_identifier(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '.' || c == ':' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::string artifact_header(std::string_view kind, int version) {
    std::ostringstream os;
    os << "# riftrank " << kind << " v" << version;
    return os.str();
}

int check_artifact_header(std::string_view line, std::string_view kind) {
    const std::string prefix = "# riftrank " + std::string(kind) + " v";
    if (line.rfind(prefix, 0) != 0)
        throw ValidationError("bad artifact header: expected \"" + prefix + "<n>\", got \"" +
                              std::string(line) + "\"");
    return static_cast<int>(parse_int(line.substr(prefix.size()), "artifact version"));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

} // namespace riftrank
