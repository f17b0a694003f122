#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsdist/common.hpp"
#include "hsdist/complex_matrix.hpp"

namespace hsdist {

inline constexpr const char* kVersion = "0.1.0";

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// 15 significant digits, for human-facing stdout; hides one-ulp arithmetic
/// noise that full precision would surface.
inline std::string format_double_display(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

/// RFC-4180-style CSV writer: header row mandatory, fields quoted only when
/// they contain a delimiter, quote or newline.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    }

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape(fields[i]);
        }
        out_ << "\r\n";
    }

    static std::string escape(const std::string& f) {
        if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += '"';
            q += c;
        }
        q += '"';
        return q;
    }

  private:
    std::ofstream out_;
};

/// FNV-1a, used to checksum exported sample payloads.
inline std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

/// Checks a path is writable by opening it for append before any compute
/// starts, then removes the probe if the file did not exist. Missing parent
/// directories are created.
inline void require_writable(const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
    const bool existed = fs::exists(path);
    std::ofstream probe(path, std::ios::app);
    if (!probe) throw std::runtime_error("output path not writable: " + path);
    probe.close();
    if (!existed) fs::remove(path);
}

}  // namespace hsdist
