#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sace {

// Ordered JSON everywhere: output files must keep a stable key order.
using Json = nlohmann::ordered_json;

/// Error thrown for violated operation preconditions. `code` is a stable
/// machine-readable identifier (e.g. "UnknownStage", "EmptyCollection").
class SaceError : public std::runtime_error {
public:
    SaceError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw SaceError(std::move(code), message);
}

/// FNV-1a 64-bit over a byte string, rendered as 16 hex digits. Used as the
/// artifact content checksum for change detection (not tamper-proofing).
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("FileNotFound", "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail("FileNotWritable", "cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline Json load_json_file(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        fail("UnparseableArtifact", path + ": " + e.what());
    }
}

}  // namespace sace
