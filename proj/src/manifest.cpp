#include "basketsom/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "basketsom/errors.hpp"
#include "basketsom/version.hpp"

namespace basketsom {

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for digest: " + path.string());
    std::uint64_t hash = 14695981039346656037ull;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 1099511628211ull;
        }
        if (got < static_cast<std::streamsize>(sizeof buffer)) break;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(value));
    return buf;
}

void RunManifest::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

void RunManifest::add(std::string key, long value) {
    add(std::move(key), std::to_string(value));
}

void RunManifest::add(std::string key, std::uint64_t value) {
    add(std::move(key), std::to_string(value));
}

void RunManifest::add(std::string key, double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    add(std::move(key), std::string(buf, result.ptr));
}

void RunManifest::add_input(std::string key,
                            const std::filesystem::path& path) {
    add(key + "_digest", "fnv1a64:" + hex64(fnv1a64_file(path)));
    add(std::move(key), path.string());
}

void RunManifest::write(std::ostream& sink) const {
    sink << "# " << kToolName << " run manifest\n";
    sink << "tool_version = " << kToolVersion << '\n';
    sink << "command = " << command << '\n';
    for (const auto& [key, value] : entries)
        sink << key << " = " << value << '\n';
    if (!sink) throw IoError("failed writing run manifest");
}

}  // namespace basketsom
