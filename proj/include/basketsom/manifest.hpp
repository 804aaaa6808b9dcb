#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace basketsom {

// 64-bit FNV-1a over the file bytes; throws IoError if unreadable.
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

std::string hex64(std::uint64_t value);

/// Record of one CLI run: tool version, the fully resolved configuration
/// and input digests, written as `key = value` lines. Re-running the same
/// subcommand with these values on byte-identical inputs reproduces the
/// outputs byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> entries;

    void add(std::string key, std::string value);
    void add(std::string key, long value);
    void add(std::string key, std::uint64_t value);
    void add(std::string key, double value);

    // Stores the path and its fnv1a64 digest under <key> / <key>_digest.
    void add_input(std::string key, const std::filesystem::path& path);

    void write(std::ostream& sink) const;
};

}  // namespace basketsom
