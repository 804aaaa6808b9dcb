#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("basketsom-test-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI binary with `args` inside `dir`, capturing stdout/stderr.
inline CliResult run_cli(const std::string& cli, const std::string& args,
                         const std::filesystem::path& dir) {
    const std::string command = "cd '" + dir.string() + "' && '" + cli +
                                "' " + args + " >cli_out.txt 2>cli_err.txt";
    const int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(dir / "cli_out.txt");
    result.err = read_file(dir / "cli_err.txt");
    return result;
}

inline std::string cli_path_from_env() {
    const char* path = std::getenv("BASKETSOM_CLI");
    if (!path) throw std::runtime_error("BASKETSOM_CLI is not set");
    return path;
}

inline std::filesystem::path fixtures_dir_from_env() {
    const char* path = std::getenv("BASKETSOM_FIXTURES");
    if (!path) throw std::runtime_error("BASKETSOM_FIXTURES is not set");
    return path;
}

struct ParsedPgm {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<unsigned char> pixels;
};

// Minimal strict P5 reader used as the independent oracle for image tests.
inline ParsedPgm parse_pgm(const std::string& bytes) {
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size() &&
               std::isspace(static_cast<unsigned char>(bytes[pos])))
            ++pos;
        std::string token;
        while (pos < bytes.size() &&
               !std::isspace(static_cast<unsigned char>(bytes[pos])))
            token.push_back(bytes[pos++]);
        return token;
    };
    if (next_token() != "P5") throw std::runtime_error("not a P5 graymap");
    ParsedPgm pgm;
    pgm.width = std::stoi(next_token());
    pgm.height = std::stoi(next_token());
    pgm.maxval = std::stoi(next_token());
    if (pgm.width < 1 || pgm.height < 1 || pgm.maxval < 1 ||
        pgm.maxval > 255)
        throw std::runtime_error("bad P5 header");
    ++pos;  // the single whitespace byte after maxval
    const std::size_t count =
        static_cast<std::size_t>(pgm.width) * pgm.height;
    if (bytes.size() - pos != count)
        throw std::runtime_error("P5 payload size mismatch");
    pgm.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.end());
    return pgm;
}

}  // namespace testutil
