#pragma once

// Shared test helpers: scratch CSV fixtures and deterministic sampling.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace qc_test {

// Writes content to a unique file under the system temp directory and removes
// it on destruction.
class ScratchFile {
 public:
  ScratchFile(const std::string& stem, const std::string& content) {
    static std::uint64_t counter = 0;
    const auto tick = static_cast<std::uint64_t>(
        std::chrono::steady_clock::now().time_since_epoch().count());
    path_ = (std::filesystem::temp_directory_path() /
             (stem + "-" + std::to_string(tick) + "-" + std::to_string(counter++) + ".csv"))
                .string();
    std::ofstream f(path_, std::ios::binary);
    f << content;
  }
  ScratchFile(const ScratchFile&) = delete;
  ScratchFile& operator=(const ScratchFile&) = delete;
  ~ScratchFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace qc_test
