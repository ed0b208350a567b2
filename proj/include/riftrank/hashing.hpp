#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace riftrank {

// FNV-1a, mixed with a caller seed; used for deterministic fold assignment.
uint64_t fnv1a64(std::string_view data, uint64_t seed = 0);

// Streaming SHA-256 for artifact content hashes in the pipeline manifest.
class Sha256 {
  public:
    Sha256();
    void update(const void* data, size_t len);
    void update(std::string_view data) { update(data.data(), data.size()); }
    // Finalizes and returns the lowercase hex digest; the object is spent.
    std::string hex_digest();

  private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint64_t bit_count_ = 0;
    uint8_t buffer_[64];
    size_t buffer_len_ = 0;
};

std::string sha256_hex(std::string_view data);
// Throws IoError if the file cannot be read.
std::string sha256_file_hex(const std::string& path);

} // namespace riftrank
