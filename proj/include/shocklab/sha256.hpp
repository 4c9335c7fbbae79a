#ifndef SHOCKLAB_SHA256_HPP
#define SHOCKLAB_SHA256_HPP

#include <string>

namespace shocklab {

// SHA-256 digest of a byte string, returned as lowercase hex.
std::string sha256_hex(const std::string& data);

// Digest of a file's contents; throws std::runtime_error if unreadable.
std::string sha256_file(const std::string& path);

}  // namespace shocklab

#endif
