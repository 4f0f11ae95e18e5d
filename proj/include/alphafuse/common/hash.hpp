#pragma once

#include <string>
#include <string_view>

namespace alphafuse {

std::string sha256_hex(std::string_view bytes);
// Hash of a file's contents; throws IoError when unreadable.
std::string sha256_file(const std::string& path);

}  // namespace alphafuse
