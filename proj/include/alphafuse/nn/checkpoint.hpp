#pragma once

#include <string>

#include "alphafuse/nn/tensor.hpp"

namespace alphafuse::nn {

// Binary checkpoint, all integers and floats little-endian:
//   bytes 0-7   magic "AFUSECKP"
//   u32         format version (currently 1)
//   u32         parameter count P
//   P records in lexical name order:
//     u32 name length, name bytes (UTF-8)
//     u32 rank R, then R x u64 dimensions
//     prod(dims) x f64 values, row-major
inline constexpr char kCheckpointMagic[8] = {'A', 'F', 'U', 'S', 'E', 'C', 'K', 'P'};
inline constexpr unsigned kCheckpointVersion = 1;

std::string serialize_checkpoint(const ParameterSet& params);
ParameterSet deserialize_checkpoint(const std::string& bytes);

void save_checkpoint(const std::string& path, const ParameterSet& params);
ParameterSet load_checkpoint(const std::string& path);

}  // namespace alphafuse::nn
