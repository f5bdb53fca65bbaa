#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "genact/core/tensor.hpp"

namespace genact {

// On-disk tensor container. Each record is:
//   16-byte header: 8-byte magic "GACTTSR\0", u32 version, u32 dtype
//   u32 rank, u32 dims[rank]
//   payload, little-endian, row-major (f32 for dtype 0, u8 for dtype 1)
// A file is a concatenation of one or more records. Byte layout is part of
// the determinism contract: equal inputs must produce equal files.
inline constexpr char kTensorMagic[8] = {'G', 'A', 'C', 'T', 'T', 'S', 'R', '\0'};
inline constexpr uint32_t kTensorVersion = 1;

enum class TensorDType : uint32_t { f32 = 0, u8 = 1 };

struct MaskTensor {
  std::vector<int> shape;
  std::vector<uint8_t> data;

  int64_t numel() const { return static_cast<int64_t>(data.size()); }
};

void write_tensor(std::ostream& out, const TensorF& t);
void write_mask(std::ostream& out, const MaskTensor& m);
TensorF read_tensor(std::istream& in);
MaskTensor read_mask(std::istream& in);

// Peeks the next record's dtype without consuming it; throws at EOF.
TensorDType peek_dtype(std::istream& in);

void save_tensor_file(const std::string& path, const std::vector<TensorF>& tensors,
                      const std::vector<MaskTensor>& masks = {});

}  // namespace genact
