#include "genact/core/tensor_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "genact/core/error.hpp"

namespace genact {
namespace {

void write_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) raise(ErrorCode::IOError, "truncated tensor record");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_header(std::ostream& out, TensorDType dtype, const std::vector<int>& shape) {
  out.write(kTensorMagic, 8);
  write_u32(out, kTensorVersion);
  write_u32(out, static_cast<uint32_t>(dtype));
  write_u32(out, static_cast<uint32_t>(shape.size()));
  for (int d : shape) write_u32(out, static_cast<uint32_t>(d));
}

std::vector<int> read_header(std::istream& in, TensorDType expect) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kTensorMagic, 8) != 0)
    raise(ErrorCode::IOError, "bad tensor magic");
  uint32_t version = read_u32(in);
  if (version != kTensorVersion) raise(ErrorCode::IOError, "unsupported tensor version");
  uint32_t dtype = read_u32(in);
  if (dtype != static_cast<uint32_t>(expect))
    raise(ErrorCode::IOError, "unexpected tensor dtype");
  uint32_t rank = read_u32(in);
  if (rank > 8) raise(ErrorCode::IOError, "implausible tensor rank");
  std::vector<int> shape(rank);
  for (uint32_t i = 0; i < rank; ++i) shape[i] = static_cast<int>(read_u32(in));
  return shape;
}

}  // namespace

void write_tensor(std::ostream& out, const TensorF& t) {
  write_header(out, TensorDType::f32, t.shape);
  static_assert(sizeof(float) == 4);
  out.write(reinterpret_cast<const char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * 4));
}

void write_mask(std::ostream& out, const MaskTensor& m) {
  write_header(out, TensorDType::u8, m.shape);
  out.write(reinterpret_cast<const char*>(m.data.data()),
            static_cast<std::streamsize>(m.data.size()));
}

TensorF read_tensor(std::istream& in) {
  std::vector<int> shape = read_header(in, TensorDType::f32);
  TensorF t(shape);
  in.read(reinterpret_cast<char*>(t.data.data()),
          static_cast<std::streamsize>(t.data.size() * 4));
  if (!in) raise(ErrorCode::IOError, "truncated f32 payload");
  return t;
}

MaskTensor read_mask(std::istream& in) {
  std::vector<int> shape = read_header(in, TensorDType::u8);
  MaskTensor m;
  m.shape = shape;
  m.data.resize(static_cast<size_t>(TensorF::numel_of(shape)));
  in.read(reinterpret_cast<char*>(m.data.data()),
          static_cast<std::streamsize>(m.data.size()));
  if (!in) raise(ErrorCode::IOError, "truncated u8 payload");
  return m;
}

TensorDType peek_dtype(std::istream& in) {
  std::streampos pos = in.tellg();
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kTensorMagic, 8) != 0)
    raise(ErrorCode::IOError, "bad tensor magic");
  read_u32(in);  // version
  uint32_t dtype = read_u32(in);
  in.seekg(pos);
  return static_cast<TensorDType>(dtype);
}

void save_tensor_file(const std::string& path, const std::vector<TensorF>& tensors,
                      const std::vector<MaskTensor>& masks) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(ErrorCode::IOError, "cannot write " + path);
  for (const auto& t : tensors) write_tensor(out, t);
  for (const auto& m : masks) write_mask(out, m);
  if (!out) raise(ErrorCode::IOError, "write failed for " + path);
}

}  // namespace genact
