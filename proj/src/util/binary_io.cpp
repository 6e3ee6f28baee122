#include "ontolookup/util/binary_io.hpp"

namespace ontolookup::util {

void BinaryWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void BinaryWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void BinaryWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  out_.append(s);
}

std::string_view BinaryReader::take(std::size_t n) {
  if (in_.size() - pos_ < n) throw FormatError("truncated segment");
  auto out = in_.substr(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t BinaryReader::u8() { return static_cast<std::uint8_t>(take(1)[0]); }

std::uint32_t BinaryReader::u32() {
  auto b = take(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  return v;
}

std::uint64_t BinaryReader::u64() {
  auto b = take(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
  return v;
}

std::string BinaryReader::str() {
  auto n = u32();
  return std::string(take(n));
}

void BinaryReader::expect(std::string_view magic) {
  if (in_.size() - pos_ < magic.size() || in_.substr(pos_, magic.size()) != magic) {
    throw FormatError("bad segment header");
  }
  pos_ += magic.size();
}

std::uint32_t BinaryReader::count(std::size_t min_item_bytes) {
  auto n = u32();
  if (min_item_bytes > 0 && n > (in_.size() - pos_) / min_item_bytes) throw FormatError("implausible count");
  return n;
}

}  // namespace ontolookup::util
