#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ontolookup::util {

class FormatError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Little-endian fixed-width integers and length-prefixed strings.
class BinaryWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void str(std::string_view s);
  void raw(std::string_view s) { out_.append(s); }

  const std::string& bytes() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string_view bytes) : in_(bytes) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::string str();
  // Throws unless the next bytes equal `magic`.
  void expect(std::string_view magic);
  // A count about to drive allocation; rejects values the remaining input
  // could not possibly hold at `min_item_bytes` each.
  std::uint32_t count(std::size_t min_item_bytes = 1);

  bool done() const { return pos_ == in_.size(); }

 private:
  std::string_view take(std::size_t n);

  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace ontolookup::util
