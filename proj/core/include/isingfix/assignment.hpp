#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace isingfix {

/// Spin vector S in {+1,-1}^n stored as bits; bit b_i = 1 <=> S_i = +1.
///
/// Ordering is lexicographic on the bit string b_0 b_1 ... b_{n-1}, which is
/// the tie-break every solver uses among equal-energy optima.
class Assignment {
 public:
  Assignment() = default;
  /// All spins -1.
  explicit Assignment(std::size_t n);

  static Assignment from_mask(std::uint64_t mask, std::size_t n);
  static Assignment from_spins(std::span<const int> spins);
  /// '1' is +1, '0' is -1. Throws std::invalid_argument on other characters.
  static Assignment from_bit_string(std::string_view bits);

  std::size_t size() const { return n_; }
  bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  int spin(std::size_t i) const { return bit(i) ? 1 : -1; }
  void set_bit(std::size_t i, bool value);
  void set_spin(std::size_t i, int s) { set_bit(i, s > 0); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  /// Requires size() <= 64.
  std::uint64_t mask() const;
  std::string bit_string() const;
  std::size_t hamming(const Assignment& other) const;
  std::size_t count_up() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend bool operator<(const Assignment& a, const Assignment& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Bit-level helpers for the n <= 64 enumeration paths, where an assignment is
/// a plain mask with bit i = b_i.
namespace mask {

inline int spin(std::uint64_t m, int i) { return ((m >> i) & 1U) ? 1 : -1; }

/// Lexicographic order on bit strings b_0 b_1 ...: the first differing
/// position decides, and the string with 0 there is smaller.
inline bool lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  return (a & (diff & (~diff + 1))) == 0;
}

inline std::uint64_t low_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

}  // namespace mask

}  // namespace isingfix
