#include "isingfix/assignment.hpp"

#include <stdexcept>

namespace isingfix {

Assignment::Assignment(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

Assignment Assignment::from_mask(std::uint64_t m, std::size_t n) {
  if (n > 64) throw std::invalid_argument("Assignment::from_mask: n > 64");
  Assignment a(n);
  if (n > 0) a.words_[0] = m & mask::low_bits(static_cast<int>(n));
  return a;
}

Assignment Assignment::from_spins(std::span<const int> spins) {
  Assignment a(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw std::invalid_argument("Assignment::from_spins: spins must be +1 or -1");
    }
    a.set_spin(i, spins[i]);
  }
  return a;
}

Assignment Assignment::from_bit_string(std::string_view bits) {
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      a.set_bit(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("Assignment::from_bit_string: expected '0' or '1'");
    }
  }
  return a;
}

void Assignment::set_bit(std::size_t i, bool value) {
  const std::uint64_t b = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= b;
  } else {
    words_[i / 64] &= ~b;
  }
}

std::uint64_t Assignment::mask() const {
  if (n_ > 64) throw std::invalid_argument("Assignment::mask: more than 64 variables");
  return words_.empty() ? 0 : words_[0];
}

std::string Assignment::bit_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (bit(i)) s[i] = '1';
  }
  return s;
}

std::size_t Assignment::hamming(const Assignment& other) const {
  if (other.n_ != n_) throw std::invalid_argument("Assignment::hamming: length mismatch");
  std::size_t d = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
  }
  return d;
}

std::size_t Assignment::count_up() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool operator<(const Assignment& a, const Assignment& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (a.words_[w] != b.words_[w]) return mask::lex_less(a.words_[w], b.words_[w]);
  }
  return false;
}

}  // namespace isingfix
