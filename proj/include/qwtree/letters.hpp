#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwtree {

// Generator letters of the free product Z2*Z2*Z2; each is its own inverse.
enum class Letter : std::uint8_t { a = 0, b = 1, c = 2 };

// sigma = (a b c) as a cycle on letters; pi = sigma^2 = (a c b).
constexpr Letter sigma(Letter l) noexcept {
  return static_cast<Letter>((static_cast<std::uint8_t>(l) + 1u) % 3u);
}
constexpr Letter sigma2(Letter l) noexcept {
  return static_cast<Letter>((static_cast<std::uint8_t>(l) + 2u) % 3u);
}

constexpr char letter_char(Letter l) noexcept {
  return static_cast<char>('a' + static_cast<std::uint8_t>(l));
}

inline Letter letter_from_char(char c) {
  if (c < 'a' || c > 'c') throw std::invalid_argument(std::string("bad letter: ") + c);
  return static_cast<Letter>(c - 'a');
}

}  // namespace qwtree
