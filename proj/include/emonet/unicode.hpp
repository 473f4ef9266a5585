#pragma once

#include <string>
#include <string_view>

namespace emonet {

// Canonical text form used for both lexicon entries and post text: Unicode NFC.
// Invalid UTF-8 is rejected with DataError.
std::string normalize_text(std::string_view utf8);

// Length in bytes of the UTF-8 sequence starting with lead byte c (1 for
// continuation or invalid bytes so scanning always advances).
inline std::size_t utf8_sequence_length(unsigned char c) noexcept {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

std::string_view trim_ascii(std::string_view s) noexcept;

}  // namespace emonet
