#include "emonet/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include "emonet/error.hpp"

namespace emonet {

std::string normalize_text(std::string_view utf8) {
  bool ascii = true;
  for (unsigned char c : utf8) {
    if (c >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) return std::string(utf8);

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

  const auto source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  if (source.isBogus() || source.indexOf(static_cast<UChar>(0xFFFD)) >= 0) {
    // fromUTF8 substitutes U+FFFD for ill-formed input; a literal U+FFFD in the
    // input is rare enough to treat the same way.
    std::string probe;
    source.toUTF8String(probe);
    if (probe != utf8) throw DataError("invalid UTF-8 text");
  }
  if (nfc->isNormalized(source, status) && U_SUCCESS(status)) return std::string(utf8);
  status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfc->normalize(source, status);
  if (U_FAILURE(status)) throw DataError("unicode normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string_view trim_ascii(std::string_view s) noexcept {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

}  // namespace emonet
