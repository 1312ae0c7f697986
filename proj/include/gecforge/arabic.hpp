#pragma once

#include <string_view>

// Character classes used by tokenization, annotation, corruption and normalization.
namespace gecforge::arabic {

inline constexpr char32_t kAlif = U'ا';
inline constexpr char32_t kAlifHamzaAbove = U'أ';
inline constexpr char32_t kAlifHamzaBelow = U'إ';
inline constexpr char32_t kAlifMadda = U'آ';
inline constexpr char32_t kHamza = U'ء';
inline constexpr char32_t kWawHamza = U'ؤ';
inline constexpr char32_t kYaHamza = U'ئ';
inline constexpr char32_t kAlifMaqsura = U'ى';
inline constexpr char32_t kYa = U'ي';
inline constexpr char32_t kWaw = U'و';
inline constexpr char32_t kTaMarbuta = U'ة';
inline constexpr char32_t kHa = U'ه';
inline constexpr char32_t kTa = U'ت';
inline constexpr char32_t kNun = U'ن';
inline constexpr char32_t kTanwinFatha = U'ً';

inline constexpr char32_t kArabicComma = U'،';
inline constexpr char32_t kArabicSemicolon = U'؛';
inline constexpr char32_t kArabicQuestion = U'؟';

// . , ، ; ؛ ? ؟ ! : " ( )
inline constexpr bool is_punct(char32_t c) {
  switch (c) {
    case U'.': case U',': case kArabicComma: case U';': case kArabicSemicolon:
    case U'?': case kArabicQuestion: case U'!': case U':': case U'"': case U'(': case U')':
      return true;
    default:
      return false;
  }
}

inline constexpr bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == U'\u00A0' ||
         (c >= U'\u2000' && c <= U'\u200A') || c == U'\u202F' || c == U'\u3000';
}

inline constexpr bool is_letter(char32_t c) {
  return (c >= U'ء' && c <= U'غ') || (c >= U'ف' && c <= U'ي') ||
         (c >= U'ٱ' && c <= U'ۓ');
}

inline constexpr bool is_diacritic(char32_t c) { return c >= U'ً' && c <= U'ْ'; }

inline constexpr bool is_digit(char32_t c) { return (c >= U'0' && c <= U'9') || (c >= U'٠' && c <= U'٩'); }

// ا أ إ آ ء ؤ ئ
inline constexpr bool is_hamza_family(char32_t c) {
  return c == kAlif || c == kAlifHamzaAbove || c == kAlifHamzaBelow || c == kAlifMadda || c == kHamza ||
         c == kWawHamza || c == kYaHamza;
}

// Hamza family minus bare alif.
inline constexpr bool is_hamza_bearing(char32_t c) { return c != kAlif && is_hamza_family(c); }

inline constexpr bool is_long_vowel(char32_t c) { return c == kAlif || c == kWaw || c == kYa; }

// Letters that take part in no specialised orthographic rule. Injections that
// must not be mistaken for a more specific error draw only from this class.
inline constexpr bool is_plain_consonant(char32_t c) {
  return is_letter(c) && !is_hamza_family(c) && !is_long_vowel(c) && c != kAlifMaqsura && c != kTaMarbuta &&
         c != kHa && c != kTa && c != kNun && c != U'ـ';
}

inline bool contains_letter(std::u32string_view w) {
  for (char32_t c : w)
    if (is_letter(c)) return true;
  return false;
}

}  // namespace gecforge::arabic
