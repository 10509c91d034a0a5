#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace sockscope {

// Decodes UTF-8 into Unicode scalar values; invalid sequences decode to
// U+FFFD one byte at a time.
std::vector<char32_t> decode_utf8(std::string_view s);

// Canonical composition limited to the Latin repertoire (combining marks
// U+0300..U+0327 over ASCII base letters composing into Latin-1 Supplement /
// Latin Extended-A codepoints). Sequences outside that repertoire pass
// through unchanged.
std::vector<char32_t> nfc_latin(std::vector<char32_t> codepoints);

std::size_t codepoint_count(std::string_view s);

}  // namespace sockscope
