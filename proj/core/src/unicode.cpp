#include "sockscope/unicode.hpp"

namespace sockscope {

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        bool valid = true;
        for (std::size_t j = 1; j < len; ++j) {
            const unsigned char b = static_cast<unsigned char>(s[i + j]);
            if ((b & 0xC0) != 0x80) {
                valid = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        // reject overlong encodings and surrogates
        if (valid) {
            if (len == 2 && cp < 0x80) valid = false;
            if (len == 3 && cp < 0x800) valid = false;
            if (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) valid = false;
            if (cp >= 0xD800 && cp <= 0xDFFF) valid = false;
        }
        if (!valid) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

namespace {

// (base, combining mark) -> precomposed codepoint, Latin repertoire only.
char32_t compose_latin(char32_t base, char32_t mark) {
    struct Row {
        char32_t base;
        char32_t grave, acute, circumflex, tilde, diaeresis, ring, cedilla;
    };
    // 0 marks an undefined combination.
    static const Row kRows[] = {
        {U'A', 0x00C0, 0x00C1, 0x00C2, 0x00C3, 0x00C4, 0x00C5, 0},
        {U'C', 0, 0x0106, 0x0108, 0, 0, 0, 0x00C7},
        {U'E', 0x00C8, 0x00C9, 0x00CA, 0, 0x00CB, 0, 0},
        {U'I', 0x00CC, 0x00CD, 0x00CE, 0x0128, 0x00CF, 0, 0},
        {U'N', 0x01F8, 0x0143, 0, 0x00D1, 0, 0, 0},
        {U'O', 0x00D2, 0x00D3, 0x00D4, 0x00D5, 0x00D6, 0, 0},
        {U'U', 0x00D9, 0x00DA, 0x00DB, 0x0168, 0x00DC, 0x016E, 0},
        {U'Y', 0x1EF2, 0x00DD, 0x0176, 0, 0x0178, 0, 0},
        {U'a', 0x00E0, 0x00E1, 0x00E2, 0x00E3, 0x00E4, 0x00E5, 0},
        {U'c', 0, 0x0107, 0x0109, 0, 0, 0, 0x00E7},
        {U'e', 0x00E8, 0x00E9, 0x00EA, 0, 0x00EB, 0, 0},
        {U'i', 0x00EC, 0x00ED, 0x00EE, 0x0129, 0x00EF, 0, 0},
        {U'n', 0x01F9, 0x0144, 0, 0x00F1, 0, 0, 0},
        {U'o', 0x00F2, 0x00F3, 0x00F4, 0x00F5, 0x00F6, 0, 0},
        {U'u', 0x00F9, 0x00FA, 0x00FB, 0x0169, 0x00FC, 0x016F, 0},
        {U'y', 0x1EF3, 0x00FD, 0x0177, 0, 0x00FF, 0, 0},
        {U's', 0, 0x015B, 0x015D, 0, 0, 0, 0x015F},
        {U'S', 0, 0x015A, 0x015C, 0, 0, 0, 0x015E},
        {U'z', 0, 0x017A, 0, 0, 0, 0, 0},
        {U'Z', 0, 0x0179, 0, 0, 0, 0, 0},
        {U'g', 0, 0x01F5, 0x011D, 0, 0, 0, 0x0123},
        {U'G', 0, 0x01F4, 0x011C, 0, 0, 0, 0x0122},
    };
    for (const Row& row : kRows) {
        if (row.base != base) continue;
        switch (mark) {
            case 0x0300: return row.grave;
            case 0x0301: return row.acute;
            case 0x0302: return row.circumflex;
            case 0x0303: return row.tilde;
            case 0x0308: return row.diaeresis;
            case 0x030A: return row.ring;
            case 0x0327: return row.cedilla;
            default: return 0;
        }
    }
    return 0;
}

}  // namespace

std::vector<char32_t> nfc_latin(std::vector<char32_t> codepoints) {
    std::vector<char32_t> out;
    out.reserve(codepoints.size());
    for (char32_t cp : codepoints) {
        if (!out.empty() && cp >= 0x0300 && cp <= 0x0327) {
            if (const char32_t composed = compose_latin(out.back(), cp)) {
                out.back() = composed;
                continue;
            }
        }
        out.push_back(cp);
    }
    return out;
}

std::size_t codepoint_count(std::string_view s) { return decode_utf8(s).size(); }

}  // namespace sockscope
