#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsm {

/// Symbol index into an n-letter alphabet. Always 0-based internally;
/// rendering as 0-based or 1-based digits is a presentation concern.
using Letter = int;

struct AlphabetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite word over an alphabet of `alphabet_size` letters.
struct Word {
    std::vector<Letter> letters;
    int alphabet_size = 0;

    Word() = default;
    explicit Word(int n) : alphabet_size(n) {}
    Word(int n, std::vector<Letter> ls) : letters(std::move(ls)), alphabet_size(n) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    Letter operator[](std::size_t i) const { return letters[i]; }

    void push_back(Letter a) { letters.push_back(a); }

    void append(const Word& other) {
        letters.insert(letters.end(), other.letters.begin(), other.letters.end());
    }

    /// Letters at positions [from, from+count).
    Word sub(std::size_t from, std::size_t count) const {
        Word out(alphabet_size);
        out.letters.assign(letters.begin() + static_cast<std::ptrdiff_t>(from),
                           letters.begin() + static_cast<std::ptrdiff_t>(from + count));
        return out;
    }

    bool valid() const {
        return std::all_of(letters.begin(), letters.end(),
                           [this](Letter a) { return 0 <= a && a < alphabet_size; });
    }

    friend bool operator==(const Word&, const Word&) = default;
};

inline void require_letter(int alphabet_size, Letter a) {
    if (a < 0 || a >= alphabet_size)
        throw AlphabetError("letter " + std::to_string(a) + " outside alphabet of size " +
                            std::to_string(alphabet_size));
}

/// Renders a word with its letters shifted by `base` (0 or 1). Single-digit
/// rendering needs every shifted letter below 10; otherwise values are joined
/// by `sep` (falling back to a space).
inline std::string format_word(const Word& w, int base, std::string_view sep = "") {
    const bool digits = sep.empty() && w.alphabet_size + base <= 10;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (digits) {
            out += static_cast<char>('0' + w[i] + base);
        } else {
            if (i > 0) out += sep.empty() ? " " : std::string(sep);
            out += std::to_string(w[i] + base);
        }
    }
    return out;
}

/// Parses a word from text. Whitespace- or comma-separated tokens are read as
/// integers; otherwise each character is one digit. With base = -1 the base is
/// inferred: 1-based unless the token 0 occurs. The alphabet size is the
/// largest letter seen plus one (at least min_alphabet).
inline Word parse_word(std::string_view text, int base = -1, int min_alphabet = 0) {
    // outer whitespace never selects the separated mode
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);
    std::vector<long> tokens;
    const bool separated = text.find_first_of(" \t\n\r,") != std::string_view::npos;
    if (separated) {
        std::string buf(text);
        std::replace(buf.begin(), buf.end(), ',', ' ');
        std::istringstream in(buf);
        std::string token;
        while (in >> token) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(token, &used);
            } catch (const std::exception&) {
                throw ParseError("invalid word token: " + token);
            }
            if (used != token.size()) throw ParseError("invalid word token: " + token);
            tokens.push_back(v);
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw ParseError(std::string("invalid word character: '") + c + "'");
            tokens.push_back(c - '0');
        }
    }
    if (base == -1)
        base = std::find(tokens.begin(), tokens.end(), 0L) != tokens.end() ? 0 : 1;
    Word w;
    long max_letter = -1;
    for (long v : tokens) {
        long a = v - base;
        if (a < 0) throw ParseError("letter " + std::to_string(v) + " below base " + std::to_string(base));
        max_letter = std::max(max_letter, a);
        w.letters.push_back(static_cast<Letter>(a));
    }
    w.alphabet_size = std::max<long>(max_letter + 1, min_alphabet);
    return w;
}

}  // namespace lsm
