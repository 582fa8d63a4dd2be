#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lsm/word.hpp"

namespace lsm {

struct ProlongabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LengthOverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Predicted word lengths are tracked in 64-bit integers and refused beyond
/// this bound rather than silently wrapping.
inline constexpr std::uint64_t kMaxPredictedLength = std::uint64_t{1} << 62;

/// A morphism on words: one nonempty image word per letter, extended to words
/// by concatenation, so apply(uv) = apply(u)apply(v).
class Morphism {
public:
    Morphism(int alphabet_size, std::vector<Word> images)
        : alphabet_size_(alphabet_size), images_(std::move(images)) {
        if (alphabet_size_ <= 0)
            throw AlphabetError("alphabet size must be positive");
        if (static_cast<int>(images_.size()) != alphabet_size_)
            throw AlphabetError("expected " + std::to_string(alphabet_size_) + " images, got " +
                                std::to_string(images_.size()));
        for (int t = 0; t < alphabet_size_; ++t) {
            if (images_[t].empty())
                throw AlphabetError("image of letter " + std::to_string(t) + " is empty");
            for (Letter a : images_[t].letters) require_letter(alphabet_size_, a);
            images_[t].alphabet_size = alphabet_size_;
        }
    }

    static Morphism identity(int n) {
        std::vector<Word> images;
        images.reserve(n);
        for (Letter t = 0; t < n; ++t) images.push_back(Word(n, {t}));
        return Morphism(n, std::move(images));
    }

    int alphabet_size() const { return alphabet_size_; }

    const Word& image(Letter t) const {
        require_letter(alphabet_size_, t);
        return images_[static_cast<std::size_t>(t)];
    }

    /// True when every image has the same length (the tiling case).
    bool uniform() const {
        for (const Word& w : images_)
            if (w.size() != images_.front().size()) return false;
        return true;
    }

    bool prolongable_on(Letter seed) const {
        require_letter(alphabet_size_, seed);
        const Word& img = images_[static_cast<std::size_t>(seed)];
        return img.size() >= 2 && img[0] == seed;
    }

    Word apply(const Word& w) const {
        std::size_t total = 0;
        for (Letter a : w.letters) {
            require_letter(alphabet_size_, a);
            total += images_[static_cast<std::size_t>(a)].size();
        }
        Word out(alphabet_size_);
        out.letters.reserve(total);
        for (Letter a : w.letters) out.append(images_[static_cast<std::size_t>(a)]);
        return out;
    }

    /// Length of the k-th iterate on seed, without materializing it.
    std::uint64_t predicted_iterate_length(Letter seed, int k) const {
        require_letter(alphabet_size_, seed);
        // counts[a] = occurrences of letter a in the current iterate
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(alphabet_size_), 0);
        counts[static_cast<std::size_t>(seed)] = 1;
        for (int step = 0; step < k; ++step) {
            std::vector<std::uint64_t> next(static_cast<std::size_t>(alphabet_size_), 0);
            for (int a = 0; a < alphabet_size_; ++a) {
                if (counts[a] == 0) continue;
                for (Letter b : images_[a].letters) {
                    next[static_cast<std::size_t>(b)] += counts[a];
                    if (next[static_cast<std::size_t>(b)] > kMaxPredictedLength)
                        throw LengthOverflowError("iterate length exceeds 2^62");
                }
            }
            counts = std::move(next);
            std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
            if (total > kMaxPredictedLength)
                throw LengthOverflowError("iterate length exceeds 2^62");
        }
        return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }

    /// k-th iterate on seed; iterate(seed, 0) is the one-letter word (seed).
    Word iterate(Letter seed, int k) const {
        if (k < 0) throw std::invalid_argument("iteration count must be nonnegative");
        predicted_iterate_length(seed, k);
        Word w(alphabet_size_, {seed});
        for (int step = 0; step < k; ++step) w = apply(w);
        return w;
    }

    /// Text format: n lines, line t holding the image of letter t as
    /// whitespace-separated 1-based integers.
    std::string to_text() const {
        std::string out;
        for (const Word& img : images_) {
            out += format_word(img, 1, " ");
            out += '\n';
        }
        return out;
    }

    static Morphism parse(std::string_view text) {
        std::vector<Word> images;
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            Word img;
            try {
                img = parse_word(line, 1);
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
            }
            if (img.empty())
                throw ParseError("line " + std::to_string(lineno) + ": empty image");
            images.push_back(std::move(img));
        }
        if (images.empty()) throw ParseError("morphism text holds no images");
        const int n = static_cast<int>(images.size());
        for (std::size_t t = 0; t < images.size(); ++t) {
            for (Letter a : images[t].letters)
                if (a >= n)
                    throw ParseError("line " + std::to_string(t + 1) + ": letter " +
                                     std::to_string(a + 1) + " outside alphabet of size " +
                                     std::to_string(n));
            images[t].alphabet_size = n;
        }
        return Morphism(n, std::move(images));
    }

    friend bool operator==(const Morphism&, const Morphism&) = default;

private:
    int alphabet_size_;
    std::vector<Word> images_;
};

/// Lazy producer of the fixed point h^ω(seed) of a morphism prolongable on
/// seed: with image(seed) = seed·u, the stream emits
///
///     seed · u · h(u) · h²(u) · h³(u) · …
///
/// Expansion is depth-first, so the auxiliary state is one stack frame per
/// expansion level rather than a materialized prefix. Single consumer.
class FixedPointStream {
public:
    FixedPointStream(Morphism morphism, Letter seed)
        : morphism_(std::move(morphism)), seed_(seed) {
        require_letter(morphism_.alphabet_size(), seed);
        const Word& img = morphism_.image(seed);
        if (img.size() < 2)
            throw ProlongabilityError("image of seed " + std::to_string(seed) +
                                      " has length " + std::to_string(img.size()) +
                                      ", need at least 2");
        if (img[0] != seed)
            throw ProlongabilityError("image of seed " + std::to_string(seed) +
                                      " does not start with the seed");
        tail_ = img.sub(1, img.size() - 1);
    }

    const Morphism& morphism() const { return morphism_; }
    Letter seed() const { return seed_; }
    std::uint64_t position() const { return position_; }

    Letter next() {
        ++position_;
        if (!seed_emitted_) {
            seed_emitted_ = true;
            return seed_;
        }
        while (true) {
            if (stack_.empty()) stack_.push_back({kTail, 0, level_});
            Frame& f = stack_.back();
            const Word& w = word_of(f);
            if (f.index == w.size()) {
                stack_.pop_back();
                if (stack_.empty()) ++level_;
                continue;
            }
            Letter a = w[f.index++];
            if (f.depth == 0) return a;
            stack_.push_back({a, 0, f.depth - 1});
        }
    }

    /// The next `count` letters. On a fresh stream this is the prefix of
    /// length `count`.
    Word take(std::size_t count) {
        Word out(morphism_.alphabet_size());
        out.letters.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

private:
    static constexpr Letter kTail = -1;

    struct Frame {
        Letter source;      // kTail for u itself, else the letter being expanded
        std::size_t index;  // next position within word_of(frame)
        int depth;          // remaining applications; emit letters at depth 0
    };

    const Word& word_of(const Frame& f) const {
        return f.source == kTail ? tail_ : morphism_.image(f.source);
    }

    Morphism morphism_;
    Letter seed_;
    Word tail_;
    std::vector<Frame> stack_;
    int level_ = 0;  // k in the h^k(u) block currently being emitted
    bool seed_emitted_ = false;
    std::uint64_t position_ = 0;
};

/// First `length` letters of the fixed point of `m` on `seed`.
inline Word fixed_point_prefix(const Morphism& m, Letter seed, std::size_t length) {
    FixedPointStream stream(m, seed);
    return stream.take(length);
}

}  // namespace lsm
