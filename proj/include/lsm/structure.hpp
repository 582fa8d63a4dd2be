#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lsm/latin.hpp"
#include "lsm/morphism.hpp"
#include "lsm/repetition.hpp"
#include "lsm/word.hpp"

namespace lsm {

struct TilingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Location of 1-based position j within the tiling by length-n tiles:
/// j = (tile_index - 1)·n + offset with offset in [1, n]. This module keeps
/// the 1-based convention throughout; conversion from 0-based witnesses
/// happens at its boundary.
struct PositionResidue {
    std::uint64_t tile_index = 0;  // m, 1-based
    int offset = 0;                // r in [1, n]

    friend bool operator==(const PositionResidue&, const PositionResidue&) = default;
};

inline PositionResidue position_residue(std::uint64_t j, int n) {
    if (j < 1 || n < 1) throw std::invalid_argument("position and tile length are 1-based");
    const std::uint64_t m = (j - 1) / static_cast<std::uint64_t>(n) + 1;
    const int r = static_cast<int>((j - 1) % static_cast<std::uint64_t>(n)) + 1;
    return PositionResidue{m, r};
}

/// First `count` tiles of the stream's fixed point. Requires a uniform
/// morphism (every image the same length), which makes the image blocks a
/// tiling of the sequence; for a Latin-square morphism each tile is a row.
inline std::vector<Word> tiles(FixedPointStream& stream, std::size_t count) {
    const Morphism& m = stream.morphism();
    if (!m.uniform())
        throw TilingError("morphism images have differing lengths; no tiling");
    const std::size_t n = m.image(0).size();
    std::vector<Word> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(stream.take(n));
    return out;
}

/// The word of first letters, one per tile. For a Latin-square fixed point
/// this reproduces the sequence itself.
inline Word first_letter_subsequence(std::span<const Word> tile_seq) {
    Word out(tile_seq.empty() ? 0 : tile_seq.front().alphabet_size);
    out.letters.reserve(tile_seq.size());
    for (const Word& t : tile_seq) {
        if (t.empty()) throw TilingError("empty tile");
        out.push_back(t[0]);
    }
    return out;
}

/// Letters at 1-based positions i, i+n, i+2n, … of w.
inline Word decimate(const Word& w, int offset, int step) {
    if (step < 1 || offset < 1 || offset > step)
        throw std::invalid_argument("decimation offset must lie in [1, step]");
    Word out(w.alphabet_size);
    for (std::size_t pos = static_cast<std::size_t>(offset) - 1; pos < w.size();
         pos += static_cast<std::size_t>(step))
        out.push_back(w[pos]);
    return out;
}

/// The permutation sending each first-column letter to the letter in column i
/// (1-based) of its row, packaged as a morphism of single-letter images.
/// Column 1 is the identity for a natural square; every column is a bijection
/// by the Latin column property.
inline Morphism column_permutation(const NaturalLatinSquare& sq, int column) {
    const int n = sq.order();
    if (column < 1 || column > n) throw std::invalid_argument("column out of range");
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(n));
    for (Letter t = 0; t < n; ++t)
        images.push_back(Word(n, {sq.square().at(t, column - 1)}));
    return Morphism(n, std::move(images));
}

/// Inverse of a permutation given as single-letter images.
inline Morphism inverse_permutation(const Morphism& pi) {
    const int n = pi.alphabet_size();
    std::vector<Word> images(static_cast<std::size_t>(n));
    for (Letter t = 0; t < n; ++t) {
        const Word& img = pi.image(t);
        if (img.size() != 1) throw std::invalid_argument("not a permutation morphism");
        images[static_cast<std::size_t>(img[0])] = Word(n, {t});
    }
    return Morphism(n, std::move(images));
}

/// Checks the decimation identity D_(i,n) ∘ fixed point = π_i ∘ fixed point
/// at finite scale: the subsequence at offset i of the (K·n)-prefix must
/// equal π_i applied letterwise to the K-prefix.
inline bool check_decimation_identity(const NaturalLatinSquare& sq, Letter seed, int column,
                                      std::size_t prefix_tiles) {
    const int n = sq.order();
    if (n < 2) throw std::invalid_argument("identity needs order at least 2");
    const Morphism ell = sq.square().to_morphism();
    const Word long_prefix = fixed_point_prefix(ell, seed, prefix_tiles * static_cast<std::size_t>(n));
    const Word short_prefix = fixed_point_prefix(ell, seed, prefix_tiles);
    const Morphism pi = column_permutation(sq, column);
    return decimate(long_prefix, column, n) == pi.apply(short_prefix);
}

/// Residues (r1, r2, r3) of the three c-positions of an overlap witness under
/// tiling by length-n tiles, 1-based. The spacing j_i = j_1 + (i-1)·p forces
/// r3 ≡ 2·r2 - r1 (mod n) for any witness whatsoever.
inline std::array<int, 3> overlap_residues(const OverlapWitness& wit, int n) {
    std::array<int, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const std::uint64_t j =
            static_cast<std::uint64_t>(wit.start) + 1 + static_cast<std::uint64_t>(i) * wit.period;
        out[static_cast<std::size_t>(i)] = position_residue(j, n).offset;
    }
    return out;
}

}  // namespace lsm
