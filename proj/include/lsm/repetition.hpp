#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "lsm/word.hpp"

namespace lsm {

/// Certificate of an overlap c·x·c·x·c: a factor of length 2p+1 with period
/// p = |cx| starting at `start` (0-based). Equivalently w[k] = w[k+p] for all
/// k in [start, start+p].
struct OverlapWitness {
    std::size_t start = 0;
    std::size_t period = 0;

    friend bool operator==(const OverlapWitness&, const OverlapWitness&) = default;
};

/// Certificate of a square ww: w[k] = w[k+h] for all k in [start, start+h)
/// with h = half_length.
struct SquareWitness {
    std::size_t start = 0;
    std::size_t half_length = 0;

    friend bool operator==(const SquareWitness&, const SquareWitness&) = default;
};

inline bool verify_witness(const Word& w, const OverlapWitness& wit) {
    if (wit.period < 1) return false;
    if (w.size() < wit.start + 2 * wit.period + 1) return false;
    for (std::size_t k = wit.start; k <= wit.start + wit.period; ++k)
        if (w[k] != w[k + wit.period]) return false;
    return true;
}

inline bool verify_witness(const Word& w, const SquareWitness& wit) {
    if (wit.half_length < 1) return false;
    if (w.size() < wit.start + 2 * wit.half_length) return false;
    for (std::size_t k = wit.start; k < wit.start + wit.half_length; ++k)
        if (w[k] != w[k + wit.half_length]) return false;
    return true;
}

/// Brute-force overlap scan. Returns the witness minimizing (period, start),
/// or nullopt. For each candidate period the lag-p match run is swept left to
/// right, so the first run of length period+1 has the leftmost start.
inline std::optional<OverlapWitness> find_overlap_naive(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; 2 * p + 1 <= n; ++p) {
        std::size_t run = 0;
        for (std::size_t k = 0; k + p < n; ++k) {
            if (w[k] == w[k + p]) {
                if (++run == p + 1) return OverlapWitness{k - p, p};
            } else {
                run = 0;
            }
        }
    }
    return std::nullopt;
}

/// Brute-force square scan minimizing (half_length, start).
inline std::optional<SquareWitness> find_square(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t h = 1; 2 * h <= n; ++h) {
        std::size_t run = 0;
        for (std::size_t k = 0; k + h < n; ++k) {
            if (w[k] == w[k + h]) {
                if (++run >= h) return SquareWitness{k + 1 - h, h};
            } else {
                run = 0;
            }
        }
    }
    return std::nullopt;
}

namespace detail {

/// Suffix array by rank doubling with counting sort.
inline std::vector<std::int32_t> suffix_array(std::span<const Letter> s) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    std::vector<std::int32_t> sa(s.size()), rank(s.size()), aux(s.size());
    if (n == 0) return sa;

    std::int32_t alpha = 0;
    for (Letter c : s) alpha = std::max(alpha, static_cast<std::int32_t>(c) + 1);
    const std::int32_t buckets = std::max(n, alpha) + 1;
    std::vector<std::int32_t> count(static_cast<std::size_t>(buckets), 0);

    // aux holds the order being refined; sa receives the sorted order.
    auto counting_sort = [&](const std::vector<std::int32_t>& key) {
        std::fill(count.begin(), count.end(), 0);
        for (std::int32_t i = 0; i < n; ++i) count[static_cast<std::size_t>(key[aux[i]]) + 1] += 1;
        for (std::int32_t i = 1; i < buckets; ++i) count[i] += count[i - 1];
        for (std::int32_t i = 0; i < n; ++i) sa[count[static_cast<std::size_t>(key[aux[i]])]++] = aux[i];
    };

    std::vector<std::int32_t> key(s.size());
    for (std::int32_t i = 0; i < n; ++i) key[i] = static_cast<std::int32_t>(s[i]);
    std::iota(aux.begin(), aux.end(), 0);
    counting_sort(key);

    std::int32_t max_rank = 0;
    rank[sa[0]] = 0;
    for (std::int32_t i = 1; i < n; ++i) {
        max_rank += (key[sa[i - 1]] != key[sa[i]]);
        rank[sa[i]] = max_rank;
    }

    for (std::int32_t length = 1; max_rank + 1 < n; length *= 2) {
        // order by the second key first: suffixes too short to have a tail
        // rank sort below every real rank, then tails in ascending rank order
        std::int32_t filled = 0;
        for (std::int32_t i = std::max<std::int32_t>(0, n - length); i < n; ++i)
            aux[filled++] = i;
        for (std::int32_t i = 0; i < n; ++i)
            if (sa[i] >= length) aux[filled++] = sa[i] - length;
        counting_sort(rank);

        auto tail_rank = [&](std::int32_t pos) {
            return pos + length < n ? rank[pos + length] : -1;
        };
        max_rank = 0;
        aux[sa[0]] = 0;
        for (std::int32_t i = 1; i < n; ++i) {
            max_rank += (rank[sa[i - 1]] != rank[sa[i]] ||
                         tail_rank(sa[i - 1]) != tail_rank(sa[i]));
            aux[sa[i]] = max_rank;
        }
        std::swap(aux, rank);
    }
    return sa;
}

/// Kasai's LCP construction: lcp[i] = common prefix length of sa[i], sa[i+1].
inline std::vector<std::int32_t> lcp_array(std::span<const Letter> s,
                                           const std::vector<std::int32_t>& sa,
                                           std::vector<std::int32_t>& rank_out) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    rank_out.assign(s.size(), 0);
    for (std::int32_t i = 0; i < n; ++i) rank_out[sa[i]] = i;
    std::vector<std::int32_t> lcp(n > 0 ? s.size() - 1 : 0, 0);
    std::int32_t k = 0;
    for (std::int32_t i = 0; i < n; ++i) {
        if (k > 0) --k;
        if (rank_out[i] == n - 1) {
            k = 0;
            continue;
        }
        const std::int32_t j = sa[rank_out[i] + 1];
        while (i + k < n && j + k < n && s[i + k] == s[j + k]) ++k;
        lcp[rank_out[i]] = k;
    }
    return lcp;
}

/// O(1) longest-common-extension queries between suffixes, backed by a sparse
/// table of range minima over the LCP array.
class LceTable {
public:
    explicit LceTable(std::span<const Letter> s) : n_(static_cast<std::int32_t>(s.size())) {
        auto sa = suffix_array(s);
        const auto lcp = lcp_array(s, sa, rank_);
        const std::int32_t m = static_cast<std::int32_t>(lcp.size());
        if (m == 0) return;
        const int levels = std::bit_width(static_cast<unsigned>(m));
        table_.assign(static_cast<std::size_t>(levels), {});
        table_[0] = lcp;
        for (int lv = 1; lv < levels; ++lv) {
            const std::int32_t span = std::int32_t{1} << lv;
            table_[lv].resize(static_cast<std::size_t>(m - span + 1));
            for (std::int32_t i = 0; i + span <= m; ++i)
                table_[lv][i] = std::min(table_[lv - 1][i],
                                          table_[lv - 1][i + span / 2]);
        }
    }

    /// Length of the longest common prefix of the suffixes at i and j.
    std::int32_t lce(std::int32_t i, std::int32_t j) const {
        if (i == j) return n_ - i;
        std::int32_t a = rank_[i], b = rank_[j];
        if (a > b) std::swap(a, b);
        const int lv = std::bit_width(static_cast<unsigned>(b - a)) - 1;
        return std::min(table_[lv][a], table_[lv][b - (std::int32_t{1} << lv)]);
    }

private:
    std::int32_t n_;
    std::vector<std::int32_t> rank_;
    std::vector<std::vector<std::int32_t>> table_;
};

}  // namespace detail

/// Overlap detector in O(|w| log |w|): longest-common-extension tables over
/// the word and its reversal, then for each candidate period p the anchors
/// p, 2p, 3p, … are extended both ways. A lag-p match run of length ≥ p+1
/// always covers a multiple of p, so every overlap of period p is seen from
/// some anchor. Periods are scanned in increasing order and anchors yield the
/// leftmost start, so the returned witness minimizes (period, start) exactly
/// like the brute-force scan.
inline std::optional<OverlapWitness> find_overlap_fast(const Word& w) {
    const std::int32_t n = static_cast<std::int32_t>(w.size());
    if (n < 3) return std::nullopt;

    std::span<const Letter> s(w.letters);
    detail::LceTable forward(s);
    std::vector<Letter> reversed(w.letters.rbegin(), w.letters.rend());
    detail::LceTable backward(reversed);

    // Matches at lag p are compared as w[k] vs w[k-p], k in [p, n).
    for (std::int32_t p = 1; 2 * p + 1 <= n; ++p) {
        std::optional<std::size_t> best_start;
        for (std::int32_t a = p; a < n; a += p) {
            const std::int32_t f = forward.lce(a - p, a);
            const std::int32_t b =
                a - p == 0 ? 0 : backward.lce(n - a, n - (a - p));
            if (b + f >= p + 1) {
                const std::size_t start = static_cast<std::size_t>(a - b - p);
                if (!best_start || start < *best_start) best_start = start;
            }
        }
        if (best_start) return OverlapWitness{*best_start, static_cast<std::size_t>(p)};
    }
    return std::nullopt;
}

}  // namespace lsm
