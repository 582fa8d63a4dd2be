#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsm/morphism.hpp"
#include "lsm/word.hpp"

namespace lsm {

enum class LatinDefect { ShapeMismatch, LetterOutOfRange, RowDuplicate, ColumnDuplicate };

/// First violated Latin constraint. Row/column/letter are reported 1-based;
/// a value of 0 means the field does not apply.
struct LatinDiagnostic {
    LatinDefect kind = LatinDefect::ShapeMismatch;
    int row = 0;
    int column = 0;
    int letter = 0;
    std::string detail;

    std::string to_string() const {
        std::string out;
        switch (kind) {
            case LatinDefect::ShapeMismatch: out = "shape mismatch"; break;
            case LatinDefect::LetterOutOfRange: out = "letter out of range"; break;
            case LatinDefect::RowDuplicate: out = "duplicate in row"; break;
            case LatinDefect::ColumnDuplicate: out = "duplicate in column"; break;
        }
        if (kind == LatinDefect::RowDuplicate) {
            out += " " + std::to_string(row) + ": letter " + std::to_string(letter);
        } else if (kind == LatinDefect::ColumnDuplicate) {
            out += " " + std::to_string(column) + ": letter " + std::to_string(letter);
        } else if (kind == LatinDefect::LetterOutOfRange) {
            out += " at row " + std::to_string(row) + ", column " + std::to_string(column);
        }
        if (!detail.empty()) out += " (" + detail + ")";
        return out;
    }
};

struct LatinValidationError : std::invalid_argument {
    explicit LatinValidationError(LatinDiagnostic d)
        : std::invalid_argument(d.to_string()), diagnostic(std::move(d)) {}
    LatinDiagnostic diagnostic;
};

/// An n×n table over letters 0..n-1 in which every row and every column is a
/// permutation of the alphabet.
class LatinSquare {
public:
    /// First violated constraint of a candidate table, or nullopt if it is a
    /// Latin square. Checks shape, then letter range, then rows, then columns.
    static std::optional<LatinDiagnostic> check(const std::vector<std::vector<Letter>>& rows) {
        const int n = static_cast<int>(rows.size());
        if (n == 0)
            return LatinDiagnostic{LatinDefect::ShapeMismatch, 0, 0, 0, "empty table"};
        for (int r = 0; r < n; ++r)
            if (static_cast<int>(rows[r].size()) != n)
                return LatinDiagnostic{LatinDefect::ShapeMismatch, r + 1, 0, 0,
                                       "row " + std::to_string(r + 1) + " has " +
                                           std::to_string(rows[r].size()) + " entries, want " +
                                           std::to_string(n)};
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (rows[r][c] < 0 || rows[r][c] >= n)
                    return LatinDiagnostic{LatinDefect::LetterOutOfRange, r + 1, c + 1,
                                           rows[r][c] + 1, ""};
        for (int r = 0; r < n; ++r) {
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            for (int c = 0; c < n; ++c) {
                if (seen[static_cast<std::size_t>(rows[r][c])])
                    return LatinDiagnostic{LatinDefect::RowDuplicate, r + 1, c + 1,
                                           rows[r][c] + 1, ""};
                seen[static_cast<std::size_t>(rows[r][c])] = true;
            }
        }
        for (int c = 0; c < n; ++c) {
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            for (int r = 0; r < n; ++r) {
                if (seen[static_cast<std::size_t>(rows[r][c])])
                    return LatinDiagnostic{LatinDefect::ColumnDuplicate, r + 1, c + 1,
                                           rows[r][c] + 1, ""};
                seen[static_cast<std::size_t>(rows[r][c])] = true;
            }
        }
        return std::nullopt;
    }

    static LatinSquare validate(const std::vector<std::vector<Letter>>& rows) {
        if (auto diag = check(rows)) throw LatinValidationError(*diag);
        LatinSquare sq;
        sq.order_ = static_cast<int>(rows.size());
        sq.cells_.reserve(static_cast<std::size_t>(sq.order_) * sq.order_);
        for (const auto& row : rows) cells_append(sq, row);
        return sq;
    }

    /// Cayley table of Z/nZ: rows[i][j] = (i+j) mod n. For n=2 this is the
    /// Thue-Morse table.
    static LatinSquare cayley_zn(int n) {
        if (n <= 0) throw std::invalid_argument("order must be positive");
        LatinSquare sq;
        sq.order_ = n;
        sq.cells_.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sq.cells_.push_back((i + j) % n);
        return sq;
    }

    int order() const { return order_; }
    Letter at(int row, int col) const {
        return cells_[static_cast<std::size_t>(row) * order_ + col];
    }

    Word row(int r) const {
        Word out(order_);
        out.letters.assign(cells_.begin() + static_cast<std::ptrdiff_t>(r) * order_,
                           cells_.begin() + static_cast<std::ptrdiff_t>(r + 1) * order_);
        return out;
    }

    std::vector<std::vector<Letter>> rows() const {
        std::vector<std::vector<Letter>> out;
        out.reserve(static_cast<std::size_t>(order_));
        for (int r = 0; r < order_; ++r) out.push_back(row(r).letters);
        return out;
    }

    bool natural_first_column() const {
        for (int r = 0; r < order_; ++r)
            if (at(r, 0) != r) return false;
        return true;
    }

    /// The morphism t -> row t.
    Morphism to_morphism() const {
        std::vector<Word> images;
        images.reserve(static_cast<std::size_t>(order_));
        for (int r = 0; r < order_; ++r) images.push_back(row(r));
        return Morphism(order_, std::move(images));
    }

    /// Whether the quasigroup x∘y = rows[x][y] read off this bordering is
    /// associative (checks all n³ triples). This does not decide whether the
    /// square is isotopic to a group table.
    bool is_associative_quasigroup() const {
        for (int x = 0; x < order_; ++x)
            for (int y = 0; y < order_; ++y)
                for (int z = 0; z < order_; ++z)
                    if (at(at(x, y), z) != at(x, at(y, z))) return false;
        return true;
    }

    /// Plain text: n lines of n whitespace-separated 1-based integers.
    std::string to_text() const {
        std::string out;
        for (int r = 0; r < order_; ++r) {
            out += format_word(row(r), 1, " ");
            out += '\n';
        }
        return out;
    }

    /// Parses the plain-text format, or a structured JSON-like object with
    /// fields {order, rows} when the text starts with '{'. Diagnostics carry
    /// 1-based line/column positions.
    static LatinSquare parse(std::string_view text);

    friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

private:
    static void cells_append(LatinSquare& sq, const std::vector<Letter>& row) {
        sq.cells_.insert(sq.cells_.end(), row.begin(), row.end());
    }

    int order_ = 0;
    std::vector<Letter> cells_;  // row-major
};

/// A Latin square whose first column is (0,1,…,n-1) in order — the class for
/// which fixed points of the row morphism are overlap-free.
class NaturalLatinSquare {
public:
    explicit NaturalLatinSquare(LatinSquare square) : square_(std::move(square)) {
        if (!square_.natural_first_column())
            throw std::invalid_argument("first column is not in natural order");
    }

    const LatinSquare& square() const { return square_; }
    int order() const { return square_.order(); }

    friend bool operator==(const NaturalLatinSquare&, const NaturalLatinSquare&) = default;

private:
    LatinSquare square_;
};

/// The 3×3 square with natural first column that is not the Z/3Z table
/// directly: rows 132 / 213 / 321 (1-based).
inline LatinSquare alternate_3x3() {
    return LatinSquare::validate({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}});
}

/// A 6×6 Latin square that is not a group Cayley table (order 6 is the
/// smallest order where such squares exist).
inline LatinSquare non_cayley_6x6() {
    return LatinSquare::validate({
        {0, 1, 2, 3, 4, 5},
        {1, 0, 5, 2, 3, 4},
        {2, 3, 4, 1, 5, 0},
        {3, 4, 0, 5, 1, 2},
        {4, 5, 3, 0, 2, 1},
        {5, 2, 1, 4, 0, 3},
    });
}

/// Streams every Latin square of a given order whose first column is
/// (0,…,n-1), in lexicographic row-major order, by cell-by-cell backtracking
/// with row/column occupancy masks. Single consumer.
class NaturalSquareEnumerator {
public:
    explicit NaturalSquareEnumerator(int n) : n_(n) {
        if (n <= 0) throw std::invalid_argument("order must be positive");
        if (n > 31) throw std::invalid_argument("order too large to enumerate");
        cells_.assign(static_cast<std::size_t>(n) * n, -1);
        row_mask_.assign(static_cast<std::size_t>(n), 0);
        col_mask_.assign(static_cast<std::size_t>(n), 0);
    }

    /// Next square, or nullopt when exhausted.
    std::optional<NaturalLatinSquare> next() {
        if (done_) return std::nullopt;
        long pos = fresh_ ? 0 : static_cast<long>(cells_.size()) - 1;
        bool descending = fresh_;
        fresh_ = false;
        // Resuming after a yield starts by advancing the last cell.
        while (pos >= 0) {
            const int r = static_cast<int>(pos) / n_;
            const int c = static_cast<int>(pos) % n_;
            Letter candidate;
            if (descending) {
                candidate = (c == 0) ? static_cast<Letter>(r) : 0;
            } else {
                candidate = cells_[static_cast<std::size_t>(pos)];
                unset(pos, candidate);
                // first-column cells are forced, so backtrack straight through
                candidate = (c == 0) ? static_cast<Letter>(n_) : candidate + 1;
            }
            bool placed = false;
            for (Letter a = candidate; a < n_; ++a) {
                const std::uint32_t bit = std::uint32_t{1} << a;
                if ((row_mask_[static_cast<std::size_t>(r)] & bit) ||
                    (col_mask_[static_cast<std::size_t>(c)] & bit))
                    continue;
                if (c == 0 && a != r) continue;
                set(pos, a);
                placed = true;
                break;
            }
            if (placed) {
                ++pos;
                descending = true;
                if (pos == static_cast<long>(cells_.size())) return current();
            } else {
                --pos;
                descending = false;
            }
        }
        done_ = true;
        return std::nullopt;
    }

    /// All squares of the order. Intended for small n; counts grow as the
    /// number of reduced squares times (n-1)!.
    static std::vector<NaturalLatinSquare> all(int n) {
        NaturalSquareEnumerator e(n);
        std::vector<NaturalLatinSquare> out;
        while (auto sq = e.next()) out.push_back(std::move(*sq));
        return out;
    }

private:
    void set(long pos, Letter a) {
        cells_[static_cast<std::size_t>(pos)] = a;
        row_mask_[static_cast<std::size_t>(pos) / n_] |= std::uint32_t{1} << a;
        col_mask_[static_cast<std::size_t>(pos) % n_] |= std::uint32_t{1} << a;
    }

    void unset(long pos, Letter a) {
        row_mask_[static_cast<std::size_t>(pos) / n_] &= ~(std::uint32_t{1} << a);
        col_mask_[static_cast<std::size_t>(pos) % n_] &= ~(std::uint32_t{1} << a);
    }

    NaturalLatinSquare current() const {
        std::vector<std::vector<Letter>> rows(static_cast<std::size_t>(n_));
        for (int r = 0; r < n_; ++r)
            rows[static_cast<std::size_t>(r)] =
                std::vector<Letter>(cells_.begin() + static_cast<std::ptrdiff_t>(r) * n_,
                                    cells_.begin() + static_cast<std::ptrdiff_t>(r + 1) * n_);
        return NaturalLatinSquare(LatinSquare::validate(rows));
    }

    int n_;
    std::vector<Letter> cells_;
    std::vector<std::uint32_t> row_mask_, col_mask_;
    bool fresh_ = true;
    bool done_ = false;
};

inline std::uint64_t count_natural_squares(int n) {
    NaturalSquareEnumerator e(n);
    std::uint64_t count = 0;
    while (e.next()) ++count;
    return count;
}

inline LatinSquare LatinSquare::parse(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty Latin square text");
    std::vector<std::vector<Letter>> rows;
    if (text[first] == '{') {
        // Structured variant; kept dependency-free by a tiny field scan.
        // Accepts {"order": n, "rows": [[...],[...],...]} with 1-based entries.
        std::string buf(text);
        auto need = [&](std::string_view key) {
            auto at = buf.find(std::string(key));
            if (at == std::string::npos) throw ParseError("missing field " + std::string(key));
            return at;
        };
        need("\"order\"");
        const auto rows_at = need("\"rows\"");
        std::vector<Letter> current;
        int depth = 0;
        for (std::size_t i = buf.find('[', rows_at); i < buf.size(); ++i) {
            const char ch = buf[i];
            if (ch == '[') {
                ++depth;
                if (depth == 2) current.clear();
            } else if (ch == ']') {
                if (depth == 2) rows.push_back(current);
                if (--depth == 0) break;
            } else if (ch >= '0' && ch <= '9') {
                std::size_t end = i;
                while (end < buf.size() && buf[end] >= '0' && buf[end] <= '9') ++end;
                current.push_back(std::stoi(buf.substr(i, end - i)) - 1);
                i = end - 1;
            }
        }
        if (rows.empty()) throw ParseError("no rows in structured Latin square");
    } else {
        std::istringstream in{std::string(text)};
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::istringstream ls(line);
            std::vector<Letter> row;
            std::string token;
            int col = 0;
            while (ls >> token) {
                ++col;
                try {
                    std::size_t used = 0;
                    const int v = std::stoi(token, &used);
                    if (used != token.size()) throw std::invalid_argument(token);
                    row.push_back(v - 1);  // entries are 1-based on disk
                } catch (const std::exception&) {
                    throw ParseError("line " + std::to_string(lineno) + ", column " +
                                     std::to_string(col) + ": invalid entry '" + token + "'");
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return validate(rows);
}

}  // namespace lsm
