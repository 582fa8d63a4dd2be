#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "lsm/latin.hpp"

using namespace lsm;

namespace {

// Independent oracle: enumerate every Latin square of order n by plain
// backtracking with O(n) duplicate scans, no column masks, no fixed first
// column. Counts squares whose first column happens to be sorted.
struct BruteCounts {
    std::uint64_t all = 0;
    std::uint64_t natural_first_column = 0;
};

BruteCounts brute_force_counts(int n) {
    BruteCounts counts;
    std::vector<std::vector<Letter>> rows(n, std::vector<Letter>(n, -1));
    auto ok = [&](int r, int c, Letter a) {
        for (int cc = 0; cc < c; ++cc)
            if (rows[r][cc] == a) return false;
        for (int rr = 0; rr < r; ++rr)
            if (rows[rr][c] == a) return false;
        return true;
    };
    auto rec = [&](auto&& self, int cell) -> void {
        if (cell == n * n) {
            ++counts.all;
            bool natural = true;
            for (int r = 0; r < n; ++r)
                if (rows[r][0] != r) natural = false;
            if (natural) ++counts.natural_first_column;
            return;
        }
        const int r = cell / n, c = cell % n;
        for (Letter a = 0; a < n; ++a) {
            if (!ok(r, c, a)) continue;
            rows[r][c] = a;
            self(self, cell + 1);
            rows[r][c] = -1;
        }
    };
    rec(rec, 0);
    return counts;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

}  // namespace

TEST_CASE("validate accepts the displayed squares", "[latin]") {
    CHECK_NOTHROW(LatinSquare::validate({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}));
    CHECK_NOTHROW(non_cayley_6x6());
    CHECK(non_cayley_6x6().natural_first_column());
    CHECK(alternate_3x3().natural_first_column());
}

TEST_CASE("validate names the first violated constraint", "[latin]") {
    // column duplicate in the first column (1-based column 1)
    try {
        LatinSquare::validate({{0, 1}, {0, 1}});
        FAIL("expected a validation error");
    } catch (const LatinValidationError& e) {
        CHECK(e.diagnostic.kind == LatinDefect::ColumnDuplicate);
        CHECK(e.diagnostic.column == 1);
        CHECK(e.diagnostic.letter == 1);
    }

    try {
        LatinSquare::validate({{0, 0}, {1, 1}});
        FAIL("expected a validation error");
    } catch (const LatinValidationError& e) {
        CHECK(e.diagnostic.kind == LatinDefect::RowDuplicate);
        CHECK(e.diagnostic.row == 1);
    }

    CHECK_THROWS_AS(LatinSquare::validate({{0, 1}, {1}}), LatinValidationError);
    CHECK_THROWS_AS(LatinSquare::validate({{0, 2}, {2, 0}}), LatinValidationError);
    CHECK_THROWS_AS(LatinSquare::validate({}), LatinValidationError);

    try {
        LatinSquare::validate({{0, 2}, {2, 0}});
        FAIL("expected a validation error");
    } catch (const LatinValidationError& e) {
        CHECK(e.diagnostic.kind == LatinDefect::LetterOutOfRange);
        CHECK(e.diagnostic.row == 1);
        CHECK(e.diagnostic.column == 2);
    }
}

TEST_CASE("cayley table of Z/nZ", "[latin]") {
    const LatinSquare z3 = LatinSquare::cayley_zn(3);
    CHECK(z3.rows() == std::vector<std::vector<Letter>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    const LatinSquare z2 = LatinSquare::cayley_zn(2);
    CHECK(z2.rows() == std::vector<std::vector<Letter>>{{0, 1}, {1, 0}});
    CHECK(LatinSquare::cayley_zn(1).rows() == std::vector<std::vector<Letter>>{{0}});
    CHECK_THROWS_AS(LatinSquare::cayley_zn(0), std::invalid_argument);

    for (int n = 1; n <= 12; ++n) {
        const LatinSquare sq = LatinSquare::cayley_zn(n);
        CHECK_FALSE(LatinSquare::check(sq.rows()).has_value());
        CHECK(sq.natural_first_column());
    }
}

TEST_CASE("to_morphism maps letters to rows", "[latin]") {
    const Morphism ell = alternate_3x3().to_morphism();
    CHECK(format_word(ell.image(0), 1) == "132");
    CHECK(format_word(ell.image(1), 1) == "213");
    CHECK(format_word(ell.image(2), 1) == "321");

    const Morphism phi3 = LatinSquare::cayley_zn(3).to_morphism();
    CHECK(format_word(phi3.image(0), 0) == "012");
    CHECK(format_word(phi3.image(1), 0) == "120");
    CHECK(format_word(phi3.image(2), 0) == "201");

    const Morphism one = LatinSquare::cayley_zn(1).to_morphism();
    CHECK(one.image(0) == Word(1, {0}));

    // each image is a permutation of the alphabet
    for (int n = 2; n <= 6; ++n) {
        const Morphism m = LatinSquare::cayley_zn(n).to_morphism();
        for (Letter t = 0; t < n; ++t) {
            std::set<Letter> seen(m.image(t).letters.begin(), m.image(t).letters.end());
            CHECK(seen.size() == static_cast<std::size_t>(n));
        }
    }
}

TEST_CASE("natural square enumeration matches the brute-force oracle", "[latin][oracle]") {
    // counts computed by the unconstrained oracle, frozen: 1, 1, 2, 24, 1344
    const std::uint64_t expected[] = {0, 1, 1, 2, 24, 1344};
    for (int n = 1; n <= 5; ++n) {
        const BruteCounts oracle = brute_force_counts(n);
        CHECK(oracle.natural_first_column == expected[n]);
        CHECK(oracle.all == expected[n] * factorial(n));  // total = natural × n!
        CHECK(count_natural_squares(n) == expected[n]);
    }
}

TEST_CASE("enumerated squares are valid, natural, distinct, ordered", "[latin]") {
    for (int n : {3, 4}) {
        std::vector<NaturalLatinSquare> squares = NaturalSquareEnumerator::all(n);
        std::set<std::string> texts;
        for (const auto& sq : squares) {
            CHECK_FALSE(LatinSquare::check(sq.square().rows()).has_value());
            CHECK(sq.square().natural_first_column());
            texts.insert(sq.square().to_text());
        }
        CHECK(texts.size() == squares.size());
        // lexicographic row-major order
        std::vector<std::vector<std::vector<Letter>>> rows;
        for (const auto& sq : squares) rows.push_back(sq.square().rows());
        CHECK(std::is_sorted(rows.begin(), rows.end()));
    }

    // the two order-3 squares: the Z/3Z table and the displayed alternate
    const auto three = NaturalSquareEnumerator::all(3);
    REQUIRE(three.size() == 2);
    CHECK(three[0].square() == LatinSquare::cayley_zn(3));
    CHECK(three[1].square() == alternate_3x3());
}

TEST_CASE("associativity probe under the direct bordering", "[latin]") {
    for (int n = 1; n <= 8; ++n) CHECK(LatinSquare::cayley_zn(n).is_associative_quasigroup());

    // x∘y = x - y + 1 (mod 3) is not associative: frozen from the 27-triple scan
    CHECK_FALSE(alternate_3x3().is_associative_quasigroup());
    // frozen from the 216-triple scan
    CHECK_FALSE(non_cayley_6x6().is_associative_quasigroup());

    // independent exhaustive re-check of the probe on the interesting squares
    for (const LatinSquare& sq :
         {alternate_3x3(), non_cayley_6x6(), LatinSquare::cayley_zn(6)}) {
        const int n = sq.order();
        bool assoc = true;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    assoc = assoc && sq.at(sq.at(x, y), z) == sq.at(x, sq.at(y, z));
        CHECK(assoc == sq.is_associative_quasigroup());
    }
}

TEST_CASE("sorting rows by first letter yields a natural square", "[latin][property]") {
    std::mt19937 rng(20240814);
    for (const auto& natural : NaturalSquareEnumerator::all(4)) {
        auto rows = natural.square().rows();
        std::shuffle(rows.begin(), rows.end(), rng);
        const LatinSquare shuffled = LatinSquare::validate(rows);  // still Latin
        auto sorted_rows = shuffled.rows();
        std::sort(sorted_rows.begin(), sorted_rows.end(),
                  [](const auto& a, const auto& b) { return a[0] < b[0]; });
        CHECK_NOTHROW(NaturalLatinSquare(LatinSquare::validate(sorted_rows)));
    }
}

TEST_CASE("natural squares reject unsorted first columns", "[latin]") {
    CHECK_THROWS_AS(NaturalLatinSquare(LatinSquare::validate({{1, 0}, {0, 1}})),
                    std::invalid_argument);
}

TEST_CASE("square text formats round-trip", "[latin][io]") {
    const LatinSquare sq = alternate_3x3();
    CHECK(sq.to_text() == "1 3 2\n2 1 3\n3 2 1\n");
    CHECK(LatinSquare::parse(sq.to_text()) == sq);
    CHECK(LatinSquare::parse("{\"order\": 3, \"rows\": [[1,3,2],[2,1,3],[3,2,1]]}") == sq);

    CHECK_THROWS_AS(LatinSquare::parse(""), ParseError);
    CHECK_THROWS_AS(LatinSquare::parse("1 x\n2 1\n"), ParseError);
    try {
        LatinSquare::parse("1 2\n2 x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2, column 2") != std::string::npos);
    }
    // parses but is not Latin
    CHECK_THROWS_AS(LatinSquare::parse("1 2\n1 2\n"), LatinValidationError);
}
