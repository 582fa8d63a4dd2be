#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "lsm/morphism.hpp"
#include "lsm/word.hpp"

using namespace lsm;

namespace {

Morphism thue_morse() {
    return Morphism(2, {Word(2, {0, 1}), Word(2, {1, 0})});
}

Morphism paper_3x3_morphism() {
    // rows 132 / 213 / 321, stored 0-based
    return Morphism(3, {Word(3, {0, 2, 1}), Word(3, {1, 0, 2}), Word(3, {2, 1, 0})});
}

Word word_from_digits(int n, const std::string& digits, int base) {
    Word w(n);
    for (char c : digits) w.push_back(c - '0' - base);
    return w;
}

Morphism random_morphism(std::mt19937& rng, int n, int max_image) {
    std::uniform_int_distribution<int> len(1, max_image);
    std::uniform_int_distribution<Letter> letter(0, n - 1);
    std::vector<Word> images;
    for (int t = 0; t < n; ++t) {
        Word img(n);
        const int l = len(rng);
        for (int i = 0; i < l; ++i) img.push_back(letter(rng));
        images.push_back(std::move(img));
    }
    return Morphism(n, std::move(images));
}

Word random_word(std::mt19937& rng, int n, std::size_t length) {
    std::uniform_int_distribution<Letter> letter(0, n - 1);
    Word w(n);
    for (std::size_t i = 0; i < length; ++i) w.push_back(letter(rng));
    return w;
}

const std::string kThueMorse32 = "01101001100101101001011001101001";

}  // namespace

TEST_CASE("apply expands letter by letter", "[words]") {
    const Morphism mu = thue_morse();

    CHECK(mu.apply(word_from_digits(2, "0", 0)) == word_from_digits(2, "01", 0));
    CHECK(mu.apply(word_from_digits(2, "0110", 0)) == word_from_digits(2, "01101001", 0));

    const Morphism id = Morphism::identity(5);
    const Word w(5, {0, 3, 4, 2, 2, 1});
    CHECK(id.apply(w) == w);

    CHECK(mu.apply(Word(2)).empty());
}

TEST_CASE("apply rejects letters outside the alphabet", "[words]") {
    const Morphism mu = thue_morse();
    CHECK_THROWS_AS(mu.apply(Word(3, {0, 2})), AlphabetError);
    CHECK_THROWS_AS(mu.image(2), AlphabetError);
    CHECK_THROWS_AS(mu.image(-1), AlphabetError);
}

TEST_CASE("morphism construction validates images", "[words]") {
    CHECK_THROWS_AS(Morphism(2, {Word(2, {0, 1})}), AlphabetError);
    CHECK_THROWS_AS(Morphism(2, {Word(2, {0, 1}), Word(2)}), AlphabetError);
    CHECK_THROWS_AS(Morphism(2, {Word(2, {0, 2}), Word(2, {1})}), AlphabetError);
}

TEST_CASE("iterate reproduces the displayed powers", "[words]") {
    const Morphism mu = thue_morse();
    CHECK(mu.iterate(0, 0) == word_from_digits(2, "0", 0));
    CHECK(mu.iterate(0, 1) == word_from_digits(2, "01", 0));
    CHECK(mu.iterate(0, 2) == word_from_digits(2, "0110", 0));
    CHECK(mu.iterate(0, 3) == word_from_digits(2, "01101001", 0));

    const Morphism ell = paper_3x3_morphism();
    CHECK(ell.iterate(0, 1) == word_from_digits(3, "132", 1));
    CHECK(format_word(ell.iterate(0, 2), 1) == "132321213");
}

TEST_CASE("morphism identity h(uv) = h(u)h(v)", "[words][property]") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Morphism m = random_morphism(rng, n, 4);
        const Word u = random_word(rng, n, rng() % 20);
        const Word v = random_word(rng, n, rng() % 20);
        Word uv = u;
        uv.append(v);
        Word expect = m.apply(u);
        expect.append(m.apply(v));
        CHECK(m.apply(uv) == expect);
    }
}

TEST_CASE("iteration coherence m^{k+1} = m ∘ m^k", "[words][property]") {
    std::mt19937 rng(20240812);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const Morphism m = random_morphism(rng, n, 3);
        const Letter seed = static_cast<Letter>(rng() % n);
        for (int k = 0; k < 5; ++k)
            CHECK(m.iterate(seed, k + 1) == m.apply(m.iterate(seed, k)));
    }
}

TEST_CASE("fixed point stream matches the displayed prefixes", "[words]") {
    CHECK(format_word(fixed_point_prefix(paper_3x3_morphism(), 0, 18), 1) ==
          "132321213321213132");
    CHECK(format_word(fixed_point_prefix(thue_morse(), 0, 32), 0) == kThueMorse32);
}

TEST_CASE("stream agrees with iterate up to depth 6", "[words][property]") {
    std::mt19937 rng(20240813);
    std::vector<Morphism> morphisms = {thue_morse(), paper_3x3_morphism()};
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        Morphism m = random_morphism(rng, n, 3);
        // force prolongability on letter 0
        std::vector<Word> images;
        for (Letter t = 0; t < n; ++t) images.push_back(m.image(t));
        if (images[0].size() < 2) images[0].push_back(static_cast<Letter>(rng() % n));
        images[0].letters[0] = 0;
        morphisms.emplace_back(n, std::move(images));
    }
    for (const Morphism& m : morphisms) {
        for (int k = 0; k <= 6; ++k) {
            const Word iter = m.iterate(0, k);
            if (iter.size() > 100000) break;
            CHECK(fixed_point_prefix(m, 0, iter.size()) == iter);
        }
    }
}

TEST_CASE("finite fixed-point property: h(prefix) extends the prefix", "[words][property]") {
    for (const Morphism& m : {thue_morse(), paper_3x3_morphism()}) {
        for (std::size_t len : {1u, 7u, 50u, 333u}) {
            const Word prefix = fixed_point_prefix(m, 0, len);
            const Word image = m.apply(prefix);
            REQUIRE(image.size() >= len);
            CHECK(fixed_point_prefix(m, 0, image.size()) == image);
        }
    }
}

TEST_CASE("streams require prolongable seeds", "[words]") {
    // image of the seed must start with the seed
    const Morphism shift(2, {Word(2, {1, 0}), Word(2, {0, 1})});
    CHECK_THROWS_AS(FixedPointStream(shift, 0), ProlongabilityError);
    // one-letter image: the 1×1 table
    const Morphism unit(1, {Word(1, {0})});
    CHECK_THROWS_AS(FixedPointStream(unit, 0), ProlongabilityError);
    CHECK_THROWS_AS(FixedPointStream(thue_morse(), 5), AlphabetError);
}

TEST_CASE("take continues from the current position", "[words]") {
    FixedPointStream stream(thue_morse(), 0);
    Word first = stream.take(10);
    Word rest = stream.take(22);
    first.append(rest);
    CHECK(format_word(first, 0) == kThueMorse32);
    CHECK(stream.position() == 32);
}

TEST_CASE("iterate length is predicted and guarded", "[words]") {
    const Morphism mu = thue_morse();
    CHECK(mu.predicted_iterate_length(0, 10) == 1024);
    CHECK(mu.predicted_iterate_length(0, 62) == std::uint64_t{1} << 62);
    CHECK_THROWS_AS(mu.predicted_iterate_length(0, 63), LengthOverflowError);
    CHECK_THROWS_AS(mu.iterate(0, 100), LengthOverflowError);
}

TEST_CASE("morphism text format round-trips", "[words][io]") {
    const Morphism ell = paper_3x3_morphism();
    const std::string text = ell.to_text();
    CHECK(text == "1 3 2\n2 1 3\n3 2 1\n");
    CHECK(Morphism::parse(text) == ell);

    CHECK_THROWS_AS(Morphism::parse(""), ParseError);
    CHECK_THROWS_AS(Morphism::parse("1 4\n2 1\n"), ParseError);  // letter beyond alphabet
}

TEST_CASE("word parsing and formatting", "[words][io]") {
    CHECK(format_word(parse_word("132321", 1), 1) == "132321");
    CHECK(parse_word("0110").alphabet_size == 2);   // token 0 present: 0-based
    CHECK(parse_word("111").alphabet_size == 1);    // no zero: 1-based
    CHECK(parse_word("1 11 2", 1).letters == std::vector<Letter>{0, 10, 1});
    CHECK(format_word(Word(12, {0, 10, 1}), 1) == "1 11 2");
    CHECK(format_word(Word(12, {0, 10, 1}), 1, ",") == "1,11,2");
    CHECK_THROWS_AS(parse_word("1a2"), ParseError);
    CHECK_THROWS_AS(parse_word("1 a 2"), ParseError);
    CHECK_THROWS_AS(parse_word("0 1", 1), ParseError);  // 0 is not a 1-based letter
}
