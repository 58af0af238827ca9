#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "geodesic_oracles.hpp"
#include "shortlab/errors.hpp"
#include "shortlab/geodesics.hpp"

using namespace shortlab;
using namespace shortlab::geo;
namespace fs = std::filesystem;

namespace {

const double kSystole = 2 * std::acosh(1 + std::sqrt(2.0));

const FuchsianGroup& bolza() {
  static const FuchsianGroup g = bolza_group();
  return g;
}

const LengthSpectrum& spectrum8() {
  static const LengthSpectrum s = enumerate_classes(bolza(), 8, 6);
  return s;
}

Word random_word(std::mt19937_64& rng, int len, int g) {
  std::uniform_int_distribution<int> L(0, 2 * g - 1);
  Word w;
  while (static_cast<int>(w.size()) < len) {
    const auto l = static_cast<std::uint8_t>(L(rng));
    if (!w.empty() && l == inverse_letter(w.back(), g)) continue;
    w.push_back(l);
  }
  return w;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

std::string matrix_line(const Mat2& m) {
  std::ostringstream os;
  os.precision(21);
  os << m.a << ' ' << m.b << ' ' << m.c << ' ' << m.d;
  return os.str();
}

}  // namespace

TEST_CASE("Bolza group") {
  const auto& G = bolza();
  CHECK(G.genus == 2);
  REQUIRE(G.generators.size() == 4);
  for (const auto& m : G.generators) {
    CHECK(std::fabs(static_cast<double>(m.trace()) - 2 * (1 + std::sqrt(2.0))) <= 1e-9);
    CHECK(std::fabs(static_cast<double>(m.det()) - 1) <= 1e-15);
  }
  CHECK(std::fabs(translation_length(G.generators[0].trace()) - kSystole) <= 1e-12);
  CHECK(std::fabs(translation_length(G.generators[0].trace()) - 3.0571425) <= 1e-6);
  REQUIRE(G.relation_words.size() == 1);
  const Mat2 r = evaluate(G, G.relation_words[0]);
  CHECK(oracle::matrices_equal_pm(r, Mat2{}, 1e-9L));
  CHECK(format_word(G.relation_words[0], 4) == "aBcDAbCd");
  CHECK_NOTHROW(validate_group(G));
}

TEST_CASE("word utilities") {
  const int g = 4;
  CHECK(format_word(parse_word("abAB", g), g) == "abAB");
  CHECK(free_reduce(parse_word("abBa", g), g) == parse_word("aa", g));
  CHECK(cyclic_reduce(parse_word("bacB", g), g) == parse_word("ac", g));
  CHECK(canonical_word(parse_word("ca", g), g) == parse_word("ac", g));
  // Generators sort before inverses, so "ab" and its inverse "BA" both give "ab".
  CHECK(canonical_word(parse_word("ab", g), g) == parse_word("ab", g));
  CHECK(canonical_word(parse_word("BA", g), g) == parse_word("ab", g));
  CHECK(canonical_word(parse_word("Ab", g), g) == parse_word("aB", g));
  const auto [root, k] = word_root(parse_word("abcabcabc", g));
  CHECK(root == parse_word("abc", g));
  CHECK(k == 3);
  CHECK(word_root(parse_word("abca", g)).second == 1);
  CHECK_THROWS_AS(parse_word("a1", g), FormatError);
  CHECK_THROWS_AS(parse_word("e", g), FormatError);
}

TEST_CASE("W = 1 gives four systole classes") {
  const auto s = enumerate_classes(bolza(), 1, 4);
  REQUIRE(s.classes.size() == 4);
  for (const auto& c : s.classes) {
    CHECK(std::fabs(c.length - kSystole) <= 1e-9);
    CHECK(c.primitive);
    CHECK(c.multiplicity == 4);
  }
  CHECK(s.words_enumerated == 8);
}

TEST_CASE("systole classes against the free-group enumerator") {
  // Free-group classes over-count: some are conjugate only through the
  // surface relation. Each must be conjugate, by a short conjugator found by
  // brute force, to exactly one of the group classes.
  const auto s = enumerate_classes(bolza(), 3, 3.1);
  const auto ref = oracle::free_classes(bolza(), 3, 3.1);
  CHECK(s.classes.size() == 12);
  CHECK(ref.size() >= s.classes.size());
  for (const auto& c : s.classes) CHECK(std::fabs(c.length - kSystole) <= 1e-9);
  for (const auto& [w, len] : ref) {
    int matches = 0;
    for (const auto& c : s.classes) matches += oracle::conjugate_by_search(bolza(), w, c.word, 3);
    CHECK(matches == 1);
  }
}

TEST_CASE("Bolza low spectrum") {
  const auto& s = spectrum8();
  CHECK(s.stability_certified);
  std::vector<std::pair<double, int>> levels;
  for (const auto& c : s.classes)
    if (levels.empty() || std::fabs(c.length - levels.back().first) > 1e-9)
      levels.emplace_back(c.length, c.multiplicity);
  REQUIRE(levels.size() >= 3);
  CHECK(levels[0].first == doctest::Approx(kSystole).epsilon(1e-12));
  CHECK(levels[0].second == 12);
  // 2 acosh(3 + 2 sqrt 2) and 2 acosh(5 + 3 sqrt 2)
  CHECK(levels[1].first == doctest::Approx(2 * std::acosh(3 + 2 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(levels[1].second == 12);
  CHECK(levels[2].first == doctest::Approx(5.828070775).epsilon(1e-9));
  CHECK(levels[2].second == 24);
  for (std::size_t i = 1; i < s.classes.size(); ++i)
    CHECK(s.classes[i - 1].length <= s.classes[i].length);
}

TEST_CASE("distinct representatives are not conjugate by short words") {
  const auto s = enumerate_classes(bolza(), 4, 5);
  for (std::size_t i = 0; i < s.classes.size(); ++i)
    for (std::size_t j = i + 1; j < s.classes.size(); ++j) {
      if (std::fabs(s.classes[i].length - s.classes[j].length) > 1e-9) continue;
      CHECK_FALSE(oracle::conjugate_by_search(bolza(), s.classes[i].word, s.classes[j].word, 3));
    }
}

TEST_CASE("proper powers") {
  const auto s = enumerate_classes(bolza(), 6, 6.2);
  bool saw_square = false;
  for (const auto& c : s.classes) {
    if (c.power == 1) continue;
    CHECK_FALSE(c.primitive);
    const double root_length = translation_length(evaluate(bolza(), c.root).trace());
    CHECK(std::fabs(c.length - c.power * root_length) <= 1e-9);
    if (c.power == 2 && c.root.size() == 1) {
      CHECK(c.word == concat({c.root, c.root}));
      saw_square = true;
    }
  }
  CHECK(saw_square);
}

TEST_CASE("conjugation, inversion and trace invariance") {
  const auto& G = bolza();
  const ConjugacyOracle conj(G, 8);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> len(1, 4);
  for (int i = 0; i < 100; ++i) {
    const Word w = cyclic_reduce(random_word(rng, len(rng), 4), 4);
    if (w.empty()) continue;
    const Word s = random_word(rng, len(rng), 4);
    const Word c = free_reduce(concat({s, w, inverse_word(s, 4)}), 4);
    CHECK(canonical_word(c, 4) == canonical_word(w, 4));
    CHECK(canonical_word(inverse_word(w, 4), 4) == canonical_word(w, 4));
    const Mat2 mw = evaluate(G, w), mc = evaluate(G, c);
    CHECK(std::fabs(static_cast<double>(std::fabs(mw.trace()) - std::fabs(mc.trace()))) <= 1e-9);
    if (std::fabs(mw.trace()) > 2 && translation_length(mw.trace()) <= 8) {
      CHECK(conj.conjugate(mw, mc));
      CHECK(conj.conjugate(mw, mw.inverse()));
    }
  }
}

TEST_CASE("power law") {
  const auto& s = spectrum8();
  int tested = 0;
  for (const auto& c : s.classes) {
    if (!c.primitive || tested == 50) continue;
    ++tested;
    Word w;
    for (int k = 1; k <= 5; ++k) {
      w = concat({w, c.word});
      const double l = translation_length(evaluate(bolza(), w).trace());
      CHECK(std::fabs(l - k * c.length) <= 1e-9 * k);
    }
  }
  CHECK(tested >= 40);
}

TEST_CASE("spectrum stability between W and W + 1") {
  const auto a = enumerate_classes(bolza(), 7, 5);
  const auto b = enumerate_classes(bolza(), 8, 5);
  CHECK(a.stability_certified);
  CHECK(b.stability_certified);
  REQUIRE(a.classes.size() == b.classes.size());
  for (std::size_t i = 0; i < a.classes.size(); ++i) {
    CHECK(a.classes[i].length == doctest::Approx(b.classes[i].length).epsilon(1e-12));
    CHECK(a.classes[i].multiplicity == b.classes[i].multiplicity);
  }
  // Too short a word cutoff leaves the 4.90 level incomplete.
  CHECK_FALSE(enumerate_classes(bolza(), 2, 5).stability_certified);
}

TEST_CASE("prime geodesic counting") {
  const auto& s = spectrum8();
  CHECK(psi_geodesic(s, std::exp(3.0)) == 0);
  CHECK(pi_geodesic(s, std::exp(3.0)) == 0);
  CHECK(psi_geodesic(s, std::exp(3.06)) == doctest::Approx(2 * 12 * kSystole).epsilon(1e-12));
  CHECK(pi_geodesic(s, std::exp(3.06)) == 24);
  CHECK(psi_short_interval(s, std::exp(3.0), 1) == 0);
  CHECK(psi_short_interval(s, std::exp(3.0), std::exp(3.06) - std::exp(3.0)) ==
        doctest::Approx(2 * 12 * kSystole).epsilon(1e-12));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> LX(0, 5.9), LH(-3, 5.8);
  for (int i = 0; i < 100; ++i) {
    const double x = std::exp(LX(rng));
    const double H = std::min(std::exp(LH(rng)), std::exp(6.0) - x);
    const double d = psi_geodesic(s, x + H) - psi_geodesic(s, x);
    CHECK(std::fabs(psi_short_interval(s, x, H) - d) <= 1e-9);
  }
  std::uint64_t prev = 0;
  for (double lx = 0; lx <= 6; lx += 0.01) {
    const auto p = pi_geodesic(s, std::exp(lx));
    CHECK(p >= prev);
    prev = p;
  }

  CHECK_THROWS_AS(psi_geodesic(s, std::exp(6.5)), RangeError);
  CHECK_THROWS_AS(psi_short_interval(s, std::exp(5.9), std::exp(6.1)), RangeError);
  const auto loose = enumerate_classes(bolza(), 2, 5);
  CHECK_THROWS_AS(pi_geodesic(loose, 10), RangeError);
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_classes(bolza(), 12, 6), ResourceError);
  CHECK_THROWS_AS(enumerate_classes(bolza(), 0, 6), ParameterError);
  CHECK_THROWS_AS(enumerate_classes(bolza(), 3, 0), ParameterError);
}

TEST_CASE("group files") {
  const auto& G = bolza();
  std::string four = "# Bolza, one generator per line\n";
  std::string eight;
  for (const auto& m : G.generators) {
    four += matrix_line(m) + "\n";
    eight += matrix_line(m) + " " + matrix_line(m.inverse()) + "\n";
  }
  four += "relation aBcDAbCd\n";
  const auto g4 = load_group(write_temp("g4.txt", four));
  CHECK(g4.genus == 2);
  CHECK(g4.relation_words.size() == 1);
  const auto g8 = load_group(write_temp("g8.txt", eight));
  CHECK(g8.generators.size() == 4);
  const auto s = enumerate_classes(g4, 3, 3.1);
  CHECK(s.classes.size() == enumerate_classes(G, 3, 3.1).classes.size());

  CHECK_THROWS_AS(load_group(write_temp("g1.txt", "2 0 0 0.5\n")), FormatError);
  CHECK_THROWS_AS(load_group(write_temp("gd.txt", "2 0 0 1\n1 0 0 1\n")), FormatError);
  CHECK_THROWS_AS(load_group(write_temp("gx.txt", "1 2 x 4\n")), FormatError);
  CHECK_THROWS_AS(load_group(write_temp("g5.txt", "1 0 0 1 2\n")), FormatError);
  CHECK_THROWS_AS(load_group(fs::temp_directory_path() / "no_such_group.txt"), FormatError);
  // Elliptic generators are rejected by validation.
  CHECK_THROWS_AS(load_group(write_temp("ge.txt", "0 1 -1 0\n0 1 -1 0\n0 1 -1 0\n0 1 -1 0\n")),
                  ParameterError);
  CHECK_THROWS_AS(load_group(write_temp("gr.txt", four + "relation aa\n")), ParameterError);
}
