#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace shortlab::geo {

// 2x2 real matrix, row-major (a b; c d), in extended precision.
struct Mat2 {
  long double a = 1, b = 0, c = 0, d = 1;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  long double trace() const { return a + d; }
  long double det() const { return a * d - b * c; }
  Mat2 inverse() const;  // assumes det = 1
  // Rescale to determinant 1.
  Mat2 normalized() const;
};

// Letters 0..g-1 are generators, g..2g-1 their inverses.
using Word = std::vector<std::uint8_t>;

struct FuchsianGroup {
  std::vector<Mat2> generators;
  std::vector<Word> relation_words;
  int genus = 0;
  // Distance from i to the farthest point of its Dirichlet domain; bounds the
  // conjugator search. Filled in by the constructors.
  double covering_radius = 0;

  int letters() const { return 2 * static_cast<int>(generators.size()); }
  Mat2 letter(std::uint8_t l) const;
};

FuchsianGroup bolza_group();
// One generator per line as four reals a b c d (row-major), or eight reals
// giving a generator followed by its inverse. Lines starting with "relation"
// list a relation word in letter notation. '#' starts a comment.
FuchsianGroup load_group(const std::filesystem::path& path);
void validate_group(const FuchsianGroup& group);

std::uint8_t inverse_letter(std::uint8_t l, int generators);
Word inverse_word(const Word& w, int generators);
Word free_reduce(const Word& w, int generators);
Word cyclic_reduce(const Word& w, int generators);
// Least rotation of the cyclic reduction of w or of its inverse.
Word canonical_word(const Word& w, int generators);
// Smallest root u and exponent k with w = u^k.
std::pair<Word, int> word_root(const Word& w);

std::string format_word(const Word& w, int generators);
Word parse_word(const std::string& s, int generators);

Mat2 evaluate(const FuchsianGroup& group, const Word& w);
double translation_length(long double trace);

// True when g and h are conjugate in the group up to inversion (unoriented),
// as elements of PSL(2, R).
class ConjugacyOracle {
 public:
  ConjugacyOracle(const FuchsianGroup& group, double max_length);
  bool conjugate(const Mat2& g, const Mat2& h) const;
  std::size_t ball_size() const { return ball_.size(); }

 private:
  Mat2 reduce_axis(const Mat2& g) const;
  const FuchsianGroup* group_;
  std::vector<Mat2> ball_;
};

struct GeodesicClass {
  Word word;
  double trace = 0;  // |trace|
  double length = 0;
  bool primitive = true;
  int power = 1;
  Word root;
  int multiplicity = 1;  // classes sharing this length
};

struct LengthSpectrum {
  std::vector<GeodesicClass> classes;
  double length_cutoff = 0;
  int word_cutoff = 0;
  bool stability_certified = false;
  std::uint64_t words_enumerated = 0;
};

constexpr std::uint64_t kWordBudget = 1'000'000'000ULL;

LengthSpectrum enumerate_classes(const FuchsianGroup& group, int W, double length_max);

double psi_geodesic(const LengthSpectrum& spectrum, double x);
double psi_short_interval(const LengthSpectrum& spectrum, double x, double H);
std::uint64_t pi_geodesic(const LengthSpectrum& spectrum, double x);

}  // namespace shortlab::geo
