#include "shortlab/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <complex>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "shortlab/errors.hpp"
#include "shortlab/parallel.hpp"
#include "shortlab/summation.hpp"

namespace shortlab::geo {

using ld = long double;
using cld = std::complex<long double>;

Mat2 Mat2::inverse() const { return {d, -b, -c, a}; }

Mat2 Mat2::normalized() const {
  // A product of unimodular matrices has det 1 up to rounding of order
  // eps * (|ad| + |bc|); rescaling by a det that is only noise would spread
  // that noise over every entry.
  const ld det_value = det();
  const ld noise = 64 * std::numeric_limits<ld>::epsilon() * (std::fabs(a * d) + std::fabs(b * c));
  if (std::fabs(det_value - 1) <= noise) return *this;
  const ld s = std::sqrt(std::fabs(det_value));
  return {a / s, b / s, c / s, d / s};
}

Mat2 FuchsianGroup::letter(std::uint8_t l) const {
  const auto g = generators.size();
  return l < g ? generators[l] : generators[l - g].inverse();
}

namespace {

constexpr ld kPi = std::numbers::pi_v<long double>;

Mat2 rotation(ld theta) {
  // Elliptic element rotating the upper half-plane by theta about i.
  const ld c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {c, s, -s, c};
}

double regular_covering_radius(int genus) {
  // Circumradius of the regular 4g-gon with angle sum 2 pi.
  const double t = 1.0 / std::tan(std::numbers::pi / (4.0 * genus));
  return std::acosh(t * t);
}

bool near_identity(const Mat2& m, double tol) {
  for (int sgn : {1, -1}) {
    if (std::fabs(m.a - sgn) <= tol && std::fabs(m.d - sgn) <= tol && std::fabs(m.b) <= tol &&
        std::fabs(m.c) <= tol)
      return true;
  }
  return false;
}

}  // namespace

void validate_group(const FuchsianGroup& group) {
  if (group.generators.empty()) throw ParameterError("group has no generators");
  if (group.generators.size() > 26) throw ParameterError("at most 26 generators are supported");
  for (std::size_t i = 0; i < group.generators.size(); ++i) {
    const auto& m = group.generators[i];
    if (std::fabs(m.det() - 1) > 1e-9)
      throw ParameterError("generator " + std::to_string(i + 1) + " has determinant != 1");
    if (!(std::fabs(m.trace()) > 2))
      throw ParameterError("generator " + std::to_string(i + 1) + " is not hyperbolic");
  }
  for (const auto& w : group.relation_words) {
    if (!near_identity(evaluate(group, w), 1e-9))
      throw ParameterError("relation " + format_word(w, static_cast<int>(group.generators.size())) +
                           " does not evaluate to the identity");
  }
}

FuchsianGroup bolza_group() {
  FuchsianGroup g;
  g.genus = 2;
  const ld half = std::acosh(1 + std::numbers::sqrt2_v<long double>);  // l/2
  const Mat2 T{std::exp(half), 0, 0, std::exp(-half)};
  for (int k = 0; k < 4; ++k) {
    const Mat2 R = rotation(k * kPi / 4);
    g.generators.push_back((R * T * R.inverse()).normalized());
  }
  // a0 a1^-1 a2 a3^-1 a0^-1 a1 a2^-1 a3
  g.relation_words.push_back({0, 5, 2, 7, 4, 1, 6, 3});
  g.covering_radius = regular_covering_radius(2);
  if (!near_identity(evaluate(g, g.relation_words[0]), 1e-9))
    throw std::logic_error("Bolza relation fails; generator construction is wrong");
  validate_group(g);
  return g;
}

FuchsianGroup load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open generator file " + path.string());
  FuchsianGroup g;
  std::vector<std::string> relations;
  double radius = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (first == "relation") {
      std::string w;
      if (!(ls >> w)) throw FormatError(where + "relation needs a word");
      relations.push_back(w);
      continue;
    }
    if (first == "covering_radius") {
      if (!(ls >> radius) || !(radius > 0)) throw FormatError(where + "bad covering radius");
      continue;
    }
    std::vector<long double> v;
    std::istringstream all(line);
    long double x;
    while (all >> x) v.push_back(x);
    if (!all.eof()) throw FormatError(where + "expected real numbers");
    if (v.size() != 4 && v.size() != 8)
      throw FormatError(where + "expected 4 reals (a b c d) or 8 (matrix and inverse), got " +
                        std::to_string(v.size()));
    Mat2 m{v[0], v[1], v[2], v[3]};
    if (std::fabs(m.det() - 1) > 1e-9) throw FormatError(where + "determinant is not 1");
    if (v.size() == 8) {
      const Mat2 inv{v[4], v[5], v[6], v[7]};
      if (!near_identity(m * inv, 1e-9)) throw FormatError(where + "second matrix is not the inverse");
    }
    g.generators.push_back(m.normalized());
  }
  if (g.generators.size() < 4 || g.generators.size() % 2 != 0)
    throw FormatError(path.string() + ": a closed surface group needs 2g >= 4 generators");
  g.genus = static_cast<int>(g.generators.size() / 2);
  for (const auto& r : relations)
    g.relation_words.push_back(parse_word(r, static_cast<int>(g.generators.size())));
  g.covering_radius = radius > 0 ? radius : regular_covering_radius(g.genus);
  validate_group(g);
  return g;
}

std::uint8_t inverse_letter(std::uint8_t l, int generators) {
  return static_cast<std::uint8_t>(l < generators ? l + generators : l - generators);
}

Word inverse_word(const Word& w, int generators) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l = inverse_letter(l, generators);
  return r;
}

Word free_reduce(const Word& w, int generators) {
  Word r;
  for (auto l : w) {
    if (!r.empty() && r.back() == inverse_letter(l, generators))
      r.pop_back();
    else
      r.push_back(l);
  }
  return r;
}

Word cyclic_reduce(const Word& w, int generators) {
  Word r = free_reduce(w, generators);
  std::size_t b = 0, e = r.size();
  while (e - b >= 2 && r[e - 1] == inverse_letter(r[b], generators)) {
    ++b;
    --e;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(b), r.begin() + static_cast<std::ptrdiff_t>(e));
}

namespace {

Word least_rotation(const Word& w) {
  Word best = w;
  Word rot = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace

Word canonical_word(const Word& w, int generators) {
  const Word r = cyclic_reduce(w, generators);
  if (r.empty()) return r;
  return std::min(least_rotation(r), least_rotation(inverse_word(r, generators)));
}

std::pair<Word, int> word_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)), static_cast<int>(n / p)};
  }
  return {w, 1};
}

std::string format_word(const Word& w, int generators) {
  std::string s;
  for (auto l : w)
    s += l < generators ? static_cast<char>('a' + l) : static_cast<char>('A' + (l - generators));
  return s;
}

Word parse_word(const std::string& s, int generators) {
  Word w;
  for (char ch : s) {
    int l;
    if (ch >= 'a' && ch <= 'z')
      l = ch - 'a';
    else if (ch >= 'A' && ch <= 'Z')
      l = ch - 'A' + generators;
    else
      throw FormatError("bad letter '" + std::string(1, ch) + "' in word " + s);
    if ((ch >= 'a' && ch - 'a' >= generators) || (ch >= 'A' && ch <= 'Z' && ch - 'A' >= generators))
      throw FormatError("letter '" + std::string(1, ch) + "' exceeds the generator count");
    w.push_back(static_cast<std::uint8_t>(l));
  }
  return w;
}

Mat2 evaluate(const FuchsianGroup& group, const Word& w) {
  Mat2 m;
  for (std::size_t i = 0; i < w.size(); ++i) {
    m = m * group.letter(w[i]);
    if ((i + 1) % 16 == 0) m = m.normalized();
  }
  return m.normalized();
}

double translation_length(long double trace) {
  return static_cast<double>(2 * std::acosh(std::fabs(trace) / 2));
}

// ---------------------------------------------------------------------------
// Conjugacy in the group, decided geometrically.

namespace {

cld act(const Mat2& m, cld z) { return (m.a * z + m.b) / (m.c * z + m.d); }

// cosh of the hyperbolic distance in the upper half-plane.
ld cosh_dist(cld z, cld w) {
  const ld dx = z.real() - w.real(), dy = z.imag() - w.imag();
  return 1 + (dx * dx + dy * dy) / (2 * z.imag() * w.imag());
}

const cld kBase(0, 1);

// Foot of the perpendicular from i onto the axis of hyperbolic g.
cld axis_foot(const Mat2& g) {
  const ld a = g.a, b = g.b, c = g.c, d = g.d;
  const ld scale = std::max({std::fabs(a), std::fabs(b), std::fabs(c), std::fabs(d)});
  if (std::fabs(c) <= 1e-15L * scale) {
    // Fixed points x0 and infinity: the axis is the vertical line Re z = x0.
    const ld x0 = b / (d - a);
    return {x0, std::sqrt(1 + x0 * x0)};
  }
  // c z^2 + (d - a) z - b = 0
  const ld disc = std::sqrt((d - a) * (d - a) + 4 * b * c);
  ld p1 = ((a - d) + disc) / (2 * c), p2 = ((a - d) - disc) / (2 * c);
  if (p1 < p2) std::swap(p1, p2);
  // M(z) = (z - p1) / (z - p2) has det p1 - p2 > 0 and sends the axis to i R+.
  const Mat2 M{1, -p1, 1, -p2};
  const cld w = act(M, kBase);
  const Mat2 Minv{-p2, p1, -1, 1};
  return act(Minv, cld(0, std::abs(w)));
}

struct PointKey {
  long long x, y;
  bool operator==(const PointKey&) const = default;
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    return std::hash<long long>()(k.x * 1000003LL ^ k.y);
  }
};

// Orbit points are stored in the unit disk, where distinct points of the
// orbit of i stay at least ~1e-6 apart for the radii used here.
cld to_disk(cld z) { return (z - kBase) / (z + kBase); }

}  // namespace

ConjugacyOracle::ConjugacyOracle(const FuchsianGroup& group, double max_length) : group_(&group) {
  const double rD = group.covering_radius;
  const ld radius = 2 * rD + max_length / 2 + 0.1;
  const ld explore = radius + rD;
  const ld cosh_radius = std::cosh(radius), cosh_explore = std::cosh(explore);

  constexpr ld kCell = 1e-9L;
  std::unordered_map<PointKey, std::size_t, PointKeyHash> seen;
  std::vector<Mat2> frontier{Mat2{}}, all{Mat2{}};
  auto key_of = [&](cld p) {
    const cld q = to_disk(p);
    return PointKey{std::llround(q.real() / kCell), std::llround(q.imag() / kCell)};
  };
  auto lookup = [&](cld p) {
    const PointKey k = key_of(p);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        if (seen.count({k.x + dx, k.y + dy})) return true;
    return false;
  };
  seen[key_of(kBase)] = 0;
  const int L = group.letters();
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const auto& e : frontier) {
      for (int l = 0; l < L; ++l) {
        const Mat2 f = (e * group.letter(static_cast<std::uint8_t>(l))).normalized();
        const cld p = act(f, kBase);
        if (cosh_dist(kBase, p) > cosh_explore) continue;
        if (lookup(p)) continue;
        seen[key_of(p)] = all.size();
        all.push_back(f);
        next.push_back(f);
      }
    }
    frontier.swap(next);
  }
  for (const auto& e : all)
    if (cosh_dist(kBase, act(e, kBase)) <= cosh_radius) ball_.push_back(e);
}

Mat2 ConjugacyOracle::reduce_axis(const Mat2& g) const {
  cld p = axis_foot(g);
  Mat2 acc;
  const int L = group_->letters();
  for (int guard = 0; guard < 10000; ++guard) {
    const ld here = cosh_dist(p, kBase);
    int best = -1;
    ld best_d = here;
    for (int l = 0; l < L; ++l) {
      const ld d = cosh_dist(p, act(group_->letter(static_cast<std::uint8_t>(l)), kBase));
      if (d < best_d * (1 - 1e-15L)) {
        best_d = d;
        best = l;
      }
    }
    if (best < 0) break;
    const Mat2 s = group_->letter(static_cast<std::uint8_t>(best));
    p = act(s.inverse(), p);
    acc = (acc * s).normalized();
  }
  return (acc.inverse() * g * acc).normalized();
}

bool ConjugacyOracle::conjugate(const Mat2& g, const Mat2& h) const {
  if (std::fabs(std::fabs(g.trace()) - std::fabs(h.trace())) > 1e-8L * std::fabs(g.trace()))
    return false;
  const Mat2 gr = reduce_axis(g), hr = reduce_axis(h);
  const Mat2 targets[2] = {hr, hr.inverse()};
  const ld scale = 1 + std::max({std::fabs(hr.a), std::fabs(hr.b), std::fabs(hr.c), std::fabs(hr.d)});
  const ld tol = 1e-7L * scale;
  for (const auto& e : ball_) {
    const Mat2 m = e * gr * e.inverse();
    for (const auto& t : targets) {
      for (int sgn : {1, -1}) {
        if (std::fabs(m.a - sgn * t.a) <= tol && std::fabs(m.b - sgn * t.b) <= tol &&
            std::fabs(m.c - sgn * t.c) <= tol && std::fabs(m.d - sgn * t.d) <= tol)
          return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

struct Candidate {
  Word word;
  long double trace;
  double length;
};

bool same_length(long double t1, long double t2) {
  return std::fabs(t1 - t2) <= 1e-9L * std::max<long double>(1, std::fabs(t1));
}

// Depth-first over freely reduced words whose letters are all >= the first
// one (a least rotation starts with its smallest letter).
void enumerate_stratum(const FuchsianGroup& group, int W, double length_max, std::uint8_t first,
                       std::vector<Candidate>& out, std::uint64_t& nodes) {
  const int g = static_cast<int>(group.generators.size());
  const int L = 2 * g;
  std::vector<Mat2> letters(L);
  for (int l = 0; l < L; ++l) letters[l] = group.letter(static_cast<std::uint8_t>(l));
  const long double trace_max = 2 * std::cosh(static_cast<long double>(length_max) / 2) * (1 + 1e-12L);

  Word w{first};
  std::vector<Mat2> prefix{letters[first]};
  std::vector<int> next_letter{static_cast<int>(first)};  // next child to try at each depth

  auto visit = [&] {
    ++nodes;
    const auto last = w.back();
    if (w.size() > 1 && last == inverse_letter(w[0], g)) return;  // not cyclically reduced
    const long double t = std::fabs(prefix.back().trace());
    if (!(t > 2 + 1e-12L) || t > trace_max) return;
    if (canonical_word(w, g) != w) return;
    const double len = translation_length(t);
    if (len <= length_max * (1 + 1e-12)) out.push_back({w, t, len});
  };
  visit();
  while (!w.empty()) {
    const std::size_t depth = w.size();
    int& l = next_letter.back();
    if (static_cast<int>(depth) >= W || l >= L) {
      w.pop_back();
      prefix.pop_back();
      next_letter.pop_back();
      continue;
    }
    const int cand = l++;
    if (cand == inverse_letter(w.back(), g)) continue;
    Mat2 m = prefix.back() * letters[cand];
    if ((depth + 1) % 16 == 0) m = m.normalized();
    w.push_back(static_cast<std::uint8_t>(cand));
    prefix.push_back(m);
    next_letter.push_back(static_cast<int>(first));
    visit();
  }
}

Mat2 power(const Mat2& m, int k) {
  Mat2 r;
  for (int i = 0; i < k; ++i) r = (r * m).normalized();
  return r;
}

}  // namespace

LengthSpectrum enumerate_classes(const FuchsianGroup& group, int W, double length_max) {
  if (W < 1) throw ParameterError("word cutoff W must be at least 1");
  if (!(length_max > 0)) throw ParameterError("length cutoff must be positive");
  const int g = static_cast<int>(group.generators.size());
  const int L = 2 * g;
  double budget = 0, layer = L;
  for (int k = 1; k <= W; ++k, layer *= (L - 1)) budget += layer;
  if (budget > static_cast<double>(kWordBudget))
    throw ResourceError("word enumeration up to length " + std::to_string(W) + " visits about " +
                        std::to_string(static_cast<long long>(budget)) +
                        " words; use a smaller W");

  std::vector<std::vector<Candidate>> strata(L);
  std::vector<std::uint64_t> counts(L, 0);
  parallel_chunks(L, 1, [&](std::size_t s, std::size_t, std::size_t) {
    enumerate_stratum(group, W, length_max, static_cast<std::uint8_t>(s), strata[s], counts[s]);
  });
  std::vector<Candidate> cand;
  LengthSpectrum spec;
  for (int s = 0; s < L; ++s) {
    cand.insert(cand.end(), strata[s].begin(), strata[s].end());
    spec.words_enumerated += counts[s];
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& x, const Candidate& y) {
    if (x.trace != y.trace) return x.trace < y.trace;
    if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
    return x.word < y.word;
  });

  const ConjugacyOracle oracle(group, length_max);
  struct Rep {
    Candidate c;
    Mat2 m;
  };
  std::vector<Rep> reps;
  for (std::size_t i = 0; i < cand.size();) {
    std::size_t j = i + 1;
    while (j < cand.size() && same_length(cand[j].trace, cand[i].trace)) ++j;
    // Within one length, keep the shortest (then least) word of each class.
    std::stable_sort(cand.begin() + static_cast<std::ptrdiff_t>(i),
                     cand.begin() + static_cast<std::ptrdiff_t>(j),
                     [](const Candidate& x, const Candidate& y) {
                       if (x.word.size() != y.word.size()) return x.word.size() < y.word.size();
                       return x.word < y.word;
                     });
    const std::size_t first_rep = reps.size();
    for (std::size_t k = i; k < j; ++k) {
      const Mat2 m = evaluate(group, cand[k].word);
      bool dup = false;
      for (std::size_t r = first_rep; r < reps.size() && !dup; ++r) dup = oracle.conjugate(m, reps[r].m);
      if (!dup) reps.push_back({cand[k], m});
    }
    i = j;
  }

  spec.length_cutoff = length_max;
  spec.word_cutoff = W;
  spec.stability_certified = true;
  for (const auto& r : reps) {
    GeodesicClass c;
    c.word = r.c.word;
    c.trace = static_cast<double>(r.c.trace);
    c.length = r.c.length;
    c.root = c.word;
    if (static_cast<int>(c.word.size()) == W) spec.stability_certified = false;
    spec.classes.push_back(c);
  }
  std::stable_sort(spec.classes.begin(), spec.classes.end(),
                   [](const GeodesicClass& x, const GeodesicClass& y) { return x.length < y.length; });

  // Proper powers: the word itself is periodic, or the class is conjugate to
  // the k-th power of a shorter primitive class.
  std::vector<Mat2> mats;
  for (const auto& c : spec.classes) mats.push_back(evaluate(group, c.word));
  for (std::size_t i = 0; i < spec.classes.size(); ++i) {
    auto& c = spec.classes[i];
    const auto [root, k] = word_root(c.word);
    if (k > 1) {
      c.primitive = false;
      c.power = k;
      c.root = root;
      continue;
    }
    for (std::size_t j = 0; j < i && c.primitive; ++j) {
      const auto& p = spec.classes[j];
      if (!p.primitive) continue;
      const double ratio = c.length / p.length;
      const int kk = static_cast<int>(std::lround(ratio));
      if (kk < 2 || std::fabs(ratio - kk) > 1e-9 * kk) continue;
      if (oracle.conjugate(power(mats[j], kk), mats[i])) {
        c.primitive = false;
        c.power = kk;
        c.root = p.word;
      }
    }
  }
  for (auto& c : spec.classes) {
    c.multiplicity = static_cast<int>(std::count_if(
        spec.classes.begin(), spec.classes.end(),
        [&](const GeodesicClass& o) { return same_length(o.trace, c.trace); }));
  }
  return spec;
}

namespace {

void require_certified(const LengthSpectrum& s, double x) {
  if (!s.stability_certified)
    throw RangeError("spectrum is not certified stable; raise the word cutoff W");
  if (x > 0 && std::log(x) > s.length_cutoff)
    throw RangeError("log x = " + std::to_string(std::log(x)) + " exceeds the length cutoff " +
                     std::to_string(s.length_cutoff));
}

}  // namespace

double psi_geodesic(const LengthSpectrum& spectrum, double x) {
  require_certified(spectrum, x);
  if (x <= 1) return 0;
  const double lx = std::log(x);
  CompensatedSum s;
  for (const auto& c : spectrum.classes)
    if (c.primitive) s.add(2 * c.length * std::floor(lx / c.length));
  return s.value();
}

double psi_short_interval(const LengthSpectrum& spectrum, double x, double H) {
  if (!(H > 0)) throw ParameterError("H must be positive");
  if (!(x >= 1)) throw ParameterError("x must be at least 1");
  require_certified(spectrum, x + H);
  const double A = std::log(x), B = std::log(x + H);
  CompensatedSum s;
  for (const auto& c : spectrum.classes) {
    if (!c.primitive) continue;
    // f(l) = 2 l #{n >= 1 : A/n < l <= B/n}
    std::int64_t hits = 0;
    for (std::int64_t n = 1; c.length * static_cast<double>(n) <= B; ++n)
      if (A < c.length * static_cast<double>(n)) ++hits;
    s.add(2 * c.length * static_cast<double>(hits));
  }
  return s.value();
}

std::uint64_t pi_geodesic(const LengthSpectrum& spectrum, double x) {
  require_certified(spectrum, x);
  if (x <= 1) return 0;
  const double lx = std::log(x);
  std::uint64_t n = 0;
  for (const auto& c : spectrum.classes)
    if (c.primitive && c.length <= lx) n += 2;
  return n;
}

}  // namespace shortlab::geo
