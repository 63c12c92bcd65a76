// Copyright 2026 The mcurve Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <map>
#include <set>

#include "automaton.hpp"
#include "orbits.hpp"
#include "doctest.h"
#include "error.hpp"
#include "freegroup.hpp"

namespace mcurve {
namespace {

using Letters = std::vector<int>;

Letters Reduce(const Letters& w) {
  Letters out;
  for (int c : w) {
    if (!out.empty() && out.back() == (c ^ 1)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Letters Word(const char* text) {
  Letters out;
  for (const char* p = text; *p; ++p) out.push_back(*p >= 'a' ? 2 * (*p - 'a') : 2 * (*p - 'A') + 1);
  return Reduce(out);
}

Letters Concat(const Letters& x, const Letters& y) {
  Letters z = x;
  z.insert(z.end(), y.begin(), y.end());
  return Reduce(z);
}

// Plain breadth-first search of the Cayley graph up to a radius.
std::map<Letters, int> CayleyBall(const std::vector<Letters>& gens, int radius) {
  std::map<Letters, int> dist{{Letters{}, 0}};
  std::vector<Letters> frontier{Letters{}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Letters> next;
    for (const auto& w : frontier) {
      for (const auto& s : gens) {
        Letters v = Concat(w, s);
        if (dist.emplace(v, r).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

std::vector<Letters> SymmetricSet(std::initializer_list<const char*> words) {
  std::vector<Letters> out;
  for (const char* w : words) {
    Letters x = Word(w);
    Letters inv;
    for (auto it = x.rbegin(); it != x.rend(); ++it) inv.push_back(*it ^ 1);
    out.push_back(x);
    out.push_back(inv);
  }
  return out;
}

Letters CyclicCore(Letters w) {
  w = Reduce(w);
  while (w.size() >= 2 && w.front() == (w.back() ^ 1)) w = Letters(w.begin() + 1, w.end() - 1);
  return w;
}

// Translation length for {a, b, ab}: each cyclic occurrence of ab or BA
// saves one letter.
long TranslationByFormula(const Letters& g) {
  Letters w = CyclicCore(g);
  const std::size_t n = w.size();
  if (n == 0) return 0;
  long saved = 0;
  if (n >= 2) {
    // Greedy covering of a cyclic word by ab / BA blocks: blocks never
    // overlap because ab and BA share no letter at matching positions.
    for (std::size_t i = 0; i < n; ++i) {
      int x = w[i], y = w[(i + 1) % n];
      if ((x == 0 && y == 2) || (x == 3 && y == 1)) ++saved;
    }
  }
  return static_cast<long>(n) - saved;
}

Letters MinRotation(const Letters& w) {
  Letters best = w;
  for (std::size_t r = 1; r < w.size(); ++r) {
    Letters x(w.begin() + static_cast<long>(r), w.end());
    x.insert(x.end(), w.begin(), w.begin() + static_cast<long>(r));
    best = std::min(best, x);
  }
  return best;
}

// All cyclically reduced words of a given length in rank two.
void ForEachCyclicallyReduced(int n, const std::function<void(const Letters&)>& fn) {
  Letters w;
  std::function<void()> rec = [&] {
    if (static_cast<int>(w.size()) == n) {
      if (n == 1 || w.back() != (w.front() ^ 1)) fn(w);
      return;
    }
    for (int c = 0; c < 4; ++c) {
      if (!w.empty() && c == (w.back() ^ 1)) continue;
      w.push_back(c);
      rec();
      w.pop_back();
    }
  };
  rec();
}

GenSet SStar() { return GenSet::Parse("a,b,ab", 2); }

TEST_SUITE("freegroup") {

TEST_CASE("words reduce, invert and rotate") {
  FreeWord w = FreeWord::Parse("abBA");
  CHECK(w.empty());
  FreeWord x = FreeWord::Parse("aabA");
  CHECK(x.length() == 4);
  CHECK_FALSE(x.IsCyclicallyReduced());
  FreeWord conj;
  CHECK(x.CyclicCore(&conj).ToString() == "ab");
  CHECK(conj * x.CyclicCore() * conj.Inverse() == x);
  CHECK((x * x.Inverse()).empty());
  CHECK(x.Power(3).length() == 8);
  CHECK(CanonicalRotation(FreeWord::Parse("ba")).ToString() == "ab");
  CHECK(FreeWord::Parse("a") < FreeWord::Parse("b"));
  CHECK(FreeWord::Parse("b") < FreeWord::Parse("aa"));
  CHECK_THROWS_AS(FreeWord::Parse("a1"), Error);
}

TEST_CASE("generating sets of the free group") {
  auto words = [](std::initializer_list<const char*> ws) {
    std::vector<FreeWord> out;
    for (const char* w : ws) out.push_back(FreeWord::Parse(w));
    return out;
  };
  CHECK(GeneratesFreeGroup(2, words({"a", "b", "ab"})));
  CHECK(GeneratesFreeGroup(2, words({"ab", "b"})));
  CHECK(GeneratesFreeGroup(2, words({"aba", "ab"})));
  CHECK_FALSE(GeneratesFreeGroup(2, words({"a", "bb"})));
  CHECK_FALSE(GeneratesFreeGroup(2, words({"a", "baB"})));
  CHECK_FALSE(GeneratesFreeGroup(2, words({"aa", "ab"})));
  CHECK(GeneratesFreeGroup(3, words({"a", "b", "c", "abc"})));
  CHECK_THROWS_AS(GenSet::Parse("a,bb", 2), Error);
}

TEST_CASE("word length agrees with a plain Cayley graph search") {
  GenSet gens = SStar();
  auto ball = CayleyBall(SymmetricSet({"a", "b", "ab"}), 5);
  int checked = 0;
  for (const auto& [w, d] : ball) {
    if (w.size() > 6) continue;
    CHECK(WordLength(FreeWord::FromLetters(w), gens) == d);
    ++checked;
  }
  CHECK(checked > 1000);
  // Longer standard words that are short in the larger set.
  auto big = CayleyBall(SymmetricSet({"a", "b", "ab"}), 7);
  for (const char* text : {"abababababab", "BABABAbaBABA", "abaBabAbab"}) {
    FreeWord w = FreeWord::Parse(text);
    REQUIRE(big.count(w.letters()) == 1);
    CHECK(WordLength(w, gens) == big.at(w.letters()));
  }
}

TEST_CASE("prefix lengths are word lengths of prefixes") {
  GenSet gens = SStar();
  FreeWord w = FreeWord::Parse("abaBabbA");
  std::vector<int> cuts{0, 1, 3, 5, 8};
  auto lengths = PrefixLengths(w, gens, cuts);
  REQUIRE(lengths.size() == cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    std::vector<Letter> prefix(w.letters().begin(), w.letters().begin() + cuts[i]);
    CHECK(lengths[i] == WordLength(FreeWord::FromLetters(prefix), gens));
  }
}

TEST_CASE("translation length matches the block formula") {
  GenSet gens = SStar();
  for (int n = 1; n <= 7; ++n) {
    ForEachCyclicallyReduced(n, [&](const Letters& w) {
      CHECK(TranslationLength(FreeWord::FromLetters(w), gens) == TranslationByFormula(w));
    });
  }
}

TEST_CASE("translation length is conjugation invariant and homogeneous") {
  GenSet gens = SStar();
  FreeWord g = FreeWord::Parse("abbaB"), c = FreeWord::Parse("bA");
  Rational t = TranslationLength(g, gens);
  CHECK(TranslationLength(c * g * c.Inverse(), gens) == t);
  CHECK(TranslationLength(g.Power(3), gens) == 3 * t);
  CHECK(TranslationLength(g.Inverse(), gens) == t);
  CHECK(TranslationLength(FreeWord(), gens) == 0);
  // Standard generators: the cyclic core length.
  CHECK(TranslationLength(FreeWord::Parse("aabA"), GenSet::Standard(2)) == 2);
}

TEST_CASE("sphere sizes match a plain search") {
  for (auto set : {std::initializer_list<const char*>{"a", "b"}, {"a", "b", "ab"}, {"a", "b", "aB"}}) {
    std::string text;
    for (const char* w : set) text += std::string(text.empty() ? "" : ",") + w;
    GenSet gens = GenSet::Parse(text, 2);
    auto ball = CayleyBall(SymmetricSet(set), 6);
    std::vector<Integer> expected(7, 0);
    for (const auto& [w, d] : ball) expected[static_cast<std::size_t>(d)] += 1;
    CHECK(CayleySphereSizes(gens, 6) == expected);
  }
  auto standard = CayleySphereSizes(GenSet::Standard(2), 8);
  for (int n = 1; n <= 8; ++n) {
    Integer expected;
    mpz_ui_pow_ui(expected.get_mpz_t(), 3, static_cast<unsigned long>(n - 1));
    CHECK(standard[static_cast<std::size_t>(n)] == 4 * expected);
  }
}

TEST_CASE("sphere search honours its budget") {
  MetricBudget tight;
  tight.max_states = 1000;
  try {
    CayleySphereSizes(GenSet::Standard(2), 9, tight);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kBudget);
  }
}

TEST_CASE("geodesic automata recognise the spheres") {
  for (const char* text : {"a,b", "a,b,ab"}) {
    GenSet gens = GenSet::Parse(text, 2);
    GeodesicAutomaton a = BuildGeodesicAutomaton(gens, -1, 8);
    CHECK(a.sphere_sizes == CayleySphereSizes(gens, 8));
    // The automaton accepts one geodesic per element.
    std::vector<Integer> count(static_cast<std::size_t>(a.state_count()), 0);
    count[0] = 1;
    for (int n = 1; n <= 8; ++n) {
      std::vector<Integer> next(count.size(), 0);
      for (int s = 0; s < a.state_count(); ++s)
        for (int g = 0; g < gens.size(); ++g)
          if (a.next(s, g) >= 0) next[static_cast<std::size_t>(a.next(s, g))] += count[static_cast<std::size_t>(s)];
      count = next;
      Integer total = 0;
      for (const auto& c : count) total += c;
      CHECK(total == a.sphere_sizes[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("too small a cone radius is reported") {
  try {
    BuildGeodesicAutomaton(SStar(), 0, 8);
    FAIL("expected a verification error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kVerification);
    CHECK(std::string(e.what()).find("increase rho") != std::string::npos);
  }
}

TEST_CASE("dual potential reads the other length on every cycle") {
  GeodesicAutomaton base = BuildGeodesicAutomaton(GenSet::Standard(2), -1, 6);
  DualPotentialReport report = DualPotential(base, SStar(), 1, 8);
  CHECK(report.memory == 1);
  AutomatonShift shift = MaximalComponentShift(report.automaton, MultiEdgePolicy::kExpand);
  for (int n = 1; n <= 6; ++n) {

    for (const Cycle& c : EnumerateCycles(shift.sft, n)) {
      std::string word;
      for (const auto& label : CycleLabels(report.automaton, shift, c.edges)) word += label;
      Rational psi = BirkhoffSum(c, shift.psi), r = BirkhoffSum(c, shift.r);
      CHECK(psi == TranslationByFormula(Word(word.c_str())));
      CHECK(r == static_cast<long>(CyclicCore(Word(word.c_str())).size()));
    }
  }
}

TEST_CASE("memory is refined only when a cycle demands it") {
  GeodesicAutomaton star = BuildGeodesicAutomaton(SStar(), -1, 6);
  const GenSet other = GenSet::Parse("a,b,aB", 2);
  try {
    DualPotential(star, other, 0, 6);
    FAIL("expected a verification error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kVerification);
    CHECK(std::string(e.what()).find("increase memory") != std::string::npos);
  }
  CHECK(DualPotential(star, other, 1, 6).memory == 1);
  // The standard coding already remembers the last letter.
  GeodesicAutomaton standard = BuildGeodesicAutomaton(GenSet::Standard(2), -1, 6);
  CHECK(DualPotential(standard, SStar(), 0, 8).cycles_checked > 0);
}

TEST_CASE("necklaces are the conjugacy classes") {
  std::size_t short_total = 0;
  for (int n = 1; n <= 7; ++n) {
    std::set<Letters> brute;
    ForEachCyclicallyReduced(n, [&](const Letters& w) { brute.insert(MinRotation(w)); });
    std::set<Letters> listed;
    ForEachNecklace(2, n, [&](const FreeWord& w) {
      CHECK(w.length() == n);
      CHECK(w.IsCyclicallyReduced());
      listed.insert(w.letters());
    });
    CHECK(listed == brute);
    if (n < 4) short_total += brute.size();
  }
  CHECK(Necklaces(2, 4).size() == short_total);
}

TEST_CASE("tau averages length ratios over conjugacy classes") {
  GenSet standard = GenSet::Standard(2), star = SStar();
  for (int T : {3, 4, 5}) {
    // Classes with 0 < |g|_{S*} < T have standard length at most 2(T - 1).
    Rational sum = 0;
    long classes = 0;
    for (int n = 1; n <= 2 * (T - 1); ++n) {
      std::set<Letters> seen;
      ForEachCyclicallyReduced(n, [&](const Letters& w) {
        if (!seen.insert(MinRotation(w)).second) return;
        long base = TranslationByFormula(w);
        if (base <= 0 || base >= T) return;
        sum += Rational(n, base);
        ++classes;
      });
    }
    Rational expected = sum / classes;
    expected.canonicalize();
    TauReport report = TauEmpirical(2, star, standard, T);
    CHECK(report.classes == classes);
    CHECK(report.tau == expected);
    TauOptions scaled;
    scaled.other_scale = 2;
    CHECK(TauEmpirical(2, star, standard, T, scaled).tau == 2 * expected);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace mcurve
