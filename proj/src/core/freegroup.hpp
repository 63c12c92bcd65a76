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

#ifndef MCURVE_CORE_FREEGROUP_HPP_
#define MCURVE_CORE_FREEGROUP_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "rational.hpp"

namespace mcurve {

// Letter 2i is generator i, 2i + 1 its inverse; so a < A < b < B < ...
using Letter = int;
inline Letter InverseLetter(Letter c) { return c ^ 1; }

// A reduced word in a free group. Text form: lowercase letters for
// generators, uppercase for inverses, "1" (or "") for the identity.
class FreeWord {
 public:
  FreeWord() = default;
  static FreeWord FromLetters(const std::vector<Letter>& letters);
  static FreeWord Parse(std::string_view text);
  static FreeWord Generator(int index);

  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  // Least rank containing every letter.
  int rank_needed() const;
  std::string ToString() const;

  FreeWord Inverse() const;
  FreeWord Power(int k) const;
  bool IsCyclicallyReduced() const;
  // The cyclically reduced core h with *this = c h c^-1.
  FreeWord CyclicCore(FreeWord* conjugator = nullptr) const;

  friend FreeWord operator*(const FreeWord& x, const FreeWord& y);
  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  // Shortlex.
  friend std::strong_ordering operator<=>(const FreeWord& x, const FreeWord& y);

 private:
  std::vector<Letter> letters_;
};

// The rotation-minimal representative of a cyclically reduced word.
FreeWord CanonicalRotation(const FreeWord& cyclically_reduced);

// A finite symmetric generating set of the free group of a given rank,
// stored in shortlex order.
class GenSet {
 public:
  static GenSet Standard(int rank);
  // Words separated by commas or whitespace.
  static GenSet Parse(std::string_view text, int rank = 0, bool symmetrize = true);
  GenSet(int rank, std::vector<FreeWord> gens, bool symmetrize = true);

  int rank() const { return rank_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const std::vector<FreeWord>& gens() const { return gens_; }
  const FreeWord& operator[](int i) const { return gens_[static_cast<std::size_t>(i)]; }
  int inverse_index(int i) const { return inverse_[static_cast<std::size_t>(i)]; }
  bool is_standard() const { return standard_; }
  // Largest standard length of a generator.
  int max_length() const { return max_length_; }
  // Any geodesic for this set stays within this standard distance of the
  // tree geodesic between its endpoints.
  int tube_radius() const { return tube_radius_; }
  std::string ToString() const;

  friend bool operator==(const GenSet& x, const GenSet& y) { return x.rank_ == y.rank_ && x.gens_ == y.gens_; }

 private:
  int rank_ = 0;
  std::vector<FreeWord> gens_;
  std::vector<int> inverse_;
  bool standard_ = false;
  int max_length_ = 0;
  int tube_radius_ = 0;
};

// True when the words generate the whole free group of the given rank
// (Stallings folding).
bool GeneratesFreeGroup(int rank, const std::vector<FreeWord>& words);

struct MetricBudget {
  long max_states = 50000000;
  int max_power = 64;
};

long WordLength(const FreeWord& g, const GenSet& gens, const MetricBudget& budget = {});
// |prefix_k| for each listed prefix length k of g.
std::vector<long> PrefixLengths(const FreeWord& g, const GenSet& gens, const std::vector<int>& prefix_lengths,
                                const MetricBudget& budget = {});
Rational TranslationLength(const FreeWord& g, const GenSet& gens, const MetricBudget& budget = {});

// Sphere sizes n = 0..depth of the Cayley graph.
std::vector<Integer> CayleySphereSizes(const GenSet& gens, int depth, const MetricBudget& budget = {});

struct GeodesicAutomaton {
  // State 0 is the start state; labels are generator words, r = psi = 1.
  DualMetricAutomaton automaton;
  GenSet gens = GenSet::Standard(1);
  int rho = 0;
  int verify_depth = 0;
  int closure_level = 0;
  // transition[state * gens.size() + g], -1 when the letter is not accepted.
  std::vector<int> transition;
  std::vector<FreeWord> representative;
  std::vector<Integer> sphere_sizes;

  int next(int state, int gen) const {
    return transition[static_cast<std::size_t>(state) * static_cast<std::size_t>(gens.size()) +
                      static_cast<std::size_t>(gen)];
  }
  int state_count() const { return automaton.state_count(); }
};

// Shortlex automaton from radius-rho cone types, verified against sphere
// sizes to verify_depth. rho < 0 selects the default 2 * max_length.
GeodesicAutomaton BuildGeodesicAutomaton(const GenSet& gens, int rho = -1, int verify_depth = 8,
                                         const MetricBudget& budget = {});

struct DualPotentialReport {
  DualMetricAutomaton automaton;
  int memory = 0;
  int verified_cycles_to = 0;
  long cycles_checked = 0;
  std::vector<FreeWord> representative;
};

// Refines states by their last `memory` letters and sets
// psi = |w s|_other - |w|_other on the state representative w; then checks
// psi-sums against translation lengths on all cycles up to verify_cycles_to.
DualPotentialReport DualPotential(const GeodesicAutomaton& base, const GenSet& other, int memory,
                                  int verify_cycles_to, const MetricBudget& budget = {});

// Canonical necklaces of standard length exactly n, in shortlex order.
void ForEachNecklace(int rank, int length, const std::function<void(const FreeWord&)>& fn, long budget = 100000000);
// Every conjugacy class of standard length in [1, max_len).
std::vector<FreeWord> Necklaces(int rank, int max_len, long budget = 100000000);

struct TauOptions {
  int verify_cycles_to = 8;
  // Multiplies every other-length; tau scales by the same factor.
  Rational other_scale = 1;
  MetricBudget budget;
};

struct TauReport {
  Rational tau;
  Integer classes;
  int max_standard_length = 0;
};

// Average of l_other / l_base over conjugacy classes with l_base < T.
TauReport TauEmpirical(int rank, const GenSet& base, const GenSet& other, int T, const TauOptions& options = {});

}  // namespace mcurve

#endif  // MCURVE_CORE_FREEGROUP_HPP_
