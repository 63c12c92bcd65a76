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

#include "freegroup.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <iterator>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "error.hpp"

namespace mcurve {
namespace {

// Words packed into 64 bits: a leading 1 bit followed by fixed-width
// letters, so numeric order is shortlex order.
struct Packing {
  int bits = 1;
  std::uint64_t mask = 1;
  int capacity = 63;

  explicit Packing(int rank) {
    while ((1 << bits) < 2 * rank) ++bits;
    mask = (std::uint64_t{1} << bits) - 1;
    capacity = 63 / bits;
  }
  int Length(std::uint64_t w) const { return (std::bit_width(w) - 1) / bits; }
  Letter Last(std::uint64_t w) const { return static_cast<Letter>(w & mask); }
  Letter First(std::uint64_t w, int len) const {
    return static_cast<Letter>((w >> ((len - 1) * bits)) & mask);
  }
  std::uint64_t DropFirst(std::uint64_t w, int len) const {
    std::uint64_t top = std::uint64_t{1} << ((len - 1) * bits);
    return (w & (top - 1)) | top;
  }
  // Reduced product with a reduced word.
  std::uint64_t Times(std::uint64_t w, int* len, const std::vector<Letter>& s) const {
    for (Letter c : s) {
      if (*len > 0 && Last(w) == InverseLetter(c)) {
        w >>= bits;
        --*len;
      } else {
        w = (w << bits) | static_cast<std::uint64_t>(c);
        ++*len;
      }
    }
    return w;
  }
  std::uint64_t Pack(const std::vector<Letter>& letters) const {
    std::uint64_t w = 1;
    for (Letter c : letters) w = (w << bits) | static_cast<std::uint64_t>(c);
    return w;
  }
  std::vector<Letter> Unpack(std::uint64_t w) const {
    std::vector<Letter> out(static_cast<std::size_t>(Length(w)));
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = Last(w);
      w >>= bits;
    }
    return out;
  }
};

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// LSD radix sort on 16-bit digits, skipping digits that never vary.
void RadixSort(std::vector<std::uint64_t>& v) {
  if (v.size() < 4096) {
    std::sort(v.begin(), v.end());
    return;
  }
  std::uint64_t any_or = 0, all_and = ~std::uint64_t{0};
  for (std::uint64_t x : v) {
    any_or |= x;
    all_and &= x;
  }
  std::vector<std::uint64_t> tmp(v.size());
  std::vector<std::size_t> count(1 << 16);
  for (int shift = 0; shift < 64; shift += 16) {
    if ((((any_or ^ all_and) >> shift) & 0xffff) == 0) continue;
    std::fill(count.begin(), count.end(), 0);
    for (std::uint64_t x : v) ++count[(x >> shift) & 0xffff];
    std::size_t sum = 0;
    for (auto& c : count) {
      std::size_t n = c;
      c = sum;
      sum += n;
    }
    for (std::uint64_t x : v) tmp[count[(x >> shift) & 0xffff]++] = x;
    v.swap(tmp);
  }
}

struct MixHash {
  std::size_t operator()(std::uint64_t x) const { return static_cast<std::size_t>(Mix(x)); }
};

std::vector<Letter> ReduceLetters(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (Letter c : in) {
    if (!out.empty() && out.back() == InverseLetter(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

FreeWord FreeWord::FromLetters(const std::vector<Letter>& letters) {
  for (Letter c : letters) {
    if (c < 0) Fail(ErrorKind::kInvalidArgument, "negative letter code");
  }
  FreeWord w;
  w.letters_ = ReduceLetters(letters);
  return w;
}

FreeWord FreeWord::Parse(std::string_view text) {
  std::vector<Letter> letters;
  if (text == "1") return FreeWord();
  for (char ch : text) {
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(2 * (ch - 'a'));
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(2 * (ch - 'A') + 1);
    } else {
      Fail(ErrorKind::kParse, "invalid letter '" + std::string(1, ch) + "' in word '" + std::string(text) + "'");
    }
  }
  return FromLetters(letters);
}

FreeWord FreeWord::Generator(int index) {
  if (index < 0 || index >= 26) Fail(ErrorKind::kInvalidArgument, "generator index out of range");
  return FromLetters({2 * index});
}

int FreeWord::rank_needed() const {
  int r = 0;
  for (Letter c : letters_) r = std::max(r, c / 2 + 1);
  return r;
}

std::string FreeWord::ToString() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (Letter c : letters_) out.push_back(static_cast<char>((c % 2 == 0 ? 'a' : 'A') + c / 2));
  return out;
}

FreeWord FreeWord::Inverse() const {
  FreeWord w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  for (Letter& c : w.letters_) c = InverseLetter(c);
  return w;
}

FreeWord FreeWord::Power(int k) const {
  if (k < 0) return Inverse().Power(-k);
  FreeWord core_conj;
  FreeWord core = CyclicCore(&core_conj);
  std::vector<Letter> letters = core_conj.letters_;
  for (int i = 0; i < k; ++i) letters.insert(letters.end(), core.letters_.begin(), core.letters_.end());
  FreeWord inv = core_conj.Inverse();
  letters.insert(letters.end(), inv.letters_.begin(), inv.letters_.end());
  return FromLetters(letters);
}

bool FreeWord::IsCyclicallyReduced() const {
  return letters_.size() < 2 || letters_.front() != InverseLetter(letters_.back());
}

FreeWord FreeWord::CyclicCore(FreeWord* conjugator) const {
  std::size_t i = 0, j = letters_.size();
  while (j - i >= 2 && letters_[i] == InverseLetter(letters_[j - 1])) {
    ++i;
    --j;
  }
  if (conjugator) conjugator->letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(i));
  FreeWord core;
  core.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(i), letters_.begin() + static_cast<std::ptrdiff_t>(j));
  return core;
}

FreeWord operator*(const FreeWord& x, const FreeWord& y) {
  std::vector<Letter> letters = x.letters_;
  letters.insert(letters.end(), y.letters_.begin(), y.letters_.end());
  return FreeWord::FromLetters(letters);
}

std::strong_ordering operator<=>(const FreeWord& x, const FreeWord& y) {
  if (auto c = x.letters_.size() <=> y.letters_.size(); c != 0) return c;
  return x.letters_ <=> y.letters_;
}

FreeWord CanonicalRotation(const FreeWord& w) {
  const auto& s = w.letters();
  const std::size_t n = s.size();
  if (n < 2) return w;
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter a = s[(r + i) % n], b = s[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s[(best + i) % n];
  return FreeWord::FromLetters(out);
}

bool GeneratesFreeGroup(int rank, const std::vector<FreeWord>& words) {
  // Stallings folding of the bouquet of the words.
  std::vector<int> parent{0};
  std::vector<std::map<Letter, int>> adj(1);
  auto new_vertex = [&] {
    parent.push_back(static_cast<int>(parent.size()));
    adj.emplace_back();
    return static_cast<int>(parent.size()) - 1;
  };
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<std::tuple<int, Letter, int>> work;
  for (const auto& w : words) {
    int u = 0;
    for (int i = 0; i < w.length(); ++i) {
      int v = i + 1 == w.length() ? 0 : new_vertex();
      Letter c = w.letters()[static_cast<std::size_t>(i)];
      work.emplace_back(u, c, v);
      work.emplace_back(v, InverseLetter(c), u);
      u = v;
    }
  }
  while (!work.empty()) {
    auto [u, c, v] = work.back();
    work.pop_back();
    u = find(u);
    v = find(v);
    auto it = adj[static_cast<std::size_t>(u)].find(c);
    if (it == adj[static_cast<std::size_t>(u)].end()) {
      adj[static_cast<std::size_t>(u)][c] = v;
      continue;
    }
    int t = find(it->second);
    if (t == v) continue;
    // Merge v into t.
    parent[static_cast<std::size_t>(v)] = t;
    for (auto [letter, target] : adj[static_cast<std::size_t>(v)]) work.emplace_back(t, letter, target);
    adj[static_cast<std::size_t>(v)].clear();
  }
  const int root = find(0);
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (find(static_cast<int>(v)) != root) return false;
  }
  for (Letter c = 0; c < 2 * rank; ++c) {
    if (!adj[static_cast<std::size_t>(root)].count(c)) return false;
  }
  return true;
}

GenSet GenSet::Standard(int rank) {
  std::vector<FreeWord> gens;
  for (int i = 0; i < rank; ++i) gens.push_back(FreeWord::Generator(i));
  return GenSet(rank, std::move(gens), true);
}

GenSet GenSet::Parse(std::string_view text, int rank, bool symmetrize) {
  std::vector<FreeWord> gens;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) gens.push_back(FreeWord::Parse(token));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  int needed = 0;
  for (const auto& g : gens) needed = std::max(needed, g.rank_needed());
  if (rank == 0) rank = needed;
  return GenSet(rank, std::move(gens), symmetrize);
}

GenSet::GenSet(int rank, std::vector<FreeWord> gens, bool symmetrize) : rank_(rank) {
  if (rank < 1 || rank > 26) Fail(ErrorKind::kInvalidArgument, "rank must be between 1 and 26");
  std::set<FreeWord> unique;
  for (const auto& g : gens) {
    if (g.empty()) Fail(ErrorKind::kInvalidArgument, "the identity cannot be a generator");
    if (g.rank_needed() > rank) Fail(ErrorKind::kInvalidArgument, "generator " + g.ToString() + " exceeds the rank");
    unique.insert(g);
    if (symmetrize) unique.insert(g.Inverse());
  }
  gens_.assign(unique.begin(), unique.end());
  for (const auto& g : gens_) {
    if (!unique.count(g.Inverse())) {
      Fail(ErrorKind::kInvalidArgument, "generating set is not closed under inverses: missing " +
                                            g.Inverse().ToString());
    }
  }
  for (const auto& g : gens_) {
    inverse_.push_back(static_cast<int>(std::lower_bound(gens_.begin(), gens_.end(), g.Inverse()) - gens_.begin()));
    max_length_ = std::max(max_length_, g.length());
  }
  if (!GeneratesFreeGroup(rank_, gens_)) {
    Fail(ErrorKind::kInvalidArgument, "the words do not generate the free group of rank " + std::to_string(rank_));
  }
  standard_ = max_length_ == 1 && static_cast<int>(gens_.size()) == 2 * rank_;
  if (standard_) return;

  // Largest length, in this set, of an element in the standard ball of
  // radius 2 * max_length.
  const int radius = 2 * max_length_;
  long ball = 1, sphere = 2 * rank_;
  for (int i = 1; i <= radius; ++i) {
    ball += sphere;
    sphere *= 2 * rank_ - 1;
  }
  std::set<FreeWord> seen{FreeWord()};
  std::vector<FreeWord> frontier{FreeWord()};
  long found = 1;
  int level = 0, widest = 0;
  while (found < ball) {
    ++level;
    std::vector<FreeWord> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens_) {
        FreeWord h = w * g;
        if (seen.insert(h).second) {
          next.push_back(h);
          if (h.length() <= radius) {
            ++found;
            widest = level;
          }
        }
      }
    }
    if (seen.size() > 20000000) Fail(ErrorKind::kBudget, "generating set too large to bound its geodesics");
    frontier = std::move(next);
  }
  tube_radius_ = max_length_ * (widest / 2) + max_length_ - 1;
}

std::string GenSet::ToString() const {
  std::string out;
  for (const auto& g : gens_) {
    if (!out.empty()) out += ",";
    out += g.ToString();
  }
  return out;
}

std::vector<long> PrefixLengths(const FreeWord& g, const GenSet& gens, const std::vector<int>& prefix_lengths,
                                const MetricBudget& budget) {
  const auto& word = g.letters();
  const int total = g.length();
  for (int k : prefix_lengths) {
    if (k < 0 || k > total) Fail(ErrorKind::kInvalidArgument, "prefix length out of range");
  }
  std::vector<long> out(prefix_lengths.size(), -1);
  if (gens.is_standard()) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = prefix_lengths[i];
    return out;
  }
  const Packing pack(gens.rank());
  const int radius = gens.tube_radius();
  if (radius + gens.max_length() > pack.capacity) Fail(ErrorKind::kBudget, "tube radius exceeds packed word capacity");
  const int u_bits = radius * pack.bits + 1;
  if (std::bit_width(static_cast<unsigned>(total) + 1) + u_bits > 63) Fail(ErrorKind::kBudget, "word too long");
  std::vector<std::vector<Letter>> gen_letters;
  for (const auto& s : gens.gens()) gen_letters.push_back(s.letters());

  // Targets by position along the word.
  std::unordered_map<int, std::vector<std::size_t>> wanted;
  for (std::size_t i = 0; i < prefix_lengths.size(); ++i) wanted[prefix_lengths[i]].push_back(i);
  std::size_t remaining = prefix_lengths.size();

  // A state is (k, u): the element prefix_k * u, with u a branch leaving the
  // word at position k.
  auto key = [&](int k, std::uint64_t u) { return (static_cast<std::uint64_t>(k) << u_bits) | u; };
  std::unordered_set<std::uint64_t, MixHash> seen;
  std::vector<std::uint64_t> frontier{key(0, 1)};
  seen.insert(frontier.front());
  const std::uint64_t u_mask = (std::uint64_t{1} << u_bits) - 1;
  long level = 0;
  while (remaining > 0) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t state : frontier) {
      const int k = static_cast<int>(state >> u_bits);
      const std::uint64_t u = state & u_mask;
      if (u == 1) {
        auto it = wanted.find(k);
        if (it != wanted.end()) {
          for (std::size_t i : it->second) out[i] = level;
          remaining -= it->second.size();
          wanted.erase(it);
        }
      }
      if (remaining == 0) break;
      for (const auto& s : gen_letters) {
        int len = pack.Length(u);
        std::uint64_t v = pack.Times(u, &len, s);
        int pos = k;
        while (len > 0) {
          Letter f = pack.First(v, len);
          if (pos > 0 && f == InverseLetter(word[static_cast<std::size_t>(pos) - 1])) {
            --pos;
          } else if (pos < total && f == word[static_cast<std::size_t>(pos)]) {
            ++pos;
          } else {
            break;
          }
          v = pack.DropFirst(v, len);
          --len;
        }
        if (len > radius) continue;
        std::uint64_t s_key = key(pos, v);
        if (seen.insert(s_key).second) next.push_back(s_key);
      }
    }
    if (remaining == 0) break;
    if (static_cast<long>(seen.size()) > budget.max_states) {
      Fail(ErrorKind::kBudget, "word length search exceeded its budget; length is at least " + std::to_string(level + 1));
    }
    if (next.empty()) Fail(ErrorKind::kVerification, "word length search exhausted its tube");
    frontier = std::move(next);
    ++level;
  }
  return out;
}

long WordLength(const FreeWord& g, const GenSet& gens, const MetricBudget& budget) {
  return PrefixLengths(g, gens, {g.length()}, budget).front();
}

Rational TranslationLength(const FreeWord& g, const GenSet& gens, const MetricBudget& budget) {
  const FreeWord core = g.CyclicCore();
  if (core.empty()) return 0;
  if (gens.is_standard()) return core.length();
  // The increments |h^(m+1)| - |h^m| become periodic; three repeated
  // periods fix the slope.
  for (int powers = 8; powers <= budget.max_power; powers *= 2) {
    FreeWord big = core.Power(powers);
    std::vector<int> positions;
    for (int m = 0; m <= powers; ++m) positions.push_back(m * core.length());
    std::vector<long> d = PrefixLengths(big, gens, positions, budget);
    std::vector<long> inc(static_cast<std::size_t>(powers) + 1, 0);
    for (int m = 1; m <= powers; ++m) inc[static_cast<std::size_t>(m)] = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(m) - 1];
    for (int p = 1; 3 * p <= powers; ++p) {
      bool periodic = true;
      for (int m = powers; m > powers - 2 * p && periodic; --m) {
        periodic = inc[static_cast<std::size_t>(m)] == inc[static_cast<std::size_t>(m - p)];
      }
      if (periodic) {
        Rational slope(d[static_cast<std::size_t>(powers)] - d[static_cast<std::size_t>(powers - p)], p);
        slope.canonicalize();
        return slope;
      }
    }
  }
  Fail(ErrorKind::kBudget, "translation length did not stabilize; increase power budget");
}

std::vector<Integer> CayleySphereSizes(const GenSet& gens, int depth, const MetricBudget& budget) {
  if (depth < 0) Fail(ErrorKind::kInvalidArgument, "depth must be nonnegative");
  const Packing pack(gens.rank());
  if (static_cast<long>(gens.max_length()) * depth > pack.capacity) {
    Fail(ErrorKind::kBudget, "sphere depth exceeds packed word capacity");
  }
  std::vector<std::vector<Letter>> gen_letters;
  for (const auto& s : gens.gens()) gen_letters.push_back(s.letters());
  std::vector<Integer> sizes{Integer(1)};
  std::vector<std::uint64_t> prev, cur{1};
  const std::size_t shard_target = std::size_t{48} << 20;
  for (int n = 1; n <= depth; ++n) {
    const std::size_t products = cur.size() * gen_letters.size();
    const std::size_t shards = std::max<std::size_t>(1, (products + shard_target - 1) / shard_target);
    const bool keep = n < depth;
    std::vector<std::uint64_t> next;
    Integer count = 0;
    for (std::size_t shard = 0; shard < shards; ++shard) {
      std::vector<std::uint64_t> bucket;
      bucket.reserve(products / shards + 16);
      for (std::uint64_t w : cur) {
        for (const auto& s : gen_letters) {
          int len = pack.Length(w);
          std::uint64_t h = pack.Times(w, &len, s);
          if (shards == 1 || Mix(h) % shards == shard) bucket.push_back(h);
        }
      }
      RadixSort(bucket);
      bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
      // Neighbours of sphere n-1 lie in spheres n-2, n-1 and n.
      std::vector<std::uint64_t> fresh;
      fresh.reserve(bucket.size());
      std::set_difference(bucket.begin(), bucket.end(), cur.begin(), cur.end(), std::back_inserter(fresh));
      bucket.clear();
      std::set_difference(fresh.begin(), fresh.end(), prev.begin(), prev.end(), std::back_inserter(bucket));
      count += static_cast<unsigned long>(bucket.size());
      if (keep) next.insert(next.end(), bucket.begin(), bucket.end());
    }
    sizes.push_back(count);
    if (!keep) break;
    if (shards > 1) RadixSort(next);
    if (static_cast<long>(next.size()) > budget.max_states) Fail(ErrorKind::kBudget, "sphere exceeds the state budget");
    prev = std::move(cur);
    cur = std::move(next);
  }
  return sizes;
}

GeodesicAutomaton BuildGeodesicAutomaton(const GenSet& gens, int rho, int verify_depth, const MetricBudget& budget) {
  if (rho < 0) rho = 2 * gens.max_length();
  const Packing pack(gens.rank());
  const int ng = gens.size();
  std::vector<std::vector<Letter>> gen_letters;
  for (const auto& s : gens.gens()) gen_letters.push_back(s.letters());
  const std::string too_small = "cone radius too small; increase rho";

  // Shortlex spanning tree of the Cayley graph, grown level by level.
  std::vector<std::uint64_t> element{1};
  std::vector<int> level_of{0};
  std::vector<std::vector<std::pair<int, int>>> children(1);  // (generator, child)
  std::unordered_map<std::uint64_t, int, MixHash> index{{1, 0}};
  std::vector<std::size_t> level_start{0, 1};
  auto grow = [&](int target_level) {
    while (static_cast<int>(level_start.size()) - 2 < target_level) {
      const int lvl = static_cast<int>(level_start.size()) - 2;
      if (static_cast<long>(gens.max_length()) * (lvl + 1) > pack.capacity) {
        Fail(ErrorKind::kBudget, too_small + " (no closure within the packed word capacity)");
      }
      const std::size_t begin = level_start[level_start.size() - 2], end = level_start.back();
      for (std::size_t v = begin; v < end; ++v) {
        for (int s = 0; s < ng; ++s) {
          int len = pack.Length(element[v]);
          std::uint64_t h = pack.Times(element[v], &len, gen_letters[static_cast<std::size_t>(s)]);
          if (index.emplace(h, static_cast<int>(element.size())).second) {
            children[v].emplace_back(s, static_cast<int>(element.size()));
            element.push_back(h);
            level_of.push_back(lvl + 1);
            children.emplace_back();
          }
        }
      }
      level_start.push_back(element.size());
      if (static_cast<long>(element.size()) > budget.max_states) {
        Fail(ErrorKind::kBudget, too_small + " (tree exceeded the state budget before closing)");
      }
    }
  };

  for (int n = 1;; ++n) {
    const int depth = n + rho;
    grow(depth);
    const std::size_t nodes_to_n = level_start[static_cast<std::size_t>(n) + 1];
    // sig_d for nodes of level <= depth - d, interned per depth.
    std::map<std::vector<int>, int> intern;
    std::vector<int> sig(level_start[static_cast<std::size_t>(depth) + 1], 0);
    for (int d = 1; d <= rho; ++d) {
      std::vector<int> next(sig.size(), -1);
      const std::size_t limit = level_start[static_cast<std::size_t>(depth - d) + 1];
      for (std::size_t v = 0; v < limit; ++v) {
        std::vector<int> key{d};
        for (auto [s, c] : children[v]) {
          key.push_back(s);
          key.push_back(sig[static_cast<std::size_t>(c)]);
        }
        next[v] = intern.emplace(std::move(key), static_cast<int>(intern.size())).first->second;
      }
      sig = std::move(next);
    }
    // States: signatures below level n. Transitions must be functions of
    // the signature.
    std::map<int, int> state_of_sig;
    std::vector<int> rep_node;
    std::map<std::pair<int, int>, int> delta;
    std::map<int, std::vector<int>> labels_of;
    bool consistent = true;
    const std::size_t below_n = level_start[static_cast<std::size_t>(n)];
    for (std::size_t v = 0; v < below_n && consistent; ++v) {
      const int sv = sig[v];
      if (state_of_sig.emplace(sv, static_cast<int>(rep_node.size())).second) rep_node.push_back(static_cast<int>(v));
      std::vector<int> labels;
      for (auto [s, c] : children[v]) {
        labels.push_back(s);
        auto [it, fresh] = delta.emplace(std::make_pair(sv, s), sig[static_cast<std::size_t>(c)]);
        if (!fresh && it->second != sig[static_cast<std::size_t>(c)]) consistent = false;
      }
      auto [it, fresh] = labels_of.emplace(sv, labels);
      if (!fresh && it->second != labels) consistent = false;
    }
    if (!consistent) Fail(ErrorKind::kVerification, too_small);
    bool closed = true;
    for (std::size_t v = below_n; v < nodes_to_n && closed; ++v) closed = state_of_sig.count(sig[v]) > 0;
    if (!closed) continue;

    GeodesicAutomaton out;
    out.gens = gens;
    out.rho = rho;
    out.verify_depth = verify_depth;
    out.closure_level = n;
    const int states = static_cast<int>(rep_node.size());
    out.transition.assign(static_cast<std::size_t>(states) * static_cast<std::size_t>(ng), -1);
    for (int q = 0; q < states; ++q) {
      out.automaton.AddState("q" + std::to_string(q), q == 0);
      const int node = rep_node[static_cast<std::size_t>(q)];
      out.representative.push_back(FreeWord::FromLetters(pack.Unpack(element[static_cast<std::size_t>(node)])));
    }
    for (int q = 0; q < states; ++q) {
      const int sv = sig[static_cast<std::size_t>(rep_node[static_cast<std::size_t>(q)])];
      for (int s : labels_of[sv]) {
        const int target = state_of_sig.at(delta.at({sv, s}));
        out.transition[static_cast<std::size_t>(q) * static_cast<std::size_t>(ng) + static_cast<std::size_t>(s)] = target;
        out.automaton.edges.push_back({q, target, gens[s].ToString(), Rational(1), Rational(1)});
      }
    }
    out.automaton.metadata["provenance"] = "geodesic_automaton";
    out.automaton.metadata["generators"] = gens.ToString();
    out.automaton.metadata["rho"] = std::to_string(rho);

    // Accepted words by length against the Cayley graph spheres; a shallow
    // pass first so a bad automaton fails fast.
    std::vector<Integer> accepted{Integer(1)};
    std::vector<Integer> count(static_cast<std::size_t>(states), 0);
    count[0] = 1;
    for (int len = 1; len <= verify_depth; ++len) {
      std::vector<Integer> next(static_cast<std::size_t>(states), 0);
      for (const auto& e : out.automaton.edges) next[static_cast<std::size_t>(e.to)] += count[static_cast<std::size_t>(e.from)];
      count = std::move(next);
      Integer total = 0;
      for (const auto& c : count) total += c;
      accepted.push_back(total);
    }
    for (int depth : {std::min(verify_depth, 6), verify_depth}) {
      out.sphere_sizes = CayleySphereSizes(gens, depth, budget);
      for (int len = 1; len <= depth; ++len) {
        const auto& want = out.sphere_sizes[static_cast<std::size_t>(len)];
        const auto& got = accepted[static_cast<std::size_t>(len)];
        if (got != want) {
          Fail(ErrorKind::kVerification, too_small + " (length " + std::to_string(len) + ": automaton accepts " +
                                             got.get_str() + " words, sphere has " + want.get_str() + ")");
        }
      }
    }
    return out;
  }
}

DualPotentialReport DualPotential(const GeodesicAutomaton& base, const GenSet& other, int memory,
                                  int verify_cycles_to, const MetricBudget& budget) {
  if (memory < 0) Fail(ErrorKind::kInvalidArgument, "memory must be nonnegative");
  if (other.rank() != base.gens.rank()) Fail(ErrorKind::kInvalidArgument, "generating sets have different ranks");
  const GenSet& gens = base.gens;
  const int ng = gens.size();

  // Refined states (automaton state, last `memory` generators), discovered
  // in shortlex order so each representative is the shortlex-least word.
  using Refined = std::pair<int, std::vector<int>>;
  std::map<Refined, int> id;
  std::vector<Refined> states;
  std::vector<FreeWord> rep;
  std::deque<int> queue;
  auto intern = [&](const Refined& r, const FreeWord& w) {
    auto [it, fresh] = id.emplace(r, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(r);
      rep.push_back(w);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern({0, {}}, FreeWord());
  struct Pending {
    int from, to, gen;
  };
  std::vector<Pending> pending;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    const Refined cur = states[static_cast<std::size_t>(v)];
    const FreeWord word = rep[static_cast<std::size_t>(v)];
    for (int s = 0; s < ng; ++s) {
      const int q = base.next(cur.first, s);
      if (q < 0) continue;
      std::vector<int> suffix = cur.second;
      suffix.push_back(s);
      if (static_cast<int>(suffix.size()) > memory) suffix.erase(suffix.begin());
      const int w = intern({q, suffix}, word * gens[s]);
      pending.push_back({v, w, s});
    }
  }

  std::map<FreeWord, long> length_cache;
  auto other_length = [&](const FreeWord& w) {
    auto it = length_cache.find(w);
    if (it != length_cache.end()) return it->second;
    long len = WordLength(w, other, budget);
    length_cache.emplace(w, len);
    return len;
  };

  DualPotentialReport out;
  out.memory = memory;
  out.verified_cycles_to = verify_cycles_to;
  out.representative = rep;
  auto& a = out.automaton;
  for (std::size_t v = 0; v < states.size(); ++v) {
    std::string name = "q" + std::to_string(states[v].first);
    if (memory > 0) {
      name += "|";
      for (std::size_t i = 0; i < states[v].second.size(); ++i) {
        if (i) name += ".";
        name += gens[states[v].second[i]].ToString();
      }
    }
    a.AddState(name, v == 0);
  }
  for (const auto& p : pending) {
    const FreeWord& w = rep[static_cast<std::size_t>(p.from)];
    const long psi = other_length(w * gens[p.gen]) - other_length(w);
    a.edges.push_back({p.from, p.to, gens[p.gen].ToString(), Rational(1), Rational(psi)});
  }
  a.metadata["provenance"] = "dual_potential";
  a.metadata["base_generators"] = gens.ToString();
  a.metadata["other_generators"] = other.ToString();
  a.metadata["memory"] = std::to_string(memory);
  a.metadata["verified_cycles_to"] = std::to_string(verify_cycles_to);

  // Closed walks whose smallest state is their start; every cycle class
  // appears among them.
  const Packing pack(gens.rank());
  if (static_cast<long>(gens.max_length()) * verify_cycles_to > pack.capacity) {
    Fail(ErrorKind::kBudget, "cycle verification length exceeds packed word capacity");
  }
  std::vector<std::vector<int>> out_edges(states.size());
  for (std::size_t e = 0; e < a.edges.size(); ++e) out_edges[static_cast<std::size_t>(a.edges[e].from)].push_back(static_cast<int>(e));
  std::vector<std::vector<Letter>> gen_letters;
  for (const auto& s : gens.gens()) gen_letters.push_back(s.letters());
  std::unordered_map<std::uint64_t, Rational, MixHash> translation_cache;
  long checked = 0;

  auto check = [&](std::uint64_t packed, const Rational& psi_sum, const std::vector<int>& path) {
    ++checked;
    std::vector<Letter> letters = pack.Unpack(packed);
    // Cyclic reduction.
    std::size_t i = 0, j = letters.size();
    while (j - i >= 2 && letters[i] == InverseLetter(letters[j - 1])) {
      ++i;
      --j;
    }
    Rational expected;
    if (other.is_standard()) {
      expected = static_cast<long>(j - i);
    } else {
      FreeWord core = CanonicalRotation(FreeWord::FromLetters(
          std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.begin() + static_cast<std::ptrdiff_t>(j))));
      std::uint64_t k = pack.Pack(core.letters());
      auto it = translation_cache.find(k);
      if (it == translation_cache.end()) it = translation_cache.emplace(k, TranslationLength(core, other, budget)).first;
      expected = it->second;
    }
    if (expected != psi_sum) {
      std::string labels;
      for (int e : path) labels += (labels.empty() ? "" : ".") + a.edges[static_cast<std::size_t>(e)].label;
      Fail(ErrorKind::kVerification, "increase memory: cycle " + labels + " has psi-sum " + ToString(psi_sum) +
                                         " but translation length " + ToString(expected));
    }
  };

  for (int start = 0; start < static_cast<int>(states.size()); ++start) {
    struct Frame {
      int state;
      std::size_t next;
      std::uint64_t word;
      int len;
      Rational sum;
    };
    std::vector<Frame> stack{{start, 0, 1, 0, Rational(0)}};
    std::vector<int> path;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& outs = out_edges[static_cast<std::size_t>(f.state)];
      if (f.next == outs.size() || static_cast<int>(path.size()) == verify_cycles_to) {
        stack.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      const int e = outs[f.next++];
      const auto& ed = a.edges[static_cast<std::size_t>(e)];
      if (ed.to < start) continue;
      int len = f.len;
      const int g = static_cast<int>(std::lower_bound(gens.gens().begin(), gens.gens().end(), FreeWord::Parse(ed.label)) -
                                     gens.gens().begin());
      std::uint64_t word = pack.Times(f.word, &len, gen_letters[static_cast<std::size_t>(g)]);
      Rational sum = f.sum + ed.psi;
      path.push_back(e);
      if (ed.to == start) check(word, sum, path);
      stack.push_back({ed.to, 0, word, len, sum});
    }
  }
  out.cycles_checked = checked;
  return out;
}

void ForEachNecklace(int rank, int length, const std::function<void(const FreeWord&)>& fn, long budget) {
  if (length < 1) return;
  const int letters = 2 * rank;
  std::vector<Letter> word;
  long visited = 0;
  // Depth-first over reduced words in lexicographic order; rotation
  // minimality forces every letter to be >= the first.
  std::function<void()> extend = [&] {
    if (++visited > budget) Fail(ErrorKind::kBudget, "necklace enumeration exceeded its budget");
    if (static_cast<int>(word.size()) == length) {
      if (length > 1 && word.back() == InverseLetter(word.front())) return;
      FreeWord w = FreeWord::FromLetters(word);
      if (CanonicalRotation(w) == w) fn(w);
      return;
    }
    for (Letter c = word.empty() ? 0 : word.front(); c < letters; ++c) {
      if (!word.empty() && c == InverseLetter(word.back())) continue;
      word.push_back(c);
      extend();
      word.pop_back();
    }
  };
  for (Letter first = 0; first < letters; ++first) {
    word = {first};
    extend();
  }
}

std::vector<FreeWord> Necklaces(int rank, int max_len, long budget) {
  std::vector<FreeWord> out;
  for (int n = 1; n < max_len; ++n) ForEachNecklace(rank, n, [&](const FreeWord& w) { out.push_back(w); }, budget);
  return out;
}

namespace {

long Totient(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

TauReport TauEmpirical(int rank, const GenSet& base, const GenSet& other, int T, const TauOptions& options) {
  if (T < 2) Fail(ErrorKind::kInvalidArgument, "T must be at least 2");
  if (base.rank() != rank || other.rank() != rank) Fail(ErrorKind::kInvalidArgument, "rank mismatch");
  // Conjugacy classes are necklaces of the standard coding; both lengths are
  // cycle sums of verified dual potentials on it.
  const GenSet standard = GenSet::Standard(rank);
  GeodesicAutomaton coding = BuildGeodesicAutomaton(standard, -1, 6, options.budget);
  DualPotentialReport base_dual = DualPotential(coding, base, 1, options.verify_cycles_to, options.budget);
  DualPotentialReport other_dual = DualPotential(coding, other, 1, options.verify_cycles_to, options.budget);
  AutomatonShift base_shift = MaximalComponentShift(base_dual.automaton);
  AutomatonShift other_shift = MaximalComponentShift(other_dual.automaton);
  if (base_shift.source_edge != other_shift.source_edge) {
    Fail(ErrorKind::kVerification, "dual codings disagree on their maximal component");
  }
  const Sft& g = base_shift.sft;
  auto as_long = [](const Rational& q) {
    if (q.get_den() != 1) Fail(ErrorKind::kDomain, "dual potential is not integer-valued");
    return q.get_num().get_si();
  };
  std::vector<long> wb, wo;
  for (int e = 0; e < g.edge_count(); ++e) {
    wb.push_back(as_long(base_shift.psi.exact()[static_cast<std::size_t>(e)]));
    wo.push_back(as_long(other_shift.psi.exact()[static_cast<std::size_t>(e)]));
  }
  const int n_max = base.max_length() * (T - 1);

  // closed[d][(b, o)]: closed paths of length d with the given sums.
  using Key = std::pair<long, long>;
  std::vector<std::map<Key, Integer>> closed(static_cast<std::size_t>(n_max) + 1);
  for (int s = 0; s < g.state_count(); ++s) {
    std::vector<std::map<Key, Integer>> row(static_cast<std::size_t>(g.state_count()));
    row[static_cast<std::size_t>(s)][{0, 0}] = 1;
    for (int d = 1; d <= n_max; ++d) {
      std::vector<std::map<Key, Integer>> next(row.size());
      for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        for (const auto& [key, count] : row[static_cast<std::size_t>(ed.from)]) {
          next[static_cast<std::size_t>(ed.to)][{key.first + wb[static_cast<std::size_t>(e)],
                                                 key.second + wo[static_cast<std::size_t>(e)]}] += count;
        }
      }
      row = std::move(next);
      for (const auto& [key, count] : row[static_cast<std::size_t>(s)]) closed[static_cast<std::size_t>(d)][key] += count;
    }
  }
  // Burnside over rotations: classes of length n with sums (b, o) number
  // (1/n) sum_{d | n} phi(n/d) closed[d][(b d/n, o d/n)].
  Integer classes = 0;
  Rational total = 0;
  for (int n = 1; n <= n_max; ++n) {
    std::map<Key, Integer> orbits;
    for (int d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const long reps = n / d;
      for (const auto& [key, count] : closed[static_cast<std::size_t>(d)]) {
        orbits[{key.first * reps, key.second * reps}] += count * Totient(reps);
      }
    }
    for (const auto& [key, weighted] : orbits) {
      if (key.first <= 0 || key.first >= T) continue;
      Integer c = weighted / n;
      classes += c;
      total += Rational(c * key.second, key.first);
    }
  }
  TauReport out;
  out.classes = classes;
  out.max_standard_length = n_max;
  out.tau = total / classes * options.other_scale;
  out.tau.canonicalize();
  return out;
}

}  // namespace mcurve
