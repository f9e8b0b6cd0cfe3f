#include "tsd/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tsd {

namespace {

constexpr int kMaxPoints = 255;
constexpr std::size_t kMaxBlockSize = 8;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Structure {
  int v = 0;
  std::vector<Block> blocks;  // distinct
  std::vector<int> mult;
  std::vector<std::vector<int>> incident;
};

Structure analyse(const Design& d) {
  Structure s;
  s.v = d.v();
  for (const auto& b : sorted_blocks(d)) {
    if (!s.blocks.empty() && s.blocks.back() == b) {
      ++s.mult.back();
    } else {
      s.blocks.push_back(b);
      s.mult.push_back(1);
    }
  }
  s.incident.assign(static_cast<std::size_t>(s.v), {});
  for (std::size_t i = 0; i < s.blocks.size(); ++i)
    for (Point p : s.blocks[i]) s.incident[p].push_back(static_cast<int>(i));
  return s;
}

// Splits colour classes until stable. Colours are ranks 0..ncolors-1 and
// the split of a class is ordered by a label-independent signature, so the
// result commutes with point relabelling.
void refine(const Structure& s, std::vector<int>& color, int& ncolors) {
  const auto v = static_cast<std::size_t>(s.v);
  std::vector<std::uint64_t> sig(v);
  std::vector<std::uint64_t> entries;
  std::vector<int> others;
  std::vector<int> order(v);
  std::vector<int> next(v);
  while (ncolors < s.v) {
    for (std::size_t x = 0; x < v; ++x) {
      entries.clear();
      for (int bi : s.incident[x]) {
        const Block& b = s.blocks[static_cast<std::size_t>(bi)];
        others.clear();
        for (Point p : b)
          if (static_cast<std::size_t>(p) != x) others.push_back(color[static_cast<std::size_t>(p)]);
        std::sort(others.begin(), others.end());
        std::uint64_t h = mix((static_cast<std::uint64_t>(b.size()) << 32) ^
                              static_cast<std::uint64_t>(s.mult[static_cast<std::size_t>(bi)]));
        for (int c : others) h = mix(h ^ static_cast<std::uint64_t>(c + 1));
        entries.push_back(h);
      }
      std::sort(entries.begin(), entries.end());
      std::uint64_t h = mix(entries.size());
      for (auto e : entries) h = mix(h + e);
      sig[x] = h;
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (color[a] != color[b]) return color[a] < color[b];
      return sig[a] < sig[b];
    });
    int count = 0;
    for (std::size_t i = 0; i < v; ++i) {
      if (i > 0 && (color[order[i]] != color[order[i - 1]] || sig[order[i]] != sig[order[i - 1]])) ++count;
      next[order[i]] = count;
    }
    ++count;
    if (count == ncolors) break;
    color.swap(next);
    ncolors = count;
  }
}

struct SearchState {
  const Structure* s = nullptr;
  std::vector<std::uint64_t> best;
  std::vector<int> best_labeling;
  std::uint64_t hits = 0;
  std::vector<std::uint64_t> scratch;
  Block image;
};

void visit_leaf(SearchState& st, const std::vector<int>& color) {
  const Structure& s = *st.s;
  st.scratch.clear();
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    st.image.clear();
    for (Point p : s.blocks[i]) st.image.push_back(color[static_cast<std::size_t>(p)]);
    std::sort(st.image.begin(), st.image.end());
    const std::uint64_t key = block_key(st.image);
    for (int m = 0; m < s.mult[i]; ++m) st.scratch.push_back(key);
  }
  std::sort(st.scratch.begin(), st.scratch.end());
  if (st.best.empty() || st.scratch < st.best) {
    st.best = st.scratch;
    st.best_labeling = color;
    st.hits = 1;
  } else if (st.scratch == st.best) {
    ++st.hits;
  }
}

void search(SearchState& st, std::vector<int> color, int ncolors) {
  const Structure& s = *st.s;
  refine(s, color, ncolors);
  if (ncolors == s.v) {
    visit_leaf(st, color);
    return;
  }
  std::vector<int> cell_size(static_cast<std::size_t>(ncolors), 0);
  for (int c : color) ++cell_size[static_cast<std::size_t>(c)];
  int target = 0;
  while (cell_size[static_cast<std::size_t>(target)] == 1) ++target;

  std::vector<int> child(color.size());
  for (std::size_t x = 0; x < color.size(); ++x) {
    if (color[x] != target) continue;
    for (std::size_t y = 0; y < color.size(); ++y) {
      child[y] = color[y] < target ? color[y] : (y == x ? target : color[y] + 1);
    }
    search(st, child, ncolors + 1);
  }
}

}  // namespace

std::uint64_t block_key(const Block& b) {
  if (b.size() > kMaxBlockSize) throw std::invalid_argument("block_key: block longer than 8 points");
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < kMaxBlockSize; ++i) {
    key <<= 8;
    if (i < b.size()) key |= static_cast<std::uint64_t>(b[i] + 1);
  }
  return key;
}

std::vector<std::uint64_t> block_keys(const Design& d) {
  std::vector<std::uint64_t> keys;
  keys.reserve(d.size());
  for (const auto& b : d.blocks()) keys.push_back(block_key(b));
  std::sort(keys.begin(), keys.end());
  return keys;
}

CanonicalLabeling canonical_labeling(const Design& d) {
  if (d.v() > kMaxPoints) throw std::invalid_argument("canonical_labeling: more than 255 points");
  if (static_cast<std::size_t>(d.max_block_size()) > kMaxBlockSize) {
    throw std::invalid_argument("canonical_labeling: blocks longer than 8 points");
  }
  const Structure s = analyse(d);
  SearchState st;
  st.s = &s;
  search(st, std::vector<int>(static_cast<std::size_t>(d.v()), 0), d.v() > 0 ? 1 : 0);

  std::vector<Point> labeling(st.best_labeling.begin(), st.best_labeling.end());
  const Design image = relabel(d, labeling);
  return {Design(d.v(), d.lambda(), d.block_sizes(), sorted_blocks(image)), std::move(labeling), st.hits};
}

Design canonical_form(const Design& d) { return canonical_labeling(d).form; }

std::uint64_t automorphism_count(const Design& d) { return canonical_labeling(d).automorphisms; }

bool are_isomorphic(const Design& a, const Design& b) {
  if (a.v() != b.v() || a.size() != b.size()) return false;
  return block_keys(canonical_form(a)) == block_keys(canonical_form(b));
}

}  // namespace tsd
