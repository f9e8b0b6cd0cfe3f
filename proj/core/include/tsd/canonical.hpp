#pragma once

#include <cstdint>
#include <vector>

#include "tsd/design.hpp"

namespace tsd {

/// Result of canonical labeling. `labeling[x]` is the canonical label of point x;
/// `form` is relabel(d, labeling) with blocks in lexicographic order.
struct CanonicalLabeling {
  Design form;
  std::vector<Point> labeling;
  std::uint64_t automorphisms = 0;
};

/// Canonical labeling by individualization-refinement. Points are coloured
/// by an equivariant refinement over block incidences (block size,
/// multiplicity, colours of the co-block points); every discrete leaf of the
/// search tree yields a relabelling, and the lexicographically least sorted
/// block list among the leaves is the canonical form. Leaves attaining it
/// differ by automorphisms, so their count is the automorphism group order.
///
/// Supports v <= 255 and block sizes <= 8.
CanonicalLabeling canonical_labeling(const Design& d);

Design canonical_form(const Design& d);
std::uint64_t automorphism_count(const Design& d);
bool are_isomorphic(const Design& a, const Design& b);

/// Packs a sorted block into a key whose unsigned order is lexicographic block order.
std::uint64_t block_key(const Block& b);

/// Sorted block keys of `d` (with multiplicity): a compact canonical serialization
/// when applied to a canonical form.
std::vector<std::uint64_t> block_keys(const Design& d);

}  // namespace tsd
