#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "tsd/design.hpp"

namespace tsd {

/// Threefold triple systems on 5, 7 and 9 points whose N_2 is nonsingular.
class SeedCatalog {
 public:
  explicit SeedCatalog(std::map<int, Design> entries);

  static const SeedCatalog& builtin();
  /// Every `*.ts` design file in `dir`, keyed by its point count.
  static SeedCatalog from_directory(const std::filesystem::path& dir);

  bool contains(int u) const { return entries_.count(u) != 0; }
  const Design& at(int u) const;
  const std::map<int, Design>& entries() const noexcept { return entries_; }

 private:
  std::map<int, Design> entries_;
};

/// Built-in seed for u in {5, 7, 9}; throws std::invalid_argument otherwise.
Design seed(int u);

/// Replaces every block U of a lambda=1 PBD by seeds[|U|], relabelled onto U
/// through the order-preserving map {0..|U|-1} -> sorted(U), and returns the
/// multiset union in PBD block order.
Design compose(const Design& pbd, const std::map<int, Design>& seeds);
Design compose(const Design& pbd, const SeedCatalog& seeds);

/// AG(2, q) for prime q: point (x, y) is x*q + y; q^2 + q lines of size q.
Design affine_plane(int q);

enum class ExceptionStatus { composable, possible_exception };

std::string to_string(ExceptionStatus s);

/// Published superset of the odd orders v >= 5 with no known PBD(v, {5,7,9}).
std::span<const int> exception_table() noexcept;

/// Lookup in exception_table(); requires odd v >= 5.
ExceptionStatus exception_status(int v);

}  // namespace tsd
