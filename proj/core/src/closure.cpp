#include "tsd/closure.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "tsd/primes.hpp"

namespace tsd {

namespace {

Design make_seed7() {
  std::vector<Block> blocks = {
      {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 3, 6}, {0, 4, 5},
      {0, 4, 6}, {0, 5, 6}, {1, 2, 4}, {1, 2, 6}, {1, 3, 5}, {1, 3, 6}, {1, 4, 5},
      {1, 5, 6}, {2, 3, 4}, {2, 3, 5}, {2, 4, 6}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6},
  };
  return Design(7, 3, {3}, std::move(blocks));
}

Design make_seed9() {
  std::vector<Block> blocks = {
      {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 5}, {0, 3, 6}, {0, 4, 6}, {0, 4, 7}, {0, 5, 7},
      {0, 5, 8}, {0, 6, 8}, {0, 7, 8}, {1, 2, 4}, {1, 2, 5}, {1, 3, 6}, {1, 3, 8}, {1, 4, 7}, {1, 5, 6},
      {1, 5, 8}, {1, 6, 7}, {1, 7, 8}, {2, 3, 4}, {2, 3, 7}, {2, 4, 8}, {2, 5, 6}, {2, 6, 7}, {2, 6, 8},
      {2, 7, 8}, {3, 4, 5}, {3, 4, 8}, {3, 5, 7}, {3, 5, 8}, {3, 6, 7}, {4, 5, 6}, {4, 5, 7}, {4, 6, 8},
  };
  return Design(9, 3, {3}, std::move(blocks));
}

constexpr std::array<int, 27> kExceptions = {
    11, 13, 15, 17, 19, 23, 27, 29, 31, 33, 39, 43, 51, 59,
    71, 75, 83, 87, 95, 99, 107, 111, 113, 115, 119, 139, 179,
};

}  // namespace

SeedCatalog::SeedCatalog(std::map<int, Design> entries) : entries_(std::move(entries)) {
  for (const auto& [u, d] : entries_) {
    if (d.v() != u) throw std::invalid_argument("SeedCatalog: entry keyed " + std::to_string(u) +
                                                " has v=" + std::to_string(d.v()));
  }
}

const SeedCatalog& SeedCatalog::builtin() {
  static const SeedCatalog catalog(std::map<int, Design>{
      {5, complete_triple_design(5)},
      {7, make_seed7()},
      {9, make_seed9()},
  });
  return catalog;
}

SeedCatalog SeedCatalog::from_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("seed directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ts") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::map<int, Design> entries;
  for (const auto& f : files) {
    Design d = read_design_file(f);
    const int u = d.v();
    if (!entries.emplace(u, std::move(d)).second) {
      throw std::invalid_argument("seed directory holds two designs on " + std::to_string(u) + " points");
    }
  }
  return SeedCatalog(std::move(entries));
}

const Design& SeedCatalog::at(int u) const {
  auto it = entries_.find(u);
  if (it == entries_.end()) throw std::invalid_argument("no seed of order " + std::to_string(u));
  return it->second;
}

Design seed(int u) {
  if (u != 5 && u != 7 && u != 9) {
    throw std::invalid_argument("seed: order must be 5, 7 or 9, got " + std::to_string(u));
  }
  return SeedCatalog::builtin().at(u);
}

Design compose(const Design& pbd, const std::map<int, Design>& seeds) {
  if (pbd.lambda() != 1) throw std::invalid_argument("compose: master PBD must have index 1");
  if (!validate_pbd(pbd).is_valid) throw std::invalid_argument("compose: master PBD fails pair coverage");

  const Design* reference = nullptr;
  for (int u : pbd.used_block_sizes()) {
    auto it = seeds.find(u);
    if (it == seeds.end()) throw std::invalid_argument("compose: missing seed of order " + std::to_string(u));
    const Design& s = it->second;
    if (s.v() != u) throw std::invalid_argument("compose: seed keyed " + std::to_string(u) + " has wrong v");
    if (!validate_pbd(s).is_valid) {
      throw std::invalid_argument("compose: seed of order " + std::to_string(u) + " fails pair coverage");
    }
    if (reference == nullptr) {
      reference = &s;
    } else if (s.lambda() != reference->lambda() || s.block_sizes() != reference->block_sizes()) {
      throw std::invalid_argument("compose: seeds disagree on lambda or K");
    }
  }
  if (reference == nullptr) return Design(pbd.v(), 1, {}, {});

  std::vector<Block> blocks;
  for (const auto& master : pbd.blocks()) {
    const Design& s = seeds.at(static_cast<int>(master.size()));
    for (const auto& b : s.blocks()) {
      Block img;
      img.reserve(b.size());
      for (Point p : b) img.push_back(master[static_cast<std::size_t>(p)]);
      blocks.push_back(std::move(img));
    }
  }
  return Design(pbd.v(), reference->lambda(), reference->block_sizes(), std::move(blocks));
}

Design compose(const Design& pbd, const SeedCatalog& seeds) { return compose(pbd, seeds.entries()); }

Design affine_plane(int q) {
  if (q < 2 || !is_prime(static_cast<std::uint64_t>(q))) {
    throw std::invalid_argument("affine_plane: q must be prime, got " + std::to_string(q));
  }
  auto point = [q](int x, int y) { return x * q + y; };
  std::vector<Block> lines;
  lines.reserve(static_cast<std::size_t>(q * q + q));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      Block line;
      for (int x = 0; x < q; ++x) line.push_back(point(x, (a * x + b) % q));
      lines.push_back(std::move(line));
    }
  }
  for (int c = 0; c < q; ++c) {
    Block line;
    for (int y = 0; y < q; ++y) line.push_back(point(c, y));
    lines.push_back(std::move(line));
  }
  return Design(q * q, 1, {q}, std::move(lines));
}

std::string to_string(ExceptionStatus s) {
  return s == ExceptionStatus::composable ? "composable" : "possible-exception";
}

std::span<const int> exception_table() noexcept { return kExceptions; }

ExceptionStatus exception_status(int v) {
  if (v < 5 || v % 2 == 0) {
    throw std::invalid_argument("exception_status: v must be odd and at least 5, got " + std::to_string(v));
  }
  return std::binary_search(kExceptions.begin(), kExceptions.end(), v) ? ExceptionStatus::possible_exception
                                                                       : ExceptionStatus::composable;
}

}  // namespace tsd
