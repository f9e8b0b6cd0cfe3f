#include "tsd/design.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "tsd/combinatorics.hpp"

namespace tsd {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep_a, char sep_b = '\0') {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == sep_a || s[i] == sep_b)) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != sep_a && s[j] != sep_b) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, std::string_view what, std::size_t line_no) {
  int value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DesignError("line " + std::to_string(line_no) + ": bad " + std::string(what) +
                      " '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Design::Design(int v, int lambda, std::vector<int> block_sizes, std::vector<Block> blocks)
    : v_(v), lambda_(lambda), block_sizes_(std::move(block_sizes)), blocks_(std::move(blocks)) {
  if (v_ < 1) throw DesignError("v must be at least 1");
  if (lambda_ < 1) throw DesignError("lambda must be at least 1");

  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    std::sort(b.begin(), b.end());
    if (b.size() < 2) {
      throw DesignError("block " + std::to_string(i) + " has fewer than two points");
    }
    if (b.front() < 0 || b.back() >= v_) {
      throw DesignError("block " + std::to_string(i) + " references a point outside [0, " +
                        std::to_string(v_) + ")");
    }
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw DesignError("block " + std::to_string(i) + " repeats a point");
    }
  }

  if (block_sizes_.empty()) {
    block_sizes_ = used_block_sizes();
  } else {
    std::sort(block_sizes_.begin(), block_sizes_.end());
    block_sizes_.erase(std::unique(block_sizes_.begin(), block_sizes_.end()), block_sizes_.end());
    if (block_sizes_.front() < 2) throw DesignError("block sizes must be at least 2");
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const int k = static_cast<int>(blocks_[i].size());
      if (!std::binary_search(block_sizes_.begin(), block_sizes_.end(), k)) {
        throw DesignError("block " + std::to_string(i) + " has size " + std::to_string(k) +
                          " not in the declared K");
      }
    }
  }
}

std::vector<int> Design::used_block_sizes() const {
  std::vector<int> sizes;
  for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

int Design::max_block_size() const noexcept {
  int m = 0;
  for (const auto& b : blocks_) m = std::max(m, static_cast<int>(b.size()));
  return m;
}

bool Design::is_triple_system() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.size() == 3; });
}

Design parse_design(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  int v = 0;
  int lambda = 0;
  std::vector<int> k;
  std::vector<Block> blocks;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      bool seen_v = false;
      bool seen_lambda = false;
      for (auto tok : split(line, ' ', '\t')) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) {
          throw DesignError("line " + std::to_string(line_no) + ": malformed header token '" +
                            std::string(tok) + "'");
        }
        const auto key = tok.substr(0, eq);
        const auto value = tok.substr(eq + 1);
        if (key == "v") {
          v = parse_int(value, "v", line_no);
          seen_v = true;
        } else if (key == "lambda") {
          lambda = parse_int(value, "lambda", line_no);
          seen_lambda = true;
        } else if (key == "k") {
          for (auto part : split(value, ',')) k.push_back(parse_int(part, "block size", line_no));
          if (k.empty()) throw DesignError("line " + std::to_string(line_no) + ": empty k list");
        } else {
          throw DesignError("line " + std::to_string(line_no) + ": unknown header key '" +
                            std::string(key) + "'");
        }
      }
      if (!seen_v || !seen_lambda) {
        throw DesignError("line " + std::to_string(line_no) + ": header needs v= and lambda=");
      }
      if (v < 1 || lambda < 1) {
        throw DesignError("line " + std::to_string(line_no) + ": v and lambda must be positive");
      }
      have_header = true;
      continue;
    }

    Block b;
    for (auto tok : split(line, ' ', '\t')) {
      const int p = parse_int(tok, "point", line_no);
      if (p < 0 || p >= v) {
        throw DesignError("line " + std::to_string(line_no) + ": point " + std::to_string(p) +
                          " out of range [0, " + std::to_string(v) + ")");
      }
      b.push_back(p);
    }
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end()) {
      throw DesignError("line " + std::to_string(line_no) + ": duplicate point in block");
    }
    if (!k.empty() && std::find(k.begin(), k.end(), static_cast<int>(b.size())) == k.end()) {
      throw DesignError("line " + std::to_string(line_no) + ": block size " +
                        std::to_string(b.size()) + " not in declared k");
    }
    blocks.push_back(std::move(b));
  }

  if (!have_header) throw DesignError("missing header line 'v=<int> lambda=<int>'");
  return Design(v, lambda, std::move(k), std::move(blocks));
}

Design read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DesignError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_design(buf.str());
}

std::vector<Block> sorted_blocks(const Design& d) {
  auto blocks = d.blocks();
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

bool same_block_multiset(const Design& a, const Design& b) {
  return a.v() == b.v() && sorted_blocks(a) == sorted_blocks(b);
}

std::string serialize_design(const Design& d) {
  std::string out = "v=" + std::to_string(d.v()) + " lambda=" + std::to_string(d.lambda());
  if (!d.block_sizes().empty()) {
    out += " k=";
    for (std::size_t i = 0; i < d.block_sizes().size(); ++i) {
      if (i) out += ',';
      out += std::to_string(d.block_sizes()[i]);
    }
  }
  out += '\n';
  for (const auto& b : sorted_blocks(d)) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(b[i]);
    }
    out += '\n';
  }
  return out;
}

void write_design_file(const std::filesystem::path& path, const Design& d) {
  std::ofstream out(path);
  if (!out) throw DesignError("cannot write " + path.string());
  out << serialize_design(d);
}

PairCoverageReport validate_pbd(const Design& d) {
  const int v = d.v();
  std::vector<int> count(binomial(v, 2), 0);
  for (const auto& b : d.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = i + 1; j < b.size(); ++j) ++count[pair_index(b[i], b[j])];
    }
  }
  PairCoverageReport report;
  for (int a = 0; a < v; ++a) {
    for (int b = a + 1; b < v; ++b) {
      const int m = count[pair_index(a, b)];
      if (m != d.lambda()) report.deviations.push_back({{a, b}, m});
    }
  }
  report.is_valid = report.deviations.empty();
  return report;
}

AdmissibilityReport admissible(int v, int lambda, std::span<const int> block_sizes) {
  if (v < 2) throw std::invalid_argument("admissible: v must be at least 2");
  if (lambda < 1) throw std::invalid_argument("admissible: lambda must be at least 1");
  if (block_sizes.empty()) throw std::invalid_argument("admissible: K must be nonempty");

  AdmissibilityReport r;
  for (int k : block_sizes) {
    if (k < 2) throw std::invalid_argument("admissible: block sizes must be at least 2");
    r.alpha = std::gcd(r.alpha, static_cast<std::int64_t>(k - 1));
    r.beta = std::gcd(r.beta, static_cast<std::int64_t>(k) * (k - 1));
  }
  const std::int64_t lv = lambda;
  r.global_ok = (lv * v * (v - 1)) % r.beta == 0;
  r.local_ok = (lv * (v - 1)) % r.alpha == 0;
  return r;
}

Design complete_triple_design(int v) {
  if (v < 3) throw std::invalid_argument("complete_triple_design: v must be at least 3");
  std::vector<Block> blocks;
  blocks.reserve(binomial(v, 3));
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      for (int c = b + 1; c < v; ++c) blocks.push_back({a, b, c});
  return Design(v, v - 2, {3}, std::move(blocks));
}

Design scale_copies(const Design& d, int m) {
  if (m < 1) throw std::invalid_argument("scale_copies: m must be at least 1");
  std::vector<Block> blocks;
  blocks.reserve(d.size() * static_cast<std::size_t>(m));
  for (const auto& b : d.blocks())
    for (int i = 0; i < m; ++i) blocks.push_back(b);
  return Design(d.v(), d.lambda() * m, d.block_sizes(), std::move(blocks));
}

Design relabel(const Design& d, std::span<const Point> perm) {
  if (perm.size() != static_cast<std::size_t>(d.v())) {
    throw std::invalid_argument("relabel: permutation has wrong length");
  }
  std::vector<char> seen(perm.size(), 0);
  for (Point p : perm) {
    if (p < 0 || p >= d.v() || seen[p]) throw std::invalid_argument("relabel: not a permutation");
    seen[p] = 1;
  }
  std::vector<Block> blocks;
  blocks.reserve(d.size());
  for (const auto& b : d.blocks()) {
    Block img;
    img.reserve(b.size());
    for (Point p : b) img.push_back(perm[p]);
    blocks.push_back(std::move(img));
  }
  return Design(d.v(), d.lambda(), d.block_sizes(), std::move(blocks));
}

}  // namespace tsd
