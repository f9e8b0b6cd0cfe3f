#include "tsd/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tsd/canonical.hpp"
#include "tsd/combinatorics.hpp"
#include "tsd/incidence.hpp"

namespace tsd {

namespace {

using Keys = std::vector<std::uint64_t>;

// All lambda-regular multigraphs on n labelled vertices with edge
// multiplicity <= lambda, each produced once: the first vertex with spare
// degree takes a partner, partners of one vertex are nondecreasing.
void multigraphs(int n, int lambda, std::vector<int>& spare, std::vector<int>& mult, Block& endpoints,
                 int last_i, int last_j, const std::function<void(const Block&)>& emit) {
  int i = 0;
  while (i < n && spare[i] == 0) ++i;
  if (i == n) {
    emit(endpoints);
    return;
  }
  for (int j = (i == last_i ? last_j : i + 1); j < n; ++j) {
    if (spare[j] == 0 || mult[i * n + j] == lambda) continue;
    --spare[i];
    --spare[j];
    ++mult[i * n + j];
    endpoints.push_back(i);
    endpoints.push_back(j);
    multigraphs(n, lambda, spare, mult, endpoints, i, j, emit);
    endpoints.resize(endpoints.size() - 2);
    --mult[i * n + j];
    ++spare[j];
    ++spare[i];
  }
}

// Non-isomorphic choices for the blocks through point 0, as partial designs.
std::vector<Design> root_configurations(int v, int lambda) {
  const int n = v - 1;
  std::map<Keys, Design> reps;
  std::vector<int> spare(static_cast<std::size_t>(n), lambda);
  std::vector<int> mult(static_cast<std::size_t>(n * n), 0);
  Block endpoints;
  multigraphs(n, lambda, spare, mult, endpoints, -1, -1, [&](const Block& ends) {
    std::vector<Block> edges;
    for (std::size_t e = 0; e < ends.size(); e += 2) edges.push_back({ends[e], ends[e + 1]});
    Design graph(n, 1, {2}, std::move(edges));
    Design form = canonical_form(graph);
    auto keys = block_keys(form);
    reps.try_emplace(std::move(keys), std::move(form));
  });

  std::vector<Design> roots;
  for (const auto& [keys, graph] : reps) {
    std::vector<Block> blocks;
    for (const auto& e : graph.blocks()) blocks.push_back({0, e[0] + 1, e[1] + 1});
    roots.emplace_back(v, lambda, std::vector<int>{3}, std::move(blocks));
  }
  return roots;
}

// Per-point isomorphism invariant: how many distinct blocks through the point
// occur with multiplicity 1, 2, ..., lambda.
std::vector<std::vector<int>> multiplicity_profiles(int v, int lambda, std::vector<Block> blocks) {
  std::sort(blocks.begin(), blocks.end());
  std::vector<std::vector<int>> profile(static_cast<std::size_t>(v), std::vector<int>(static_cast<std::size_t>(lambda), 0));
  for (std::size_t i = 0; i < blocks.size();) {
    std::size_t j = i;
    while (j < blocks.size() && blocks[j] == blocks[i]) ++j;
    const auto m = std::min<std::size_t>(j - i, static_cast<std::size_t>(lambda));
    for (Point p : blocks[i]) ++profile[p][m - 1];
    i = j;
  }
  return profile;
}

class Completer {
 public:
  Completer(const Design& root, std::function<void(Design)> accept)
      : v_(root.v()), lambda_(root.lambda()), blocks_(root.blocks()), accept_(std::move(accept)) {
    residual_.assign(binomial(v_, 2), lambda_);
    for (const auto& b : blocks_) {
      --residual_[pair_index(b[0], b[1])];
      --residual_[pair_index(b[0], b[2])];
      --residual_[pair_index(b[1], b[2])];
    }
    for (Point x = 1; x < v_; ++x)
      for (Point y = x + 1; y < v_; ++y) pairs_.push_back({x, y});
  }

  std::uint64_t run() {
    if (pairs_.empty()) {
      finish();
    } else {
      extend(0, pairs_[0].second + 1);
    }
    return completions_;
  }

 private:
  int& res(Point a, Point b) { return residual_[pair_index(std::min(a, b), std::max(a, b))]; }

  void extend(std::size_t p, Point min_z) {
    if (res(pairs_[p].first, pairs_[p].second) == 0) {
      ++p;
      while (p < pairs_.size() && res(pairs_[p].first, pairs_[p].second) == 0) ++p;
      if (p == pairs_.size()) {
        finish();
        return;
      }
      min_z = pairs_[p].second + 1;
    }
    // Every pair lexicographically before (x, y) is saturated, so z > y.
    const auto [x, y] = pairs_[p];
    int& rxy = res(x, y);
    for (Point z = min_z; z < v_; ++z) {
      int& rxz = res(x, z);
      int& ryz = res(y, z);
      if (rxz == 0 || ryz == 0) continue;
      --rxy;
      --rxz;
      --ryz;
      blocks_.push_back({x, y, z});
      extend(p, z);
      blocks_.pop_back();
      ++ryz;
      ++rxz;
      ++rxy;
    }
  }

  void finish() {
    ++completions_;
    accept_(Design(v_, lambda_, {3}, blocks_));
  }

  int v_;
  int lambda_;
  std::vector<Block> blocks_;
  std::function<void(Design)> accept_;
  std::vector<int> residual_;
  std::vector<std::pair<Point, Point>> pairs_;
  std::uint64_t completions_ = 0;
};

struct CheckpointState {
  std::map<Keys, ClassRepresentative> classes;
  std::vector<Design> pending;
};

void write_checkpoint(const std::filesystem::path& path, int v, int lambda, const CheckpointState& state) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << "# tsd census checkpoint v=" << v << " lambda=" << lambda << '\n';
    for (const auto& [keys, rep] : state.classes) {
      out << "# class aut=" << rep.automorphisms << '\n' << serialize_design(rep.canonical);
    }
    for (const auto& root : state.pending) out << "# partial\n" << serialize_design(root);
  }
  std::filesystem::rename(tmp, path);
}

CheckpointState read_checkpoint(const std::filesystem::path& path, int v, int lambda) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path.string());
  CheckpointState state;
  std::string line;
  std::string section;
  std::string kind;
  std::uint64_t aut = 0;
  auto flush = [&] {
    if (kind.empty()) return;
    Design d = parse_design(section);
    if (d.v() != v || d.lambda() != lambda) throw std::runtime_error("checkpoint parameters do not match");
    if (kind == "class") {
      auto keys = block_keys(d);
      state.classes.try_emplace(std::move(keys), ClassRepresentative{std::move(d), aut});
    } else {
      state.pending.push_back(std::move(d));
    }
    section.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind("# class", 0) == 0) {
      flush();
      kind = "class";
      const auto pos = line.find("aut=");
      aut = pos == std::string::npos ? 0 : std::stoull(line.substr(pos + 4));
    } else if (line.rfind("# partial", 0) == 0) {
      flush();
      kind = "partial";
    } else {
      section += line;
      section += '\n';
    }
  }
  flush();
  return state;
}

void check_parameters(int v, int lambda) {
  if (v < 3 || lambda < 1) throw std::invalid_argument("enumerate: need v >= 3 and lambda >= 1");
  const int k3[] = {3};
  if (!admissible(v, lambda, k3).ok()) {
    throw std::invalid_argument("enumerate: TS_" + std::to_string(lambda) + "(" + std::to_string(v) +
                                ") is not admissible");
  }
}

}  // namespace

std::vector<ClassRepresentative> enumerate_classes(int v, int lambda, const EnumerationOptions& options) {
  check_parameters(v, lambda);

  CheckpointState state;
  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    state = read_checkpoint(*options.checkpoint, v, lambda);
  } else {
    state.pending = root_configurations(v, lambda);
  }

  const std::vector<Design> roots = state.pending;
  std::vector<char> done(roots.size(), 0);
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> completions{0};
  std::size_t roots_done = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= roots.size()) return;
      std::map<Keys, ClassRepresentative> found;
      Completer completer(roots[r], [&](Design d) {
        const auto profile = multiplicity_profiles(v, lambda, d.blocks());
        if (*std::min_element(profile.begin(), profile.end()) != profile[0]) return;
        CanonicalLabeling cl = canonical_labeling(d);
        auto keys = block_keys(cl.form);
        found.try_emplace(std::move(keys), ClassRepresentative{std::move(cl.form), cl.automorphisms});
      });
      completions += completer.run();

      std::lock_guard lock(mu);
      for (auto& [keys, rep] : found) state.classes.try_emplace(keys, std::move(rep));
      done[r] = 1;
      ++roots_done;
      if (options.checkpoint) {
        CheckpointState snapshot;
        snapshot.classes = state.classes;
        for (std::size_t i = 0; i < roots.size(); ++i)
          if (!done[i]) snapshot.pending.push_back(roots[i]);
        write_checkpoint(*options.checkpoint, v, lambda, snapshot);
      }
      if (options.progress) {
        options.progress({roots_done, roots.size(), state.classes.size(), completions.load()});
      }
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<ClassRepresentative> out;
  out.reserve(state.classes.size());
  for (auto& [keys, rep] : state.classes) out.push_back(std::move(rep));
  return out;
}

std::vector<CensusRecord> enumerate_ts(int v, int lambda, const EnumerationOptions& options) {
  auto classes = enumerate_classes(v, lambda, options);
  std::vector<CensusRecord> census(classes.size());
  const std::uint64_t primes[] = {2, 3};

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= classes.size()) return;
      CensusRecord& rec = census[i];
      rec.canonical = std::move(classes[i].canonical);
      rec.automorphisms = classes[i].automorphisms;
      rec.rank_report = rank_certified(build_incidence(rec.canonical, 2).to_dense(), primes, options.seed);
      rec.repeated = repeated_blocks(rec.canonical);
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return census;
}

SpectrumReport summarize_spectrum(int v, int lambda, std::span<const CensusRecord> census) {
  SpectrumReport s;
  s.v = v;
  s.lambda = lambda;
  s.class_count = census.size();
  for (const auto& rec : census) {
    s.rank_multiset.push_back(rec.rank_report.q_rank);
    if (rec.rank_report.nonsingular) ++s.nonsingular_count;
  }
  std::sort(s.rank_multiset.begin(), s.rank_multiset.end());
  s.distinct_ranks = s.rank_multiset;
  s.distinct_ranks.erase(std::unique(s.distinct_ranks.begin(), s.distinct_ranks.end()), s.distinct_ranks.end());
  return s;
}

SpectrumReport rank_spectrum(int v, int lambda, const EnumerationOptions& options) {
  const auto census = enumerate_ts(v, lambda, options);
  return summarize_spectrum(v, lambda, census);
}

std::string census_summary_tsv(std::span<const CensusRecord> census) {
  std::ostringstream out;
  out << "class_id\tq_rank\trank_mod2\trank_mod3\taut_order\trepeated_blocks\n";
  for (std::size_t i = 0; i < census.size(); ++i) {
    const auto& rec = census[i];
    const auto& pr = rec.rank_report.p_ranks;
    out << i << '\t' << rec.rank_report.q_rank << '\t' << (pr.count(2) ? pr.at(2) : 0) << '\t'
        << (pr.count(3) ? pr.at(3) : 0) << '\t' << rec.automorphisms << '\t' << rec.repeated.size() << '\n';
  }
  return out.str();
}

void write_census(const std::filesystem::path& dir, std::span<const CensusRecord> census) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < census.size(); ++i) {
    write_design_file(dir / ("class_" + std::to_string(i) + ".ts"), census[i].canonical);
  }
  std::ofstream out(dir / "summary.tsv");
  if (!out) throw std::runtime_error("cannot write " + (dir / "summary.tsv").string());
  out << census_summary_tsv(census);
}

std::vector<RankDisagreement> compare_q_and_p_ranks(std::span<const CensusRecord> census,
                                                    std::span<const std::uint64_t> primes) {
  std::vector<RankDisagreement> out;
  for (std::size_t i = 0; i < census.size(); ++i) {
    const auto n2 = build_incidence(census[i].canonical, 2).to_dense();
    for (auto p : primes) {
      const std::size_t pr = rank_mod_p(n2, p);
      if (pr != census[i].rank_report.q_rank) out.push_back({i, p, census[i].rank_report.q_rank, pr});
    }
  }
  return out;
}

}  // namespace tsd
