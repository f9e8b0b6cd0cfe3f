#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "tsd/closure.hpp"
#include "tsd/combinatorics.hpp"
#include "tsd/design.hpp"
#include "tsd/enumerator.hpp"
#include "tsd/exact_rank.hpp"
#include "tsd/incidence.hpp"
#include "tsd/primes.hpp"
#include "tsd/trades.hpp"

namespace tsd::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Design load_design(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("no such file: " + path);
  try {
    return read_design_file(path);
  } catch (const DesignError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
}

/// "q" or a prime, as given to --field.
Field parse_field(const std::string& token) {
  if (token == "q" || token == "Q") return Field::rational();
  std::uint64_t p = 0;
  try {
    std::size_t used = 0;
    p = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw UsageError("--field expects q or a prime, got '" + token + "'");
  }
  if (!is_prime(p)) throw UsageError("--field " + token + " is not prime");
  return Field::prime(p);
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

std::string format_block(const Block& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? " " : "") + std::to_string(b[i]);
  return s;
}

std::string sparse_vector(const std::vector<std::int64_t>& vec) {
  std::string s;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (vec[i] == 0) continue;
    if (!s.empty()) s += ' ';
    s += std::to_string(i) + ':' + (vec[i] > 0 ? "+" : "") + std::to_string(vec[i]);
  }
  return s;
}

void emit_design(std::ostream& out, const Design& d, const std::string& path) {
  if (path.empty()) {
    out << serialize_design(d);
  } else {
    write_design_file(path, d);
  }
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      sizes.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("--k expects comma-separated integers, got '" + csv + "'");
    }
  }
  if (sizes.empty()) throw UsageError("--k is empty");
  return sizes;
}

}  // namespace

CommandOutcome run(const std::vector<std::string>& args, std::ostream& err) {
  std::ostringstream out;
  CLI::App app{"Triple systems, pairwise balanced designs and ranks of their pair incidence matrices", "tsd"};
  app.require_subcommand(1);

  std::function<int()> action;
  std::uint64_t seed = 0;
  auto add_seed = [&seed](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed for randomized steps (echoed in output)")->capture_default_str();
  };

  // validate
  std::string design_path;
  auto* validate = app.add_subcommand("validate", "Check pair coverage of a design file");
  validate->add_option("--design", design_path, "Design file")->required();
  validate->callback([&] {
    action = [&] {
      const Design d = load_design(design_path);
      const auto report = validate_pbd(d);
      out << "valid=" << (report.is_valid ? "true" : "false") << " v=" << d.v() << " lambda=" << d.lambda()
          << " blocks=" << d.size() << '\n';
      for (const auto& dev : report.deviations) {
        out << "pair " << dev.pair.first << ' ' << dev.pair.second << " multiplicity=" << dev.multiplicity << '\n';
      }
      return report.is_valid ? ok : property_failed;
    };
  });

  // admissible
  int v = 0;
  int lambda = 3;
  std::string sizes_csv = "3";
  auto* adm = app.add_subcommand("admissible", "Global and local divisibility conditions");
  adm->add_option("--v", v, "Number of points")->required();
  adm->add_option("--lambda", lambda, "Index")->capture_default_str();
  adm->add_option("--k", sizes_csv, "Block sizes, comma-separated")->capture_default_str();
  adm->callback([&] {
    action = [&] {
      const auto sizes = parse_sizes(sizes_csv);
      AdmissibilityReport r;
      try {
        r = admissible(v, lambda, sizes);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      out << "alpha=" << r.alpha << " beta=" << r.beta << " global=" << (r.global_ok ? "ok" : "fail")
          << " local=" << (r.local_ok ? "ok" : "fail") << " admissible=" << (r.ok() ? "true" : "false") << '\n';
      return r.ok() ? ok : property_failed;
    };
  });

  // n2
  int subset_size = 2;
  std::string out_path;
  auto* n2 = app.add_subcommand("n2", "Emit N_s in sparse triple format");
  n2->add_option("--design", design_path, "Design file")->required();
  n2->add_option("--s", subset_size, "Subset size")->capture_default_str();
  n2->add_option("--out", out_path, "Write to this file instead of standard output");
  n2->callback([&] {
    action = [&] {
      const Design d = load_design(design_path);
      if (subset_size < 1 || subset_size > d.max_block_size()) {
        throw UsageError("--s must lie in [1, " + std::to_string(d.max_block_size()) + "]");
      }
      const std::string text = format_sparse_triples(build_incidence(d, subset_size).to_dense());
      if (out_path.empty()) {
        out << text;
      } else {
        write_text(out_path, text);
      }
      return ok;
    };
  });

  // rank
  std::string matrix_path;
  std::vector<std::string> fields;
  bool require_nonsingular = false;
  auto* rank = app.add_subcommand("rank", "Certified rank of N_s over Q and prime fields");
  auto* design_opt = rank->add_option("--design", design_path, "Design file");
  auto* matrix_opt = rank->add_option("--matrix", matrix_path, "Matrix in sparse triple format");
  design_opt->excludes(matrix_opt);
  rank->add_option("--s", subset_size, "Subset size for --design")->capture_default_str();
  rank->add_option("--field", fields, "q, 2, 3 or any prime; repeatable");
  rank->add_flag("--require-nonsingular", require_nonsingular, "Exit 1 unless N_s is square of full rank over Q");
  add_seed(rank);
  rank->callback([&] {
    action = [&] {
      IntMatrix m;
      if (!matrix_path.empty()) {
        try {
          m = parse_sparse_triples(read_text(matrix_path));
        } catch (const std::invalid_argument& e) {
          throw UsageError(matrix_path + ": " + e.what());
        }
      } else if (!design_path.empty()) {
        const Design d = load_design(design_path);
        if (subset_size < 1 || subset_size > d.max_block_size()) {
          throw UsageError("--s must lie in [1, " + std::to_string(d.max_block_size()) + "]");
        }
        m = build_incidence(d, subset_size).to_dense();
      } else {
        throw UsageError("rank needs --design or --matrix");
      }

      if (fields.empty()) fields.push_back("q");
      bool want_q = false;
      std::vector<std::uint64_t> primes;
      for (const auto& f : fields) {
        const Field field = parse_field(f);
        if (field.is_rational()) {
          want_q = true;
        } else if (std::find(primes.begin(), primes.end(), field.p) == primes.end()) {
          primes.push_back(field.p);
        }
      }
      std::sort(primes.begin(), primes.end());

      if (want_q || require_nonsingular) {
        const RankReport r = rank_certified(m, primes, seed);
        out << "q_rank=" << r.q_rank << " nonsingular=" << (r.nonsingular ? "true" : "false") << '\n';
        for (const auto& [p, pr] : r.p_ranks) out << "p_rank[" << p << "]=" << pr << '\n';
        out << "rows=" << r.rows << " cols=" << r.cols << '\n';
        out << "method=" << to_string(r.method) << '\n';
        out << "prng_seed=" << r.prng_seed << '\n';
        out << "screen_prime=" << r.screen_prime << '\n';
        return require_nonsingular && !r.nonsingular ? property_failed : ok;
      }
      for (auto p : primes) out << "p_rank[" << p << "]=" << rank_mod_p(m, p) << '\n';
      out << "rows=" << m.rows() << " cols=" << m.cols() << '\n';
      out << "prng_seed=" << seed << '\n';
      return ok;
    };
  });

  // compose
  std::string pbd_path;
  std::string seeds_source = "builtin";
  auto* comp = app.add_subcommand("compose", "Replace each block of a PBD(v,L) by a seed design");
  comp->add_option("--pbd", pbd_path, "Master PBD file (index 1)")->required();
  comp->add_option("--seeds", seeds_source, "builtin, or a directory of seed design files")->capture_default_str();
  comp->add_option("--out", out_path, "Write the result here instead of standard output");
  comp->callback([&] {
    action = [&] {
      const Design pbd = load_design(pbd_path);
      std::optional<SeedCatalog> from_dir;
      if (seeds_source != "builtin") {
        try {
          from_dir = SeedCatalog::from_directory(seeds_source);
        } catch (const std::exception& e) {
          throw UsageError(e.what());
        }
      }
      const SeedCatalog& catalog = from_dir ? *from_dir : SeedCatalog::builtin();
      Design result;
      try {
        result = compose(pbd, catalog);
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return property_failed;
      }
      emit_design(out, result, out_path);
      return ok;
    };
  });

  // seeds
  std::string out_dir;
  int seed_order = 0;
  auto* seeds = app.add_subcommand("seeds", "Emit the built-in seed designs");
  seeds->add_option("--out", out_dir, "Directory for seed<v>.ts files");
  seeds->add_option("--v", seed_order, "Emit only the seed with this many points");
  seeds->callback([&] {
    action = [&] {
      std::vector<int> orders;
      if (seed_order != 0) {
        if (!SeedCatalog::builtin().contains(seed_order)) {
          throw UsageError("no built-in seed with v=" + std::to_string(seed_order));
        }
        orders.push_back(seed_order);
      } else {
        for (const auto& [u, d] : SeedCatalog::builtin().entries()) orders.push_back(u);
      }
      for (int u : orders) {
        const Design& d = SeedCatalog::builtin().at(u);
        if (out_dir.empty()) {
          if (orders.size() > 1) out << "# seed v=" << u << '\n';
          out << serialize_design(d);
        } else {
          fs::create_directories(out_dir);
          const auto path = fs::path(out_dir) / ("seed" + std::to_string(u) + ".ts");
          write_design_file(path, d);
          out << path.string() << '\n';
        }
      }
      return ok;
    };
  });

  // fixture affine-plane
  int q = 0;
  auto* fixture = app.add_subcommand("fixture", "Emit a fixture design");
  fixture->require_subcommand(1);
  auto* plane = fixture->add_subcommand("affine-plane", "AG(2,q) as a PBD(q^2,{q})");
  plane->add_option("--q", q, "Prime order")->required();
  plane->add_option("--out", out_path, "Write here instead of standard output");
  plane->callback([&] {
    action = [&] {
      Design d;
      try {
        d = affine_plane(q);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit_design(out, d, out_path);
      return ok;
    };
  });

  // trades
  auto* trades = app.add_subcommand("trades", "Quadrilateral trades and repeated blocks with kernel vectors");
  trades->add_option("--design", design_path, "Triple system file")->required();
  trades->callback([&] {
    action = [&] {
      const Design d = load_design(design_path);
      if (!d.is_triple_system()) throw UsageError("trades: design has blocks of size other than 3");
      const auto found = find_quadrilateral_trades(d);
      out << "trades=" << found.size() << '\n';
      for (std::size_t i = 0; i < found.size(); ++i) {
        const auto& t = found[i];
        out << "trade " << i << '\n';
        out << "side_a\n";
        for (const auto& b : t.side_a) out << format_block(b) << '\n';
        out << "side_b\n";
        for (const auto& b : t.side_b) out << format_block(b) << '\n';
        out << "kernel " << sparse_vector(trade_to_kernel(t, d).vector) << '\n';
      }
      const auto repeats = repeated_blocks(d);
      out << "repeated=" << repeats.size() << '\n';
      for (const auto& r : repeats) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < d.size() && cols.size() < 2; ++j)
          if (d[j] == r.block) cols.push_back(j);
        out << "repeat " << format_block(r.block) << " multiplicity=" << r.multiplicity << '\n';
        out << "kernel " << sparse_vector(repeat_to_kernel(d, cols[0], cols[1]).vector) << '\n';
      }
      return ok;
    };
  });

  // pencil-check
  auto* pencil = app.add_subcommand("pencil-check", "Check the F_2 pencil and F_3 Gram kernel witnesses");
  pencil->add_option("--design", design_path, "Triple system file")->required();
  pencil->callback([&] {
    action = [&] {
      const Design d = load_design(design_path);
      if (!d.is_triple_system() || !validate_pbd(d).is_valid) {
        err << "pencil-check: not a valid triple system\n";
        return property_failed;
      }
      const auto incidence = build_incidence(d, 2);
      const IntMatrix n = incidence.to_dense();
      IntMatrix stacked(static_cast<std::size_t>(d.v()), n.rows());
      bool all_in_kernel = true;
      for (Point x = 0; x < d.v(); ++x) {
        const auto w = pencil_vector(x, d.v());
        all_in_kernel = all_in_kernel && verify_kernel_vector(w.vector, n, Side::left, w.field);
        for (std::size_t i = 0; i < w.vector.size(); ++i) stacked(static_cast<std::size_t>(x), i) = w.vector[i];
      }
      const std::size_t pencil_rank = rank_mod_p(stacked, 2);
      const auto g = gram_f3_witness(d);
      const bool gram_ok = verify_kernel_vector(g.vector, gram(incidence), Side::right, g.field);
      out << "pencils_in_left_kernel_mod2=" << (all_in_kernel ? "true" : "false") << '\n';
      out << "pencil_rank_mod2=" << pencil_rank << " expected=" << d.v() - 1 << '\n';
      out << "ones_in_gram_kernel_mod3=" << (gram_ok ? "true" : "false") << '\n';
      const bool pass = all_in_kernel && pencil_rank == static_cast<std::size_t>(d.v() - 1) && gram_ok;
      return pass ? ok : property_failed;
    };
  });

  // enumerate / spectrum
  int threads = 1;
  std::string checkpoint;
  bool quiet = false;
  auto* enumerate = app.add_subcommand("enumerate", "Isomorph-free census of TS_lambda(v)");
  enumerate->add_option("--v", v, "Number of points")->required();
  enumerate->add_option("--lambda", lambda, "Index")->capture_default_str();
  enumerate->add_option("--out", out_dir, "Census directory")->required();
  enumerate->add_option("--threads", threads, "Worker threads")->capture_default_str();
  enumerate->add_option("--checkpoint", checkpoint, "Resumable checkpoint file");
  enumerate->add_flag("--quiet", quiet, "No progress on standard error");
  add_seed(enumerate);

  std::vector<std::uint64_t> compare_primes = {5, 7, 11, 13};
  auto* spectrum = app.add_subcommand("spectrum", "Rank multiset of N_2 over all TS_lambda(v)");
  spectrum->add_option("--v", v, "Number of points")->required();
  spectrum->add_option("--lambda", lambda, "Index")->capture_default_str();
  spectrum->add_option("--threads", threads, "Worker threads")->capture_default_str();
  spectrum->add_option("--checkpoint", checkpoint, "Resumable checkpoint file");
  spectrum->add_option("--compare-primes", compare_primes, "Primes compared against the rank over Q")
      ->capture_default_str();
  spectrum->add_flag("--quiet", quiet, "No progress on standard error");
  add_seed(spectrum);

  auto census_options = [&] {
    EnumerationOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    if (!checkpoint.empty()) opts.checkpoint = checkpoint;
    if (!quiet) {
      opts.progress = [&err](const EnumerationProgress& p) {
        err << "roots " << p.roots_done << '/' << p.roots_total << " classes=" << p.classes << '\n';
      };
    }
    return opts;
  };
  auto run_census = [&] {
    if (threads < 1) throw UsageError("--threads must be positive");
    try {
      return enumerate_ts(v, lambda, census_options());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  };

  enumerate->callback([&] {
    action = [&] {
      const auto census = run_census();
      write_census(out_dir, census);
      const auto s = summarize_spectrum(v, lambda, census);
      out << "classes=" << s.class_count << " nonsingular=" << s.nonsingular_count << '\n';
      out << "out=" << out_dir << '\n';
      out << "prng_seed=" << seed << '\n';
      return ok;
    };
  });
  spectrum->callback([&] {
    action = [&] {
      for (auto p : compare_primes)
        if (!is_prime(p)) throw UsageError("--compare-primes: " + std::to_string(p) + " is not prime");
      const auto census = run_census();
      const auto s = summarize_spectrum(v, lambda, census);
      out << join(s.rank_multiset) << '\n';
      out << "classes=" << s.class_count << '\n';
      out << "distinct=" << join(s.distinct_ranks) << '\n';
      out << "nonsingular=" << s.nonsingular_count << '\n';
      const auto disagreements = compare_q_and_p_ranks(census, compare_primes);
      for (auto p : compare_primes) {
        const auto n = std::count_if(disagreements.begin(), disagreements.end(),
                                     [p](const RankDisagreement& d) { return d.prime == p; });
        out << "q_vs_p_disagreements[" << p << "]=" << n << '\n';
      }
      for (const auto& d : disagreements) {
        out << "disagreement class=" << d.class_id << " p=" << d.prime << " q_rank=" << d.q_rank
            << " p_rank=" << d.p_rank << '\n';
      }
      out << "prng_seed=" << seed << '\n';
      return ok;
    };
  });

  // status
  auto* status = app.add_subcommand("status", "Whether v is covered by PBD({5,7,9}) composition");
  status->add_option("--v", v, "Odd order >= 5")->required();
  status->callback([&] {
    action = [&] {
      try {
        out << "v=" << v << " status=" << to_string(exception_status(v)) << '\n';
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      return ok;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help;
    const int code = app.exit(e, help, err);
    if (code == 0) return {ok, help.str()};
    return {usage_error, ""};
  }

  try {
    const int code = action();
    return {code, out.str()};
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return {usage_error, ""};
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return {usage_error, ""};
  }
}

}  // namespace tsd::cli
