#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fairbc/enumerate.hpp"
#include "fairbc/io.hpp"
#include "fairbc/oracle.hpp"
#include "fairbc/pruning.hpp"

namespace fairbc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitTimeLimit = 2;

struct UsageError : Error {
  using Error::Error;
};

inline Model parse_model(const std::string& s) {
  static const std::map<std::string, Model> m{
      {"ssfbc", Model::SSFBC}, {"bsfbc", Model::BSFBC}, {"pssfbc", Model::PSSFBC}, {"pbsfbc", Model::PBSFBC}};
  if (auto it = m.find(s); it != m.end()) return it->second;
  throw UsageError("unknown model '" + s + "'");
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "baseline") return Algorithm::Baseline;
  if (s == "bcem") return Algorithm::BCEM;
  if (s == "bcempp") return Algorithm::BCEMpp;
  throw UsageError("unknown algorithm '" + s + "'");
}

inline Ordering parse_ordering(const std::string& s) {
  if (s == "id") return Ordering::IDOrd;
  if (s == "deg") return Ordering::DegOrd;
  throw UsageError("unknown ordering '" + s + "'");
}

inline PruneMode parse_prune(const std::string& s) {
  if (s == "fcore") return PruneMode::FCoreOnly;
  if (s == "cfcore") return PruneMode::CFCore;
  throw UsageError("unknown prune mode '" + s + "'");
}

/// Flags shared by enumerate, prune and oracle.
struct CommonArgs {
  std::string edges;
  std::string attrs_upper;
  std::string attrs_lower;
  std::vector<std::size_t> rand_attrs;
  std::optional<std::uint64_t> seed;
  std::string comments = "%#";
  std::string model = "ssfbc";
  std::uint32_t alpha = 1;
  std::uint32_t beta = 1;
  std::uint32_t delta = 2;
  std::optional<std::string> theta;
  bool verbose = false;

  void attach(CLI::App& app) {
    app.add_option("--edges", edges, "Edge list: one 'upper lower' id pair per line")->required();
    app.add_option("--attrs-upper", attrs_upper, "Upper attribute file ('id label' lines)");
    app.add_option("--attrs-lower", attrs_lower, "Lower attribute file ('id label' lines)");
    app.add_option("--rand-attrs", rand_attrs, "Random attributes with KU,KV values per side")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--seed", seed, "Seed for --rand-attrs");
    app.add_option("--comment-prefixes", comments, "Characters that start a comment line")->capture_default_str();
    app.add_option("--model", model, "ssfbc|bsfbc|pssfbc|pbsfbc")->capture_default_str();
    app.add_option("--alpha", alpha, "Upper threshold")->capture_default_str();
    app.add_option("--beta", beta, "Lower per-attribute threshold")->capture_default_str();
    app.add_option("--delta", delta, "Maximum class-size difference")->capture_default_str();
    app.add_option("--theta", theta, "Proportion threshold, e.g. 0.4 or 1/3 (proportion models; default 0.4)");
    app.add_flag("-v,--verbose", verbose, "Print telemetry to stderr");
  }

  DatasetSpec dataset() const {
    const bool files = !attrs_upper.empty() || !attrs_lower.empty();
    if (files == !rand_attrs.empty())
      throw UsageError("give either --attrs-upper/--attrs-lower or --rand-attrs");
    DatasetSpec spec;
    spec.edge_path = edges;
    spec.comment_prefixes = comments;
    if (files) {
      if (attrs_upper.empty() || attrs_lower.empty())
        throw UsageError("--attrs-upper and --attrs-lower must be given together");
      if (seed) throw UsageError("--seed only applies to --rand-attrs");
      spec.attr_mode = AttributeFiles{attrs_upper, attrs_lower};
    } else {
      if (!seed) throw UsageError("--rand-attrs requires --seed");
      if (rand_attrs[0] == 0 || rand_attrs[1] == 0) throw UsageError("attribute domain sizes must be at least 1");
      spec.attr_mode = RandomAttributes{*seed, rand_attrs[0], rand_attrs[1]};
    }
    return spec;
  }

  FairnessParams params() const {
    FairnessParams p;
    p.model = parse_model(model);
    p.alpha = alpha;
    p.beta = beta;
    p.delta = delta;
    if (alpha == 0 || beta == 0) throw UsageError("--alpha and --beta must be at least 1");
    if (theta) {
      if (!is_proportion(p.model)) throw UsageError("--theta requires a proportion model (pssfbc or pbsfbc)");
      try {
        p.theta = Ratio::parse(*theta);
      } catch (const InvalidConfig& e) {
        throw UsageError(e.what());
      }
    }
    try {
      p.validate();
    } catch (const InvalidConfig& e) {
      throw UsageError(e.what());
    }
    return p;
  }
};

inline std::string dataset_name(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

inline void warn_unsatisfiable(const AttributedBipartiteGraph& g, const FairnessParams& p, std::ostream& err) {
  if (!is_proportion(p.model)) return;
  for (Side s : {Side::Upper, Side::Lower}) {
    if (s == Side::Upper && !is_bi_side(p.model)) continue;
    const auto d = g.domain_size(s);
    if (d > 0 && Ratio::of(1, d) < p.theta)
      err << "warning: theta " << p.theta.str() << " exceeds 1/" << d << "; no " << (s == Side::Upper ? "upper" : "lower")
          << " set can be proportion-fair\n";
  }
}

struct EnumerateArgs {
  CommonArgs common;
  std::string algo = "bcempp";
  std::string order = "deg";
  std::string prune = "cfcore";
  bool prune_iterate = false;
  std::string out;
  std::string format = "lines";
  std::optional<double> time_limit;
};

struct OracleArgs {
  CommonArgs common;
  std::string out;
  std::string format = "lines";
  bool naive = false;
};

struct PruneArgs {
  CommonArgs common;
  std::string prune = "cfcore";
  bool prune_iterate = false;
};

struct BenchArgs {
  std::string grid;
  std::string out;
  std::size_t jobs = 1;
};

inline ResultFormat parse_format(const std::string& f) {
  if (f == "lines") return ResultFormat::Lines;
  if (f == "jsonl") return ResultFormat::JsonLines;
  throw UsageError("unknown format '" + f + "'");
}

inline int do_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  EnumConfig cfg;
  cfg.params = a.common.params();
  cfg.algorithm = parse_algorithm(a.algo);
  cfg.ordering = parse_ordering(a.order);
  cfg.prune = parse_prune(a.prune);
  cfg.prune_iterate = a.prune_iterate;
  if (a.time_limit) {
    if (*a.time_limit <= 0) throw UsageError("--time-limit must be positive");
    cfg.time_limit = std::chrono::duration<double>(*a.time_limit);
  }
  const auto format = parse_format(a.format);
  try {
    cfg.validate();
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }
  const auto spec = a.common.dataset();

  const auto g = load_dataset(spec);
  warn_unsatisfiable(g, cfg.params, err);
  const auto result = enumerate_collect(g, cfg);
  const auto summary = run_summary(cfg, result.stats, result.count(), spec.seed(), dataset_name(spec.edge_path));
  write_results(result, g, a.out, format, summary);
  if (a.common.verbose) err << summary.dump() << '\n';
  out << result.count() << " bicliques" << (result.stats.complete ? "" : " (time limit reached, partial)") << '\n';
  return result.stats.complete ? kExitOk : kExitTimeLimit;
}

inline int do_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const auto params = a.common.params();
  const auto format = parse_format(a.format);
  const auto spec = a.common.dataset();
  const auto g = load_dataset(spec);
  warn_unsatisfiable(g, params, err);
  const auto t0 = std::chrono::steady_clock::now();
  EnumResult result;
  result.bicliques = oracle_fair_bicliques(g, params, {.naive = a.naive});
  result.stats.search_ms = detail::ms_since(t0);
  EnumConfig cfg;
  cfg.params = params;
  auto summary = run_summary(cfg, result.stats, result.count(), spec.seed(), dataset_name(spec.edge_path));
  summary["algorithm"] = a.naive ? "oracle-naive" : "oracle";
  summary.erase("ordering");
  summary.erase("prune");
  write_results(result, g, a.out, format, summary);
  if (a.common.verbose) err << summary.dump() << '\n';
  out << result.count() << " bicliques\n";
  return kExitOk;
}

inline int do_prune(const PruneArgs& a, std::ostream& out, std::ostream& err) {
  const auto params = a.common.params();
  const auto mode_flag = parse_prune(a.prune);
  const auto spec = a.common.dataset();
  auto g = load_dataset(spec);
  const CoreMode mode = is_bi_side(params.model) ? CoreMode::BiSide : CoreMode::SingleSide;
  const auto r = mode_flag == PruneMode::CFCore ? cfcore(g, params.alpha, params.beta, mode, a.prune_iterate)
                                                : fcore_report(g, params.alpha, params.beta, mode);
  nlohmann::json j{{"input_vertices", r.input_vertices},
                   {"survivors_fcore", r.after_fcore},
                   {"survivors_final", r.final_vertices},
                   {"survivors_upper", r.final_upper},
                   {"survivors_lower", r.final_lower},
                   {"fcore_ms", r.fcore_ms},
                   {"total_ms", r.total_ms}};
  out << "input " << r.input_vertices << "\nfcore " << r.after_fcore << "\nfinal " << r.final_vertices << " (upper "
      << r.final_upper << ", lower " << r.final_lower << ")\n";
  if (a.common.verbose) err << j.dump() << '\n';
  return kExitOk;
}

// Grid file:
//   { "datasets": [ {"name": "...", "edges": "...",
//                    "attrs_upper": "...", "attrs_lower": "..."}
//                 | {"edges": "...", "rand_attrs": [2, 2], "seed": 7}, ... ],
//     "models": ["ssfbc"], "algorithms": ["bcempp"], "orderings": ["deg"],
//     "prune": ["cfcore"], "alpha": [2], "beta": [2], "delta": [2],
//     "theta": ["0.4"], "time_limit": 86400 }
// Every key except "datasets" is optional and defaults to the single
// enumerate default. theta only multiplies proportion-model cells; invalid
// model/algorithm pairs are skipped.
struct GridCell {
  std::size_t dataset = 0;
  EnumConfig cfg;
};

inline int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.jobs == 0) throw UsageError("--jobs must be at least 1");
  nlohmann::json grid;
  {
    std::ifstream in(a.grid);
    if (!in) throw UsageError("cannot open grid file '" + a.grid + "'");
    try {
      grid = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad grid file: ") + e.what());
    }
  }
  auto list = [&](const char* key, nlohmann::json def) {
    auto v = grid.contains(key) ? grid[key] : def;
    if (!v.is_array()) v = nlohmann::json::array({v});
    return v;
  };

  // Relative dataset paths are taken relative to the grid file.
  const auto base = std::filesystem::path(a.grid).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() || base.empty() ? p : (base / fp).string();
  };

  std::vector<DatasetSpec> specs;
  std::vector<std::string> names;
  try {
    if (!grid.contains("datasets") || !grid["datasets"].is_array() || grid["datasets"].empty())
      throw UsageError("grid needs a nonempty \"datasets\" array");
    for (const auto& d : grid["datasets"]) {
      DatasetSpec s;
      s.edge_path = resolve(d.at("edges").get<std::string>());
      if (d.contains("comment_prefixes")) s.comment_prefixes = d["comment_prefixes"].get<std::string>();
      if (d.contains("rand_attrs")) {
        if (!d.contains("seed")) throw UsageError("random-attribute dataset needs a \"seed\"");
        s.attr_mode = RandomAttributes{d["seed"].get<std::uint64_t>(), d["rand_attrs"].at(0).get<std::size_t>(),
                                       d["rand_attrs"].at(1).get<std::size_t>()};
      } else {
        s.attr_mode = AttributeFiles{resolve(d.at("attrs_upper").get<std::string>()),
                                     resolve(d.at("attrs_lower").get<std::string>())};
      }
      names.push_back(d.contains("name") ? d["name"].get<std::string>() : dataset_name(s.edge_path));
      specs.push_back(std::move(s));
    }

    std::optional<std::chrono::duration<double>> limit;
    if (grid.contains("time_limit")) limit = std::chrono::duration<double>(grid["time_limit"].get<double>());

    std::vector<GridCell> cells;
    for (std::size_t d = 0; d < specs.size(); ++d)
      for (const auto& m : list("models", "ssfbc"))
        for (const auto& al : list("algorithms", "bcempp"))
          for (const auto& o : list("orderings", "deg"))
            for (const auto& pr : list("prune", "cfcore"))
              for (const auto& alpha : list("alpha", 1))
                for (const auto& beta : list("beta", 1))
                  for (const auto& delta : list("delta", 2)) {
                    EnumConfig cfg;
                    cfg.params.model = parse_model(m.get<std::string>());
                    cfg.algorithm = parse_algorithm(al.get<std::string>());
                    cfg.ordering = parse_ordering(o.get<std::string>());
                    cfg.prune = parse_prune(pr.get<std::string>());
                    cfg.params.alpha = alpha.get<std::uint32_t>();
                    cfg.params.beta = beta.get<std::uint32_t>();
                    cfg.params.delta = delta.get<std::uint32_t>();
                    cfg.time_limit = limit;
                    if (is_proportion(cfg.params.model) && cfg.algorithm != Algorithm::BCEMpp) continue;
                    if (!is_proportion(cfg.params.model)) {
                      cells.push_back({d, cfg});
                      continue;
                    }
                    for (const auto& t : list("theta", "0.4")) {
                      cfg.params.theta = Ratio::parse(t.is_string() ? t.get<std::string>() : t.dump());
                      cfg.params.validate();
                      cells.push_back({d, cfg});
                    }
                  }

    std::vector<std::optional<AttributedBipartiteGraph>> graphs(specs.size());
    for (std::size_t d = 0; d < specs.size(); ++d) graphs[d] = load_dataset(specs[d]);

    std::vector<RunRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> any_timeout{false};
    std::mutex log_mu;
    auto worker = [&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) {
        const auto& c = cells[i];
        const auto stats = enumerate(*graphs[c.dataset], c.cfg, [n = std::uint64_t{0}](const Biclique&) mutable { ++n; });
        auto& r = records[i];
        r.dataset = names[c.dataset];
        r.model = c.cfg.params.model;
        r.algorithm = c.cfg.algorithm;
        r.ordering = c.cfg.ordering;
        r.alpha = c.cfg.params.alpha;
        r.beta = c.cfg.params.beta;
        r.delta = c.cfg.params.delta;
        r.theta = c.cfg.params.effective_theta();
        r.seed = specs[c.dataset].seed();
        r.survivors_fcore = stats.prune.after_fcore;
        r.survivors_cfcore = stats.prune.final_vertices;
        r.prune_ms = stats.prune_ms;
        r.search_ms = stats.search_ms;
        r.results = stats.emitted;
        r.nodes_expanded = stats.nodes_expanded;
        if (!stats.complete) {
          any_timeout = true;
          std::lock_guard lock(log_mu);
          err << "time limit reached: " << r.dataset << ' ' << to_string(r.model) << " alpha=" << r.alpha
              << " beta=" << r.beta << " delta=" << r.delta << '\n';
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < std::min(a.jobs, cells.size()); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    write_bench_csv(records, a.out);
    out << records.size() << " runs written to " << a.out << '\n';
    return any_timeout ? kExitTimeLimit : kExitOk;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad grid file: ") + e.what());
  } catch (const InvalidConfig& e) {
    throw UsageError(std::string("bad grid file: ") + e.what());
  }
}

/// Entry point; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Fairness-aware maximal biclique enumeration"};
  app.name("fairbc");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "Enumerate fair bicliques and write them to a file");
  ea.common.attach(*en);
  en->add_option("--algo", ea.algo, "baseline|bcem|bcempp")->capture_default_str();
  en->add_option("--order", ea.order, "Lower-vertex ordering: id|deg")->capture_default_str();
  en->add_option("--prune", ea.prune, "Pruning: fcore|cfcore")->capture_default_str();
  en->add_flag("--prune-iterate", ea.prune_iterate, "Repeat colorful pruning until nothing changes");
  en->add_option("--out", ea.out, "Output file")->required();
  en->add_option("--format", ea.format, "lines|jsonl")->capture_default_str();
  en->add_option("--time-limit", ea.time_limit, "Search time limit in seconds (default unlimited)");

  PruneArgs pa;
  auto* pr = app.add_subcommand("prune", "Run the pruning pipeline and print survivor counts");
  pa.common.attach(*pr);
  pr->add_option("--prune", pa.prune, "Pruning: fcore|cfcore")->capture_default_str();
  pr->add_flag("--prune-iterate", pa.prune_iterate, "Repeat colorful pruning until nothing changes");

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracle", "Brute-force reference enumeration (at most 20 vertices)");
  oa.common.attach(*orc);
  orc->add_option("--out", oa.out, "Output file")->required();
  orc->add_option("--format", oa.format, "lines|jsonl")->capture_default_str();
  orc->add_flag("--naive", oa.naive, "Scan every (upper, lower) subset pair");

  BenchArgs ba;
  auto* be = app.add_subcommand("bench", "Run a parameter grid and write the bench CSV");
  be->add_option("--grid", ba.grid, "Grid JSON file")->required();
  be->add_option("--out", ba.out, "CSV output file")->required();
  be->add_option("--jobs", ba.jobs, "Concurrent grid cells")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (active == en) return do_enumerate(ea, out, err);
    if (active == pr) return do_prune(pa, out, err);
    if (active == orc) return do_oracle(oa, out, err);
    return do_bench(ba, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fairbc::cli
