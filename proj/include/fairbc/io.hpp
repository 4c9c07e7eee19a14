#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fairbc/biclique.hpp"
#include "fairbc/bigraph.hpp"
#include "fairbc/enumerate.hpp"
#include "fairbc/error.hpp"

namespace fairbc {

using EdgeList = std::vector<std::pair<ExternalId, ExternalId>>;
using AttributeLabels = std::map<ExternalId, std::string>;

struct AttributeFiles {
  std::string upper_path;
  std::string lower_path;
};

struct RandomAttributes {
  std::uint64_t seed = 0;
  std::size_t upper_domain = 2;
  std::size_t lower_domain = 2;
};

struct DatasetSpec {
  std::string edge_path;
  std::variant<AttributeFiles, RandomAttributes> attr_mode;
  std::string comment_prefixes = "%#";

  std::optional<std::uint64_t> seed() const {
    if (const auto* r = std::get_if<RandomAttributes>(&attr_mode)) return r->seed;
    return std::nullopt;
  }
};

namespace io_detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool skip_line(std::string_view t, std::string_view comment_prefixes) {
  return t.empty() || comment_prefixes.find(t.front()) != std::string_view::npos;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

inline std::optional<ExternalId> parse_id(std::string_view s) {
  ExternalId v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace io_detail

/// Whitespace-separated "upper lower" pairs; lines whose first non-blank
/// character is in `comment_prefixes` are skipped.
inline EdgeList parse_edge_list(std::istream& in, std::string_view comment_prefixes = "%#") {
  EdgeList edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = io_detail::trim(line);
    if (io_detail::skip_line(t, comment_prefixes)) continue;
    const auto cols = io_detail::split_ws(t);
    std::optional<ExternalId> u;
    std::optional<ExternalId> v;
    if (cols.size() == 2) {
      u = io_detail::parse_id(cols[0]);
      v = io_detail::parse_id(cols[1]);
    }
    if (!u || !v) throw ParseError(line_no, std::string(t));
    edges.emplace_back(*u, *v);
  }
  if (in.bad()) throw Error("read error in edge list");
  return edges;
}

inline EdgeList parse_edge_list(const std::string& path, std::string_view comment_prefixes = "%#") {
  auto in = io_detail::open_in(path);
  return parse_edge_list(in, comment_prefixes);
}

/// "id label" lines. A repeated id keeps its last label.
inline AttributeLabels parse_attribute_file(std::istream& in, std::string_view comment_prefixes = "%#") {
  AttributeLabels labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = io_detail::trim(line);
    if (io_detail::skip_line(t, comment_prefixes)) continue;
    const auto cols = io_detail::split_ws(t);
    const auto id = cols.size() == 2 ? io_detail::parse_id(cols[0]) : std::nullopt;
    if (!id) throw ParseError(line_no, std::string(t));
    labels[*id] = std::string(cols[1]);
  }
  return labels;
}

inline AttributeLabels parse_attribute_file(const std::string& path, std::string_view comment_prefixes = "%#") {
  auto in = io_detail::open_in(path);
  return parse_attribute_file(in, comment_prefixes);
}

inline void write_attribute_file(const AttributeLabels& labels, std::ostream& out) {
  for (const auto& [id, label] : labels) out << id << ' ' << label << '\n';
}

inline void write_attribute_file(const AttributeLabels& labels, const std::string& path) {
  auto out = io_detail::open_out(path);
  write_attribute_file(labels, out);
}

/// Uniform attribute indices in [0, domain_size) for `ids` (visited in
/// ascending order), from a generator seeded with (seed, side). Labels are
/// the decimal indices.
inline SideAttributes random_attributes(std::vector<ExternalId> ids, std::size_t domain_size, std::uint64_t seed,
                                        Side side) {
  if (domain_size == 0) throw InvalidConfig("attribute domain size must be at least 1");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index_of(side))};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, domain_size - 1);
  SideAttributes out;
  for (std::size_t a = 0; a < domain_size; ++a) out.domain.push_back(std::to_string(a));
  for (ExternalId id : ids) out.labels[id] = std::to_string(pick(rng));
  return out;
}

/// Attribute maps for both sides of an edge list under `mode`.
inline std::pair<SideAttributes, SideAttributes> assign_attributes(const EdgeList& edges,
                                                                   const std::variant<AttributeFiles, RandomAttributes>& mode,
                                                                   std::string_view comment_prefixes = "%#") {
  if (const auto* r = std::get_if<RandomAttributes>(&mode)) {
    std::vector<ExternalId> ids[2];
    for (auto [u, v] : edges) {
      ids[0].push_back(u);
      ids[1].push_back(v);
    }
    return {random_attributes(std::move(ids[0]), r->upper_domain, r->seed, Side::Upper),
            random_attributes(std::move(ids[1]), r->lower_domain, r->seed, Side::Lower)};
  }
  const auto& f = std::get<AttributeFiles>(mode);
  SideAttributes upper;
  SideAttributes lower;
  upper.labels = parse_attribute_file(f.upper_path, comment_prefixes);
  lower.labels = parse_attribute_file(f.lower_path, comment_prefixes);
  return {std::move(upper), std::move(lower)};
}

inline AttributedBipartiteGraph load_dataset(const DatasetSpec& spec) {
  const auto edges = parse_edge_list(spec.edge_path, spec.comment_prefixes);
  const auto [upper, lower] = assign_attributes(edges, spec.attr_mode, spec.comment_prefixes);
  return build_graph(edges, upper, lower);
}

// ---- results -------------------------------------------------------------

enum class ResultFormat : std::uint8_t { Lines, JsonLines };

struct ExternalBiclique {
  std::vector<ExternalId> upper;
  std::vector<ExternalId> lower;

  friend bool operator==(const ExternalBiclique&, const ExternalBiclique&) = default;
  friend auto operator<=>(const ExternalBiclique&, const ExternalBiclique&) = default;
};

inline ExternalBiclique to_external(const AttributedBipartiteGraph& g, const Biclique& b) {
  ExternalBiclique e;
  for (VertexId u : b.upper) e.upper.push_back(g.external_id(Side::Upper, u));
  for (VertexId v : b.lower) e.lower.push_back(g.external_id(Side::Lower, v));
  std::sort(e.upper.begin(), e.upper.end());
  std::sort(e.lower.begin(), e.lower.end());
  return e;
}

inline std::string format_line(const ExternalBiclique& b) {
  std::string s = "U:";
  for (std::size_t i = 0; i < b.upper.size(); ++i) s += (i ? "," : "") + std::to_string(b.upper[i]);
  s += "|V:";
  for (std::size_t i = 0; i < b.lower.size(); ++i) s += (i ? "," : "") + std::to_string(b.lower[i]);
  return s;
}

inline ExternalBiclique parse_line(std::string_view line, std::size_t line_no = 0) {
  const auto t = io_detail::trim(line);
  const auto bar = t.find('|');
  if (!t.starts_with("U:") || bar == std::string_view::npos || t.substr(bar + 1, 2) != "V:")
    throw ParseError(line_no, std::string(t));
  auto ids = [&](std::string_view part) {
    std::vector<ExternalId> out;
    while (!part.empty()) {
      const auto comma = part.find(',');
      const auto id = io_detail::parse_id(part.substr(0, comma));
      if (!id) throw ParseError(line_no, std::string(t));
      out.push_back(*id);
      part = comma == std::string_view::npos ? std::string_view{} : part.substr(comma + 1);
    }
    return out;
  };
  return {ids(t.substr(2, bar - 2)), ids(t.substr(bar + 3))};
}

inline std::vector<ExternalBiclique> parse_results_lines(std::istream& in) {
  std::vector<ExternalBiclique> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (io_detail::trim(line).empty()) continue;
    out.push_back(parse_line(line, line_no));
  }
  return out;
}

inline std::vector<ExternalBiclique> parse_results_lines(const std::string& path) {
  auto in = io_detail::open_in(path);
  return parse_results_lines(in);
}

/// Parameters, seed and telemetry of one run, as embedded in every output.
inline nlohmann::json run_summary(const EnumConfig& cfg, const EnumStats& stats, std::size_t results,
                                  std::optional<std::uint64_t> seed, const std::string& dataset) {
  const auto& p = cfg.params;
  nlohmann::json j;
  j["summary"] = true;
  j["dataset"] = dataset;
  j["model"] = std::string(to_string(p.model));
  j["algorithm"] = std::string(to_string(cfg.algorithm));
  j["ordering"] = std::string(to_string(cfg.ordering));
  j["prune"] = std::string(to_string(cfg.prune));
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["delta"] = p.delta;
  j["theta"] = is_proportion(p.model) ? nlohmann::json(p.theta.str()) : nlohmann::json(nullptr);
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["results"] = results;
  j["complete"] = stats.complete;
  j["nodes_expanded"] = stats.nodes_expanded;
  j["survivors_fcore"] = stats.prune.after_fcore;
  j["survivors_cfcore"] = stats.prune.final_vertices;
  j["prune_ms"] = stats.prune_ms;
  j["search_ms"] = stats.search_ms;
  return j;
}

/// Lines: sorted `U:..|V:..` lines, with `summary` written to
/// `<path>.meta.json` so the result file itself stays diffable.
/// JsonLines: one object per biclique, then `summary` as the last line.
inline void write_results(const std::vector<ExternalBiclique>& bicliques, const std::string& path,
                          ResultFormat format, const nlohmann::json& summary) {
  auto out = io_detail::open_out(path);
  if (format == ResultFormat::Lines) {
    std::vector<std::string> lines;
    lines.reserve(bicliques.size());
    for (const auto& b : bicliques) lines.push_back(format_line(b));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) out << l << '\n';
    auto meta = io_detail::open_out(path + ".meta.json");
    meta << summary.dump(2) << '\n';
  } else {
    auto sorted = bicliques;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& b : sorted) out << nlohmann::json{{"upper", b.upper}, {"lower", b.lower}}.dump() << '\n';
    out << summary.dump() << '\n';
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

inline void write_results(const EnumResult& result, const AttributedBipartiteGraph& g, const std::string& path,
                          ResultFormat format, const nlohmann::json& summary) {
  std::vector<ExternalBiclique> ext;
  ext.reserve(result.bicliques.size());
  for (const auto& b : result.bicliques) ext.push_back(to_external(g, b));
  write_results(ext, path, format, summary);
}

// ---- bench CSV -----------------------------------------------------------

struct RunRecord {
  std::string dataset;
  Model model = Model::SSFBC;
  Algorithm algorithm = Algorithm::BCEMpp;
  Ordering ordering = Ordering::DegOrd;
  std::uint32_t alpha = 0;
  std::uint32_t beta = 0;
  std::uint32_t delta = 0;
  std::optional<Ratio> theta;
  std::optional<std::uint64_t> seed;
  std::size_t survivors_fcore = 0;
  std::size_t survivors_cfcore = 0;
  double prune_ms = 0;
  double search_ms = 0;
  std::uint64_t results = 0;
  std::uint64_t nodes_expanded = 0;
};

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline constexpr std::string_view kBenchHeader =
    "dataset,model,algorithm,ordering,alpha,beta,delta,theta,seed,survivors_fcore,survivors_cfcore,prune_ms,"
    "search_ms,results,nodes_expanded";

inline void write_bench_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << kBenchHeader << "\r\n";
  for (const auto& r : records) {
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << r.prune_ms << ',' << r.search_ms;
    out << csv_field(r.dataset) << ',' << to_string(r.model) << ',' << to_string(r.algorithm) << ','
        << to_string(r.ordering) << ',' << r.alpha << ',' << r.beta << ',' << r.delta << ','
        << (r.theta ? r.theta->str() : "") << ',' << (r.seed ? std::to_string(*r.seed) : "") << ','
        << r.survivors_fcore << ',' << r.survivors_cfcore << ',' << ms.str() << ',' << r.results << ','
        << r.nodes_expanded << "\r\n";
  }
}

inline void write_bench_csv(const std::vector<RunRecord>& records, const std::string& path) {
  auto out = io_detail::open_out(path);
  write_bench_csv(records, out);
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace fairbc
