#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankeval/analysis.hpp"
#include "rankeval/bounds.hpp"
#include "rankeval/cli.hpp"
#include "rankeval/dataset.hpp"
#include "rankeval/evaluation.hpp"
#include "rankeval/format.hpp"
#include "rankeval/harness.hpp"
#include "table.hpp"

namespace fs = std::filesystem;

namespace rankeval::cli {

namespace {

struct Config {
  std::string dataset;
  std::vector<std::string> runs;
  std::string metric = "all";
  std::string ks = "5,10,15,20,30";
  std::string norm = "all";
  std::string bounds = "closed";
  std::uint64_t seed = 0;
  int threshold = 0;
  int gmax = 0;  // 0: infer from the data
  double log_base = 2.0;
  std::string subsample;
  long long top_n = -1;  // -1: 10% of the queries
  double alpha = 0.05;
  std::string test = "ttest";
  std::size_t bootstrap_b = 1000;
  unsigned threads = 1;
  std::string out = ".";
  std::string format = "csv";
  bool exclude_degenerate = false;
  double hist_bin = 0.05;
  std::uint64_t prefix_limit = kDefaultPrefixLimit;
  std::string policy;
  std::string tag;
  std::string output;
};

// Metric families as named on the command line: ndcg and map normalize the raw
// DCG and SP sums, err the raw ERR.
struct Family {
  std::string name;
  MetricKind kind;
};

std::vector<Family> families(const std::string& metric) {
  const std::vector<Family> all{{"ndcg", MetricKind::Dcg}, {"map", MetricKind::Sp}, {"err", MetricKind::Err}};
  if (metric == "all") return all;
  for (const auto& f : all) {
    if (f.name == metric) return {f};
  }
  throw std::invalid_argument("unknown metric '" + metric + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// "all" or a comma list; output keeps the canonical none, upper, v1, v2 order.
std::vector<NormVariant> variants(const std::string& norm) {
  const std::vector<NormVariant> all{NormVariant::None, NormVariant::Upper, NormVariant::V1, NormVariant::V2};
  if (norm == "all") return all;
  std::vector<bool> wanted(all.size(), false);
  for (const auto& item : split(norm, ',')) {
    const auto it = std::find_if(all.begin(), all.end(), [&](NormVariant v) { return to_string(v) == item; });
    if (it == all.end()) throw std::invalid_argument("unknown normalization '" + item + "'");
    wanted[static_cast<std::size_t>(it - all.begin())] = true;
  }
  std::vector<NormVariant> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (wanted[i]) out.push_back(all[i]);
  }
  if (out.empty()) throw std::invalid_argument("no normalization selected");
  return out;
}

std::vector<int> parse_ks(const std::string& text) {
  std::vector<int> ks;
  for (const auto& item : split(text, ',')) {
    const auto v = parse_integer(item);
    if (!v || *v < 1 || *v > 1'000'000) throw std::invalid_argument("bad cutoff '" + item + "'");
    if (!ks.empty() && *v <= ks.back()) throw std::invalid_argument("cutoffs must be strictly increasing");
    ks.push_back(static_cast<int>(*v));
  }
  if (ks.empty()) throw std::invalid_argument("cutoff list is empty");
  return ks;
}

struct BoundRequest {
  bool exhaustive = false;
  std::optional<std::size_t> mc_samples;
};

BoundRequest parse_bound_list(const std::string& text) {
  BoundRequest req;
  for (const auto& item : split(text, ',')) {
    if (item == "closed") continue;
    if (item == "exhaustive") {
      req.exhaustive = true;
    } else if (item.rfind("mc:", 0) == 0) {
      const auto n = parse_integer(item.substr(3));
      if (!n || *n < 2) throw std::invalid_argument("bad Monte Carlo sample count in '" + item + "'");
      req.mc_samples = static_cast<std::size_t>(*n);
    } else {
      throw std::invalid_argument("unknown bound mode '" + item + "'");
    }
  }
  return req;
}

BoundMode eval_bound_mode(const Config& cfg) {
  BoundMode mode;
  mode.seed = cfg.seed;
  mode.prefix_limit = cfg.prefix_limit;
  if (cfg.bounds == "closed") return mode;
  const auto req = parse_bound_list(cfg.bounds);
  if (req.exhaustive && req.mc_samples) throw std::invalid_argument("choose one bound mode for evaluation");
  if (req.exhaustive) mode.method = RlbMethod::Exhaustive;
  if (req.mc_samples) {
    mode.method = RlbMethod::MonteCarlo;
    mode.mc_samples = *req.mc_samples;
  }
  return mode;
}

OutputFormat output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "both") return OutputFormat::Both;
  throw std::invalid_argument("unknown format '" + text + "'");
}

Corpus load_corpus(const Config& cfg) {
  std::ifstream in(cfg.dataset, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset " + cfg.dataset);
  LetorOptions options;
  if (cfg.gmax > 0) options.max_grade = cfg.gmax;
  Corpus corpus;
  try {
    corpus = parse_letor(in, options);
  } catch (const std::exception& e) {
    throw std::runtime_error(cfg.dataset + ": " + e.what());
  }
  if (!cfg.subsample.empty()) {
    const auto parts = split(cfg.subsample, ':');
    const auto count = parts.size() == 2 ? parse_integer(parts[0]) : std::nullopt;
    const auto seed = parts.size() == 2 ? parse_integer(parts[1]) : std::nullopt;
    if (!count || !seed || *count < 1 || *seed < 0) throw std::invalid_argument("--subsample expects N:SEED");
    corpus = corpus.subsample(static_cast<std::size_t>(*count), static_cast<std::uint64_t>(*seed));
  }
  if (corpus.empty()) throw std::runtime_error(cfg.dataset + ": no queries");
  return corpus;
}

std::vector<NamedRun> load_runs(const Config& cfg, const Corpus& corpus) {
  std::vector<NamedRun> runs;
  for (const auto& spec : cfg.runs) {
    const auto eq = spec.find('=');
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    const std::string name = eq == std::string::npos ? fs::path(path).stem().string() : spec.substr(0, eq);
    if (name.empty()) throw std::invalid_argument("empty run name in '" + spec + "'");
    for (const auto& r : runs) {
      if (r.method == name) throw std::invalid_argument("duplicate run name " + name);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open run file " + path);
    try {
      runs.push_back({name, rankings_from_trec(corpus, parse_trec_run(in))});
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return runs;
}

MetricSpec base_spec(const Config& cfg, const Corpus& corpus, MetricKind kind) {
  MetricSpec spec;
  spec.kind = kind;
  spec.k = 1;
  spec.log_base = cfg.log_base;
  spec.threshold = cfg.threshold;
  spec.scale = corpus.scale();
  spec.validate();
  return spec;
}

EvalOptions eval_options(const Config& cfg, const Corpus& corpus, MetricKind kind) {
  EvalOptions opts;
  opts.metric = base_spec(cfg, corpus, kind);
  opts.ks = parse_ks(cfg.ks);
  opts.bounds = eval_bound_mode(cfg);
  opts.threads = cfg.threads;
  return opts;
}

SignificanceOptions significance_options(const Config& cfg) {
  SignificanceOptions opts;
  opts.alpha = cfg.alpha;
  opts.bootstrap_resamples = cfg.bootstrap_b;
  opts.seed = cfg.seed;
  if (cfg.test == "ttest") {
    opts.test = SignificanceTest::TTest;
  } else if (cfg.test == "bootstrap") {
    opts.test = SignificanceTest::Bootstrap;
  } else {
    throw std::invalid_argument("unknown test '" + cfg.test + "'");
  }
  return opts;
}

fs::path prepare_out_dir(const Config& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

std::optional<double> safe_mean(const ScoreMatrix& m, std::size_t method, std::size_t k, bool exclude) {
  try {
    return m.cell_mean(method, k, exclude);
  } catch (const std::invalid_argument&) {
    return std::nullopt;  // every query degenerate and excluded
  }
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

std::size_t count_below(const std::vector<PairComparison>& comps, double alpha) {
  return static_cast<std::size_t>(
      std::count_if(comps.begin(), comps.end(), [&](const PairComparison& c) { return c.p_value < alpha; }));
}

// ---------------------------------------------------------------------------

int cmd_eval(const Config& cfg, std::ostream& err) {
  const auto corpus = load_corpus(cfg);
  const auto runs = load_runs(cfg, corpus);
  if (runs.empty()) throw std::invalid_argument("eval needs at least one --run");
  const auto dir = prepare_out_dir(cfg);
  const auto format = output_format(cfg.format);
  const auto wanted = variants(cfg.norm);

  TableWriter aggregate(dir, "aggregate",
                        {"method", "metric", "variant", "k", "mean", "queries", "degenerate", "clamped_bounds"},
                        format);
  TableWriter per_query(dir, "per_query", {"method", "qid", "metric", "variant", "k", "value", "degenerate"},
                        format);
  for (const auto& fam : families(cfg.metric)) {
    const auto opts = eval_options(cfg, corpus, fam.kind);
    const auto matrices = build_score_matrices(corpus, runs, opts, wanted);
    for (const auto& m : matrices) {
      if (m.clamped_bounds > 0 && (m.variant() == NormVariant::V1 || m.variant() == NormVariant::V2)) {
        err << "warning: " << fam.name << "/" << to_string(m.variant()) << ": " << m.clamped_bounds
            << " (query, k) bounds had RLB > IUB and were clamped\n";
      }
      for (std::size_t mi = 0; mi < m.methods().size(); ++mi) {
        for (std::size_t ki = 0; ki < m.ks().size(); ++ki) {
          const auto flags = m.degenerate_row(mi, ki);
          const auto degenerate = static_cast<long long>(std::count(flags.begin(), flags.end(), true));
          aggregate.row({m.methods()[mi], fam.name, to_string(m.variant()), static_cast<long long>(m.ks()[ki]),
                         opt_cell(safe_mean(m, mi, ki, cfg.exclude_degenerate)),
                         static_cast<long long>(m.qids().size()), degenerate,
                         static_cast<long long>(m.clamped_bounds)});
        }
      }
    }
    for (std::size_t mi = 0; mi < runs.size(); ++mi) {
      for (std::size_t qi = 0; qi < corpus.size(); ++qi) {
        for (const auto& m : matrices) {
          for (std::size_t ki = 0; ki < m.ks().size(); ++ki) {
            per_query.row({m.methods()[mi], m.qids()[qi], fam.name, to_string(m.variant()),
                           static_cast<long long>(m.ks()[ki]), m.at(mi, ki, qi),
                           static_cast<long long>(m.degenerate(mi, ki, qi))});
          }
        }
      }
    }
  }
  aggregate.close();
  per_query.close();
  return 0;
}

int cmd_bounds(const Config& cfg, std::ostream& err) {
  const auto corpus = load_corpus(cfg);
  const auto dir = prepare_out_dir(cfg);
  const auto format = output_format(cfg.format);
  const auto ks = parse_ks(cfg.ks);
  const auto req = parse_bound_list(cfg.bounds);
  if (!(cfg.hist_bin > 0.0 && cfg.hist_bin <= 1.0)) throw std::invalid_argument("--hist-bin must be in (0, 1]");

  TableWriter table(dir, "bounds",
                    {"qid", "metric", "k", "iub", "rlb_closed", "rlb_exhaustive", "rlb_mc", "mc_stderr", "gap"},
                    format);
  TableWriter hist(dir, "histogram", {"metric", "k", "bin_lo", "bin_hi", "count"}, format);
  const auto bins = static_cast<std::size_t>(std::ceil(1.0 / cfg.hist_bin - 1e-9));

  for (const auto& fam : families(cfg.metric)) {
    const auto base = base_spec(cfg, corpus, fam.kind);
    std::vector<std::vector<std::vector<Cell>>> rows(corpus.size());
    std::vector<std::string> warnings(corpus.size());
    std::vector<std::vector<std::size_t>> hist_counts(ks.size(), std::vector<std::size_t>(bins, 0));
    std::vector<std::vector<double>> expected(corpus.size(), std::vector<double>(ks.size(), 0.0));

    parallel_for(corpus.size(), cfg.threads, [&](std::size_t qi) {
      const auto& q = corpus.queries()[qi];
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        auto spec = base;
        spec.k = ks[ki];
        const double top = iub(spec, q);
        const double closed = rlb_closed(spec, q);
        expected[qi][ki] = top > 0.0 ? closed / top : 0.0;
        Cell exhaustive;
        Cell mc;
        Cell mc_err;
        Cell gap;
        if (req.exhaustive) {
          try {
            const double exact = rlb_exhaustive(spec, q, cfg.prefix_limit);
            exhaustive = exact;
            gap = exact - closed;
          } catch (const IntractableError& e) {
            warnings[qi] += std::string("warning: ") + e.what() + "\n";
          }
        }
        if (req.mc_samples) {
          const auto est = rlb_montecarlo(spec, q, *req.mc_samples, cfg.seed);
          mc = est.estimate;
          mc_err = est.stderr_;
          if (std::holds_alternative<std::monostate>(gap)) gap = est.estimate - closed;
        }
        rows[qi].push_back({q.qid, to_string(fam.kind), static_cast<long long>(ks[ki]), top, closed, exhaustive,
                            mc, mc_err, gap});
      }
    });

    for (std::size_t qi = 0; qi < corpus.size(); ++qi) {
      err << warnings[qi];
      for (const auto& r : rows[qi]) table.row(r);
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const double v = std::clamp(expected[qi][ki], 0.0, 1.0);
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(v / cfg.hist_bin));
        ++hist_counts[ki][bin];
      }
    }
    for (std::size_t ki = 0; ki < ks.size(); ++ki) {
      for (std::size_t b = 0; b < bins; ++b) {
        hist.row({to_string(fam.kind), static_cast<long long>(ks[ki]), b * cfg.hist_bin,
                  std::min(1.0, (b + 1) * cfg.hist_bin), static_cast<long long>(hist_counts[ki][b])});
      }
    }
  }
  table.close();
  hist.close();
  return 0;
}

std::size_t default_top_n(const Config& cfg, std::size_t queries) {
  if (cfg.top_n >= 0) return static_cast<std::size_t>(cfg.top_n);
  return queries / 10;
}

int cmd_categorize(const Config& cfg, std::ostream&) {
  const auto corpus = load_corpus(cfg);
  const auto runs = load_runs(cfg, corpus);
  if (runs.empty()) throw std::invalid_argument("categorize needs at least one --run");
  const auto dir = prepare_out_dir(cfg);
  const auto format = output_format(cfg.format);
  for (const auto& fam : families(cfg.metric)) {
    const auto opts = eval_options(cfg, corpus, fam.kind);
    const auto upper = build_score_matrix(corpus, runs, opts, NormVariant::Upper);
    const auto gaps = compute_query_gaps(upper, corpus, opts.metric);
    const auto sets = categorize_queries(gaps, default_top_n(cfg, corpus.size()));
    TableWriter table(dir, fam.name + "_gaps", {"qid", "actual", "expected", "gap"}, format);
    for (const auto& g : gaps.entries) table.row({g.qid, g.actual, g.expected, g.gap});
    table.close();
    for (const auto& [name, ids] : {std::pair{"uninformative", &sets.uninformative}, std::pair{"ideal", &sets.ideal}}) {
      const auto path = dir / (fam.name + "_" + name + ".txt");
      std::ofstream out(path, std::ios::binary);
      for (const auto& id : *ids) out << id << '\n';
      if (!out) throw std::runtime_error("failed writing " + path.string());
    }
  }
  return 0;
}

int cmd_compare(const Config& cfg, std::ostream& err) {
  const auto corpus = load_corpus(cfg);
  const auto runs = load_runs(cfg, corpus);
  if (runs.size() < 2) throw std::invalid_argument("compare needs at least two --run");
  const auto dir = prepare_out_dir(cfg);
  const auto format = output_format(cfg.format);
  const auto sig = significance_options(cfg);
  const auto selected = variants(cfg.norm);

  TableWriter rankings(dir, "rankings", {"metric", "variant", "subset", "rank", "method", "average"}, format);
  TableWriter kendall(dir, "kendall", {"metric", "subset", "variant_a", "variant_b", "tau", "swap_rate"}, format);
  TableWriter swaps(dir, "swap_rate", {"metric", "variant", "subset_a", "subset_b", "swap_rate"}, format);
  TableWriter pads(dir, "pad", {"metric", "variant", "subset", "pad", "degenerate_pairs"}, format);
  TableWriter sigs(dir, "sig_counts",
                   {"metric", "variant", "subset", "test", "alpha", "significant", "comparisons"}, format);
  TableWriter conflicts(dir, "conflicts", {"metric", "subset", "variant_a", "variant_b", "conflicts", "comparisons"},
                        format);

  for (const auto& fam : families(cfg.metric)) {
    const auto opts = eval_options(cfg, corpus, fam.kind);
    auto needed = selected;
    if (std::find(needed.begin(), needed.end(), NormVariant::Upper) == needed.end()) {
      needed.push_back(NormVariant::Upper);
    }
    const auto matrices = build_score_matrices(corpus, runs, opts, needed);
    const auto& upper = *std::find_if(matrices.begin(), matrices.end(),
                                      [](const ScoreMatrix& m) { return m.variant() == NormVariant::Upper; });
    const auto sets = categorize_queries(compute_query_gaps(upper, corpus, opts.metric),
                                         default_top_n(cfg, corpus.size()));

    std::vector<std::pair<std::string, std::vector<std::string>>> subsets{{"all", upper.qids()}};
    for (const auto& [name, ids] : {std::pair{"uninformative", sets.uninformative}, std::pair{"ideal", sets.ideal}}) {
      if (ids.size() < 2) {
        err << "warning: " << fam.name << ": " << name << " query set has fewer than 2 queries; skipped\n";
        continue;
      }
      subsets.emplace_back(name, ids);
    }

    // ranking[variant][subset]
    std::vector<std::vector<MethodRanking>> ranked(selected.size());
    for (const auto& [subset, ids] : subsets) {
      std::vector<ScoreMatrix> views;
      std::vector<std::vector<PairComparison>> pvalues;
      for (std::size_t vi = 0; vi < selected.size(); ++vi) {
        const auto& full = *std::find_if(matrices.begin(), matrices.end(),
                                         [&](const ScoreMatrix& m) { return m.variant() == selected[vi]; });
        views.push_back(subset == "all" ? full : full.restrict_to(ids));
        const auto& view = views.back();
        const auto vname = to_string(selected[vi]);

        const auto order = method_ranking(view);
        for (std::size_t r = 0; r < order.methods.size(); ++r) {
          rankings.row({fam.name, vname, subset, static_cast<long long>(r + 1), order.methods[r], order.scores[r]});
        }
        ranked[vi].push_back(order);

        std::map<std::string, double> averages;
        for (std::size_t mi = 0; mi < view.methods().size(); ++mi) averages[view.methods()[mi]] = view.method_average(mi);
        const auto p = pad(averages);
        pads.row({fam.name, vname, subset, p.value, static_cast<long long>(p.degenerate_pairs)});

        pvalues.push_back(pairwise_pvalues(view, sig));
        sigs.row({fam.name, vname, subset, cfg.test, cfg.alpha, static_cast<long long>(count_below(pvalues.back(), sig.alpha)),
                  static_cast<long long>(pvalues.back().size())});
      }
      for (std::size_t a = 0; a < selected.size(); ++a) {
        for (std::size_t b = a + 1; b < selected.size(); ++b) {
          kendall.row({fam.name, subset, to_string(selected[a]), to_string(selected[b]),
                       kendall_tau(ranked[a].back(), ranked[b].back()), swap_rate(ranked[a].back(), ranked[b].back())});
          long long disagreements = 0;
          for (std::size_t i = 0; i < pvalues[a].size(); ++i) {
            disagreements += (pvalues[a][i].p_value < sig.alpha) != (pvalues[b][i].p_value < sig.alpha);
          }
          conflicts.row({fam.name, subset, to_string(selected[a]), to_string(selected[b]), disagreements,
                         static_cast<long long>(pvalues[a].size())});
        }
      }
    }
    for (std::size_t vi = 0; vi < selected.size(); ++vi) {
      for (std::size_t a = 0; a < subsets.size(); ++a) {
        for (std::size_t b = a + 1; b < subsets.size(); ++b) {
          swaps.row({fam.name, to_string(selected[vi]), subsets[a].first, subsets[b].first,
                     swap_rate(ranked[vi][a], ranked[vi][b])});
        }
      }
    }
  }
  for (auto* w : {&rankings, &kendall, &swaps, &pads, &sigs, &conflicts}) w->close();
  return 0;
}

int cmd_rank(const Config& cfg, std::ostream&) {
  const auto corpus = load_corpus(cfg);
  RankerConfig rc;
  rc.policy = RankerPolicy::parse(cfg.policy);
  rc.tag = cfg.tag;
  if (rc.tag.empty()) {
    rc.tag = rc.policy.describe();
    std::replace(rc.tag.begin(), rc.tag.end(), ':', '_');
  }
  fs::path path = cfg.output;
  if (path.empty()) path = prepare_out_dir(cfg) / (rc.tag + ".run");
  const auto run = generate_run(corpus, rc, cfg.threads);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_run(out, corpus, run, rc.tag);
  if (!out) throw std::runtime_error("failed writing " + path.string());
  return 0;
}

void add_dataset_options(CLI::App& cmd, Config& cfg) {
  cmd.add_option("--dataset", cfg.dataset, "LETOR-format dataset file")->required();
  cmd.add_option("--gmax", cfg.gmax, "Maximum relevance grade (default: max observed label)")
      ->check(CLI::Range(1, 30));
  cmd.add_option("--subsample", cfg.subsample, "Keep N random queries: N:SEED");
  cmd.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd.add_option("--out", cfg.out, "Output directory");
  cmd.add_option("--format", cfg.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
}

void add_metric_options(CLI::App& cmd, Config& cfg) {
  cmd.add_option("--metric", cfg.metric, "ndcg, map, err or all")->check(CLI::IsMember({"ndcg", "map", "err", "all"}));
  cmd.add_option("--k", cfg.ks, "Comma-separated cutoffs, strictly increasing");
  cmd.add_option("--threshold", cfg.threshold, "Labels above this are relevant for MAP");
  cmd.add_option("--log-base", cfg.log_base, "DCG discount log base");
  cmd.add_option("--seed", cfg.seed, "Seed for Monte Carlo bounds and bootstrap");
  cmd.add_option("--prefix-limit", cfg.prefix_limit, "Exhaustive oracle prefix-class limit");
}

void add_eval_options(CLI::App& cmd, Config& cfg) {
  cmd.add_option("--run", cfg.runs, "NAME=PATH of a TREC run file (repeatable)");
  cmd.add_option("--norm", cfg.norm, "all, or a comma list of none, upper, v1, v2");
  cmd.add_option("--bounds", cfg.bounds, "closed, exhaustive or mc:N");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Ranking evaluation with random-baseline normalization", "rankeval"};
  app.require_subcommand(1);

  auto* eval = app.add_subcommand("eval", "Per-query and aggregate metric tables");
  add_dataset_options(*eval, cfg);
  add_metric_options(*eval, cfg);
  add_eval_options(*eval, cfg);
  eval->add_flag("--exclude-degenerate", cfg.exclude_degenerate, "Leave degenerate queries out of means");

  auto* bounds = app.add_subcommand("bounds", "Per-query IUB and RLB values");
  add_dataset_options(*bounds, cfg);
  add_metric_options(*bounds, cfg);
  bounds->add_option("--bounds", cfg.bounds, "Comma list of closed, exhaustive, mc:N");
  bounds->add_option("--hist-bin", cfg.hist_bin, "Bin width of the expected-score histogram");

  auto* compare = app.add_subcommand("compare", "Kendall tau, swap rate, PAD, significance and conflicts");
  auto* categorize = app.add_subcommand("categorize", "Uninformative and ideal query sets");
  auto* report = app.add_subcommand("report", "eval, compare and categorize in one go");
  for (auto* cmd : {compare, categorize, report}) {
    add_dataset_options(*cmd, cfg);
    add_metric_options(*cmd, cfg);
    add_eval_options(*cmd, cfg);
    cmd->add_option("--top-n", cfg.top_n, "Queries per category (default 10% of queries)")
        ->check(CLI::NonNegativeNumber);
  }
  for (auto* cmd : {compare, report}) {
    cmd->add_option("--alpha", cfg.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--test", cfg.test, "ttest or bootstrap")->check(CLI::IsMember({"ttest", "bootstrap"}));
    cmd->add_option("--bootstrap-b", cfg.bootstrap_b, "Bootstrap resamples")->check(CLI::Range(100, 10'000'000));
  }
  report->add_flag("--exclude-degenerate", cfg.exclude_degenerate, "Leave degenerate queries out of means");

  auto* rank = app.add_subcommand("rank", "Write a run file from a reference ranker");
  add_dataset_options(*rank, cfg);
  rank->add_option("--policy", cfg.policy, "ideal, worst, random:SEED or feature:ID")->required();
  rank->add_option("--tag", cfg.tag, "Run tag (default derived from the policy)");
  rank->add_option("--output", cfg.output, "Run file path (default OUT/TAG.run)");

  std::vector<const char*> argv{"rankeval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(cfg, err);
    if (*bounds) return cmd_bounds(cfg, err);
    if (*compare) return cmd_compare(cfg, err);
    if (*categorize) return cmd_categorize(cfg, err);
    if (*rank) return cmd_rank(cfg, err);
    if (*report) {
      if (int rc = cmd_eval(cfg, err); rc != 0) return rc;
      if (int rc = cmd_compare(cfg, err); rc != 0) return rc;
      return cmd_categorize(cfg, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace rankeval::cli
