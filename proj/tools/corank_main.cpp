// Command-line front end: dataset generation plus the co-ranking analysis
// pipelines (co-ranking matrix, Q_NX/LCMC curves, quality maps, per-point
// quality coloring). All outputs are reproducible byte for byte for fixed
// inputs and seeds.

#include <charconv>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corank/corank.hpp"

namespace {

using namespace corank;

MetricSpec parse_metric(const std::string& text) {
  if (text == "euclidean") {
    return MetricSpec{MetricKind::euclidean, 0};
  }
  if (text == "precomputed") {
    return MetricSpec{MetricKind::precomputed, 0};
  }
  const std::string prefix = "geodesic:";
  if (text.rfind(prefix, 0) == 0) {
    int k = 0;
    const char* begin = text.data() + prefix.size();
    const char* end = text.data() + text.size();
    const auto parsed = std::from_chars(begin, end, k);
    if (parsed.ec == std::errc{} && parsed.ptr == end && k >= 1) {
      return MetricSpec{MetricKind::geodesic, k};
    }
  }
  throw CLI::ValidationError(
      "metric must be euclidean, precomputed, or geodesic:<k> with k >= 1");
}

std::string check_metric(const std::string& text) {
  try {
    parse_metric(text);
  } catch (const CLI::ValidationError& e) {
    return e.what();
  }
  return {};
}

struct SideOptions {
  std::string path;
  std::string metric = "euclidean";
};

struct AnalysisInput {
  SideOptions high;
  SideOptions low;
};

/// Distance matrices of both sides plus (when available as coordinates) the
/// low-side points for scatter output.
struct LoadedPair {
  DistanceMatrix high_d;
  DistanceMatrix low_d;
  std::optional<PointSet> low_points;
};

DistanceMatrix load_side(const SideOptions& side) {
  const MetricSpec metric = parse_metric(side.metric);
  if (metric.kind == MetricKind::precomputed) {
    return read_distance_matrix(side.path);
  }
  return pairwise_distances(read_points(side.path), metric);
}

LoadedPair load_pair(const AnalysisInput& input) {
  LoadedPair loaded;
  loaded.high_d = load_side(input.high);
  const MetricSpec low_metric = parse_metric(input.low.metric);
  if (low_metric.kind == MetricKind::precomputed) {
    loaded.low_d = read_distance_matrix(input.low.path);
  } else {
    PointSet points = read_points(input.low.path);
    loaded.low_d = pairwise_distances(points, low_metric);
    loaded.low_points = std::move(points);
  }
  if (loaded.high_d.size() != loaded.low_d.size()) {
    throw input_error("high side has " + std::to_string(loaded.high_d.size()) +
                      " points but low side has " +
                      std::to_string(loaded.low_d.size()));
  }
  return loaded;
}

void add_analysis_options(CLI::App* cmd, AnalysisInput& input) {
  cmd->add_option("--high", input.high.path,
                  "high-dimensional input file (points, or distances with "
                  "--metric-high precomputed)")
      ->required();
  cmd->add_option("--low", input.low.path, "low-dimensional input file")
      ->required();
  cmd->add_option("--metric-high", input.high.metric,
                  "euclidean | precomputed | geodesic:<k>")
      ->check(CLI::Validator(check_metric, "METRIC"))
      ->capture_default_str();
  cmd->add_option("--metric-low", input.low.metric,
                  "euclidean | precomputed | geodesic:<k>")
      ->check(CLI::Validator(check_metric, "METRIC"))
      ->capture_default_str();
}

Normalization parse_normalization(const std::string& text) {
  return text == "raw" ? Normalization::raw : Normalization::region;
}

ToleranceComparison parse_tolerance(const std::string& text) {
  return text == "inclusive" ? ToleranceComparison::inclusive
                             : ToleranceComparison::strict;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenCommon {
  std::string out_high;
  std::string out_low;
};

void run_gen_swaps(int n, const GenCommon& out) {
  const MappingPair pair = gen_swapped_row(n);
  write_points(pair.high, out.out_high);
  write_points(pair.low, out.out_low);
}

struct SwissRollOptions {
  int n = 500;
  std::uint64_t seed = 0;
  double t_min = 1.5 * std::numbers::pi;
  double t_max = 4.5 * std::numbers::pi;
  double height = 21.0;
};

void run_gen_swissroll(const SwissRollOptions& opts, const GenCommon& out) {
  const MappingPair roll =
      gen_swiss_roll(opts.n, opts.seed, opts.t_min, opts.t_max, opts.height);
  write_points(roll.high, out.out_high);
  write_points(roll.low, out.out_low);
}

struct RandomGenOptions {
  int n = 100;
  int d = 3;
  int d_low = 0;  // 0: same as d
  std::uint64_t seed = 0;
};

void run_gen_random(const RandomGenOptions& opts, const GenCommon& out) {
  write_points(gen_random_points(opts.n, opts.d, opts.seed), out.out_high);
  if (!out.out_low.empty()) {
    const int d_low = opts.d_low > 0 ? opts.d_low : opts.d;
    write_points(gen_random_points(opts.n, d_low, opts.seed + 1), out.out_low);
  }
}

// ---------------------------------------------------------------------------
// analysis commands
// ---------------------------------------------------------------------------

struct CorankingOptions {
  AnalysisInput input;
  std::string csv;
  std::string heatmap;
};

void run_coranking(const CorankingOptions& opts) {
  const LoadedPair loaded = load_pair(opts.input);
  const CoRankingMatrix q = coranking_matrix(rank_matrix(loaded.high_d),
                                             rank_matrix(loaded.low_d));
  if (!opts.csv.empty()) {
    write_matrix_csv(q.q, std::filesystem::path(opts.csv));
  }
  if (!opts.heatmap.empty()) {
    write_pgm(q.q, opts.heatmap);
  }
  if (opts.csv.empty() && opts.heatmap.empty()) {
    write_matrix_csv(q.q, std::cout);
  }
}

struct QnxOptions {
  AnalysisInput input;
  std::string csv;
  bool split = false;
};

void run_qnx(const QnxOptions& opts) {
  const LoadedPair loaded = load_pair(opts.input);
  const CoRankingMatrix q = coranking_matrix(rank_matrix(loaded.high_d),
                                             rank_matrix(loaded.low_d));
  const QualityCurve qnx = qnx_curve(q);
  const QualityCurve lcmc = lcmc_curve(qnx);

  const auto emit = [&](std::ostream& out) {
    out << "K,qnx,lcmc\n";
    for (std::size_t K = 1; K < qnx.points; ++K) {
      out << K << ',' << format_number(qnx.values[K - 1]) << ','
          << format_number(lcmc.values[K - 1]) << '\n';
    }
  };
  if (!opts.csv.empty()) {
    auto out = corank::detail::open_for_writing(opts.csv);
    emit(out);
  } else {
    emit(std::cout);
  }
  if (opts.split) {
    const SplitSummary split = split_summary(qnx);
    std::cout << "k_max=" << split.k_max << '\n'
              << "q_local=" << format_number(split.q_local) << '\n'
              << "q_global=" << format_number(split.q_global) << '\n';
  }
}

struct QmapOptions {
  AnalysisInput input;
  std::string normalization = "region";
  std::string tolerance = "strict";
  std::uint32_t baseline_samples = 0;  // 0: no baseline requested
  std::uint64_t seed = 0;
  std::string csv;
  std::string heatmap;
  std::string baseline_csv;
  std::string centered_csv;
  bool scalar = false;
};

void run_qmap(const QmapOptions& opts) {
  const Normalization norm = parse_normalization(opts.normalization);
  const ToleranceComparison cmp = parse_tolerance(opts.tolerance);
  const LoadedPair loaded = load_pair(opts.input);
  const RankMatrix rho = rank_matrix(loaded.high_d);
  const RankMatrix r = rank_matrix(loaded.low_d);
  const QualityMap map =
      quality_map(min_error_histogram(rho, r), norm, cmp);

  std::optional<QualityMap> baseline;
  if (opts.baseline_samples > 0) {
    baseline = random_baseline(rho, loaded.low_d,
                               BaselineSpec{opts.baseline_samples, opts.seed},
                               norm, cmp);
  }

  if (!opts.csv.empty()) {
    write_matrix_csv(map.values, std::filesystem::path(opts.csv));
  }
  if (!opts.heatmap.empty()) {
    write_pgm(map.values, opts.heatmap);
  }
  if (!opts.baseline_csv.empty()) {
    write_matrix_csv(baseline->values, std::filesystem::path(opts.baseline_csv));
  }
  if (!opts.centered_csv.empty()) {
    write_matrix_csv(centered_map(map, *baseline).values,
                     std::filesystem::path(opts.centered_csv));
  }
  if (opts.scalar) {
    std::cout << "scalar=" << format_number(scalar_summary(map, *baseline))
              << '\n';
  }
  const bool wrote_something = !opts.csv.empty() || !opts.heatmap.empty() ||
                               !opts.baseline_csv.empty() ||
                               !opts.centered_csv.empty() || opts.scalar;
  if (!wrote_something) {
    write_matrix_csv(map.values, std::cout);
  }
}

struct LocalOptions {
  AnalysisInput input;
  int kappa_s = 0;  // 0: K_max of the LCMC split
  int kappa_t = 1;
  std::string tolerance = "strict";
  std::string scheme = "red_green";
  std::string csv;
  std::string svg;
  bool naive = false;
};

void run_local(const LocalOptions& opts) {
  const ToleranceComparison cmp = parse_tolerance(opts.tolerance);
  const LoadedPair loaded = load_pair(opts.input);
  const RankMatrix rho = rank_matrix(loaded.high_d);
  const RankMatrix r = rank_matrix(loaded.low_d);

  int kappa_s = opts.kappa_s;
  if (kappa_s == 0) {
    kappa_s = split_summary(qnx_curve(coranking_matrix(rho, r))).k_max;
  }
  const LocalQualityVector quality =
      opts.naive ? pointwise_quality_naive(rho, r, kappa_s, opts.kappa_t, cmp)
                 : pointwise_quality(rho, r, kappa_s, opts.kappa_t, cmp);
  const ColorScheme scheme = opts.scheme == "grayscale"
                                 ? ColorScheme::grayscale
                                 : ColorScheme::red_green;
  const std::vector<Rgb> colors = colorize(quality, scheme);

  const auto emit = [&](std::ostream& out) {
    out << "index,value,r,g,b\n";
    for (std::size_t i = 0; i < quality.values.size(); ++i) {
      out << i << ',' << format_number(quality.values[i]) << ','
          << static_cast<unsigned>(colors[i].r) << ','
          << static_cast<unsigned>(colors[i].g) << ','
          << static_cast<unsigned>(colors[i].b) << '\n';
    }
  };
  if (!opts.csv.empty()) {
    auto out = corank::detail::open_for_writing(opts.csv);
    emit(out);
  } else if (opts.svg.empty()) {
    emit(std::cout);
  }
  if (!opts.svg.empty()) {
    if (!loaded.low_points || loaded.low_points->dim() != 2) {
      throw input_error(
          "svg output needs the low side as 2-D points, not precomputed "
          "distances");
    }
    write_svg_scatter(*loaded.low_points, colors, opts.svg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "co-ranking analysis of dimensionality-reduction embeddings: rank "
      "matrices, Q_NX/LCMC curves, rank-error quality maps and per-point "
      "quality coloring"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option_function<unsigned>(
      "--threads", [](unsigned threads) { set_thread_count(threads); },
      "worker threads (0 = hardware concurrency); results do not depend on "
      "this");

  // gen
  auto* gen = app.add_subcommand("gen", "generate synthetic datasets");
  gen->require_subcommand(1);

  GenCommon swaps_out;
  int swaps_n = 20;
  auto* gen_swaps = gen->add_subcommand(
      "swaps", "equidistant line with adjacent pairs swapped");
  gen_swaps->add_option("--n", swaps_n, "point count (even)")
      ->capture_default_str();
  gen_swaps->add_option("--out-high", swaps_out.out_high, "original point file")
      ->required();
  gen_swaps->add_option("--out-low", swaps_out.out_low, "embedding point file")
      ->required();
  gen_swaps->callback([&] { run_gen_swaps(swaps_n, swaps_out); });

  GenCommon roll_out;
  SwissRollOptions roll;
  auto* gen_roll = gen->add_subcommand(
      "swissroll", "swiss roll in 3-D with its unrolled 2-D ground truth");
  gen_roll->add_option("--n", roll.n, "sample count")->capture_default_str();
  gen_roll->add_option("--seed", roll.seed, "random seed")
      ->capture_default_str();
  gen_roll->add_option("--t-min", roll.t_min, "spiral parameter start")
      ->capture_default_str();
  gen_roll->add_option("--t-max", roll.t_max, "spiral parameter end")
      ->capture_default_str();
  gen_roll->add_option("--height", roll.height, "roll height")
      ->capture_default_str();
  gen_roll->add_option("--out-high", roll_out.out_high, "3-D point file")
      ->required();
  gen_roll->add_option("--out-low", roll_out.out_low,
                       "2-D ground-truth point file")
      ->required();
  gen_roll->callback([&] { run_gen_swissroll(roll, roll_out); });

  GenCommon random_out;
  RandomGenOptions random_opts;
  auto* gen_random = gen->add_subcommand(
      "random", "seeded uniform points in the unit cube");
  gen_random->add_option("--n", random_opts.n, "point count")
      ->capture_default_str();
  gen_random->add_option("--d", random_opts.d, "dimension of the high set")
      ->capture_default_str();
  gen_random->add_option("--d-low", random_opts.d_low,
                         "dimension of the low set (default: same as --d)");
  gen_random->add_option("--seed", random_opts.seed,
                         "random seed (the low set uses seed+1)")
      ->capture_default_str();
  gen_random->add_option("--out-high", random_out.out_high, "high point file")
      ->required();
  gen_random->add_option("--out-low", random_out.out_low,
                         "optional independent low point file");
  gen_random->callback([&] { run_gen_random(random_opts, random_out); });

  // coranking
  CorankingOptions coranking_opts;
  auto* coranking_cmd =
      app.add_subcommand("coranking", "co-ranking matrix of a mapping");
  add_analysis_options(coranking_cmd, coranking_opts.input);
  coranking_cmd->add_option("--csv", coranking_opts.csv,
                            "write the matrix as CSV (stdout if no output "
                            "option is chosen)");
  coranking_cmd->add_option("--heatmap", coranking_opts.heatmap,
                            "write a PGM heatmap (white = 0, black = max)");
  coranking_cmd->callback([&] { run_coranking(coranking_opts); });

  // qnx
  QnxOptions qnx_opts;
  auto* qnx_cmd = app.add_subcommand(
      "qnx", "Q_NX and LCMC curves over all neighborhood sizes");
  add_analysis_options(qnx_cmd, qnx_opts.input);
  qnx_cmd->add_option("--csv", qnx_opts.csv, "write K,qnx,lcmc rows to a file");
  qnx_cmd->add_flag("--split", qnx_opts.split,
                    "also print k_max, q_local, q_global");
  qnx_cmd->callback([&] { run_qnx(qnx_opts); });

  // qmap
  QmapOptions qmap_opts;
  auto* qmap_cmd = app.add_subcommand(
      "qmap", "rank-error quality over the full (kappa_s, kappa_t) grid");
  add_analysis_options(qmap_cmd, qmap_opts.input);
  qmap_cmd
      ->add_option("--normalization", qmap_opts.normalization,
                   "region (exact pair count, values in [0,1]) or raw "
                   "(divisor kappa_s*N)")
      ->check(CLI::IsMember({"region", "raw"}))
      ->capture_default_str();
  qmap_cmd
      ->add_option("--tolerance", qmap_opts.tolerance,
                   "strict (error < kappa_t) or inclusive (error <= kappa_t)")
      ->check(CLI::IsMember({"strict", "inclusive"}))
      ->capture_default_str();
  auto* baseline_opt =
      qmap_cmd->add_option("--baseline", qmap_opts.baseline_samples,
                           "random-mapping baseline sample count")
          ->check(CLI::PositiveNumber);
  qmap_cmd->add_option("--seed", qmap_opts.seed, "baseline seed")
      ->capture_default_str();
  qmap_cmd->add_option("--csv", qmap_opts.csv,
                       "write the map as CSV (rows kappa_s, columns kappa_t)");
  qmap_cmd->add_option("--heatmap", qmap_opts.heatmap, "write a PGM heatmap");
  qmap_cmd->add_option("--baseline-csv", qmap_opts.baseline_csv,
                       "write the averaged baseline map as CSV")
      ->needs(baseline_opt);
  qmap_cmd->add_option("--centered-csv", qmap_opts.centered_csv,
                       "write map minus baseline as CSV")
      ->needs(baseline_opt);
  qmap_cmd->add_flag("--scalar", qmap_opts.scalar,
                     "print the mean map value over cells above the baseline")
      ->needs(baseline_opt);
  qmap_cmd->callback([&] { run_qmap(qmap_opts); });

  // local
  LocalOptions local_opts;
  auto* local_cmd = app.add_subcommand(
      "local", "per-point quality and colors for embedding plots");
  add_analysis_options(local_cmd, local_opts.input);
  local_cmd
      ->add_option("--ks", local_opts.kappa_s,
                   "rank significance cut-off (default: K_max of the LCMC "
                   "split)")
      ->check(CLI::PositiveNumber);
  local_cmd->add_option("--kt", local_opts.kappa_t, "error tolerance cut-off")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  local_cmd
      ->add_option("--tolerance", local_opts.tolerance,
                   "strict (error < kappa_t) or inclusive (error <= kappa_t)")
      ->check(CLI::IsMember({"strict", "inclusive"}))
      ->capture_default_str();
  local_cmd->add_option("--scheme", local_opts.scheme, "color scheme")
      ->check(CLI::IsMember({"red_green", "grayscale"}))
      ->capture_default_str();
  local_cmd->add_flag("--naive", local_opts.naive,
                      "one-sided diagnostic instead of the symmetric measure");
  local_cmd->add_option("--csv", local_opts.csv,
                        "write index,value,r,g,b rows to a file");
  local_cmd->add_option("--svg", local_opts.svg,
                        "write a colored scatter plot of the low-side points");
  local_cmd->callback([&] { run_local(local_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
