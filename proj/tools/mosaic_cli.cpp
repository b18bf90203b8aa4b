// mosaic: generate modular link streams with planted mosaic communities and
// benchmark snapshot-based dynamic community detection against them.
//
// Exit codes: 0 success, 2 usage / config / parse error, 3 I/O error.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mosaic/errors.hpp"
#include "mosaic/harness.hpp"
#include "mosaic/io.hpp"
#include "mosaic/snapshot.hpp"

namespace fs = std::filesystem;
using namespace mosaic;

namespace {

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  double window = 0.0;
  std::vector<double> phis;
  std::vector<std::string> methods;
  unsigned threads = 0;
  std::string edges_path;
  std::string truth_path;
  bool truth_passthrough = false;
  double theta = -1.0;
  double rho = -1.0;
};

RunConfig load_config(const Options& o) {
  RunConfig c = RunConfig::defaults();
  if (!o.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(o.config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    c = RunConfig::from_json(j);
  }
  if (o.seed_set) c.seed = o.seed;
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.window > 0.0) c.window = o.window;
  if (o.threads > 0) c.threads = o.threads;
  if (!o.phis.empty()) {
    if (!c.sweep) c.sweep = SweepSpec{};
    c.sweep->phis = o.phis;
  }
  if (!o.methods.empty()) {
    c.detectors.clear();
    for (const auto& m : o.methods) c.detectors.push_back(DetectorConfig{parse_method(m), 0.3, 0.9, 0});
  }
  for (auto& d : c.detectors) {
    if (o.theta >= 0.0) d.theta = o.theta;
    if (o.rho >= 0.0) d.rho = o.rho;
    d.seed = c.seed;
  }
  c.validate();
  return c;
}

fs::path out_dir(const RunConfig& c) {
  fs::path dir = c.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

MosaicPartition load_truth(const std::string& path) {
  std::istringstream is(read_file(path));
  return read_truth(is);
}

LinkStream load_stream(const std::string& path, const MosaicPartition& truth) {
  std::istringstream is(read_file(path));
  auto edges = read_edges_csv(is);
  try {
    return LinkStream{truth.node_count(), truth.domain(), std::move(edges)};
  } catch (const DomainError& e) {
    throw ParseError(std::string("edges file: ") + e.what());
  }
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParameterError(std::string(flag) + " is required");
}

int cmd_generate(const Options& o) {
  auto c = load_config(o);
  auto inst = generate_instance(c, c.seed);
  auto dir = out_dir(c);
  std::ostringstream edges;
  write_edges_csv(edges, inst.stream);
  write_file((dir / "edges.csv").string(), edges.str());
  std::ostringstream truth;
  write_truth(truth, inst.truth);
  write_file((dir / "truth.json").string(), truth.str());
  write_file((dir / "manifest.json").string(), dump_json(manifest(c, inst)));
  std::cout << dump_json(inst.summary.to_json());
  return 0;
}

int cmd_aggregate(const Options& o) {
  require(o.edges_path, "--edges");
  require(o.truth_path, "--truth");
  auto c = load_config(o);
  auto truth = load_truth(o.truth_path);
  auto stream = load_stream(o.edges_path, truth);
  auto snaps = aggregate(stream, c.window);
  std::ostringstream os;
  write_snapshots_csv(os, snaps);
  write_file((out_dir(c) / "snapshots.csv").string(), os.str());
  std::cout << snaps.window_count() << " windows\n";
  return 0;
}

int cmd_detect(const Options& o) {
  require(o.edges_path, "--edges");
  require(o.truth_path, "--truth");
  auto c = load_config(o);
  auto truth = load_truth(o.truth_path);
  auto stream = load_stream(o.edges_path, truth);
  auto snaps = aggregate(stream, c.window);
  auto dir = out_dir(c);
  for (const auto& d : c.detectors) {
    std::ostringstream os;
    write_partition_csv(os, detect(snaps, d));
    write_file((dir / (to_string(d.method) + ".csv")).string(), os.str());
  }
  return 0;
}

int cmd_evaluate(const Options& o) {
  require(o.edges_path, "--edges");
  require(o.truth_path, "--truth");
  auto c = load_config(o);
  auto truth = load_truth(o.truth_path);
  auto stream = load_stream(o.edges_path, truth);
  auto rows = evaluate(truth, stream, c.window, c.detectors, o.truth_passthrough);
  auto csv = report_csv(rows);
  write_file((out_dir(c) / "report.csv").string(), csv);
  std::cout << csv;
  return 0;
}

int cmd_sweep(const Options& o) {
  auto c = load_config(o);
  if (!c.sweep) c.sweep = SweepSpec{};
  auto result = run_sweep(c);
  auto dir = out_dir(c);
  write_file((dir / "sweep.csv").string(), sweep_csv(result));
  auto summary = sweep_summary_csv(result);
  write_file((dir / "sweep_summary.csv").string(), summary);
  std::cout << summary;
  return 0;
}

int cmd_validate(const Options& o) {
  require(o.truth_path, "--truth");
  auto truth = load_truth(o.truth_path);
  auto report = validate_partition(truth);
  std::cout << report.summary() << "\n";
  if (!report.ok()) return 2;
  if (!o.edges_path.empty()) {
    auto stream = load_stream(o.edges_path, truth);
    auto b = classify_edges(stream, truth);
    if (b.empty > 0) {
      std::cout << b.empty << " edge(s) touch the empty community\n";
      return 2;
    }
    std::cout << stream.size() << " edges consistent with the partition\n";
  }
  return 0;
}

int cmd_stats(const Options& o) {
  require(o.edges_path, "--edges");
  require(o.truth_path, "--truth");
  auto truth = load_truth(o.truth_path);
  auto stream = load_stream(o.edges_path, truth);
  std::cout << dump_json(summarize(truth, stream).to_json());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular link stream generator and dynamic community detection benchmark"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config_path, "JSON run configuration");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { o.seed = s, o.seed_set = true; }, "Master seed");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--window", o.window, "Aggregation window size")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker threads");
  };
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--edges", o.edges_path, "Edges CSV");
    sub->add_option("--truth", o.truth_path, "Ground-truth JSON");
  };
  auto add_methods = [&](CLI::App* sub) {
    sub->add_option("--method", o.methods, "Detection methods")->delimiter(',');
    sub->add_option("--theta", o.theta, "Jaccard matching threshold");
    sub->add_option("--rho", o.rho, "Smoothed-graph blend coefficient");
  };

  auto* gen = app.add_subcommand("generate", "Generate a link stream and its ground truth");
  add_common(gen);
  auto* agg = app.add_subcommand("aggregate", "Aggregate a link stream into window snapshots");
  add_common(agg);
  add_inputs(agg);
  auto* det = app.add_subcommand("detect", "Run dynamic community detection on snapshots");
  add_common(det);
  add_inputs(det);
  add_methods(det);
  auto* eval = app.add_subcommand("evaluate", "Score detectors against the ground truth");
  add_common(eval);
  add_inputs(eval);
  add_methods(eval);
  eval->add_flag("--truth-passthrough", o.truth_passthrough, "Add a row scoring the projected truth itself");
  auto* sweep = app.add_subcommand("sweep", "Detection quality and smoothness over phi = 1 - alpha = beta");
  add_common(sweep);
  add_methods(sweep);
  sweep->add_option("--phi", o.phis, "Phi values")->delimiter(',');
  auto* val = app.add_subcommand("validate", "Check a ground-truth partition (and edges against it)");
  add_inputs(val);
  auto* stats = app.add_subcommand("stats", "Summary statistics of a generated instance");
  add_inputs(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*agg) return cmd_aggregate(o);
    if (*det) return cmd_detect(o);
    if (*eval) return cmd_evaluate(o);
    if (*sweep) return cmd_sweep(o);
    if (*val) return cmd_validate(o);
    if (*stats) return cmd_stats(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
