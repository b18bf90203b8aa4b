#include "mosaic/harness.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "mosaic/errors.hpp"
#include "mosaic/io.hpp"
#include "mosaic/snapshot.hpp"

namespace mosaic {

using nlohmann::json;

namespace {

constexpr std::uint64_t kScenarioStream = 11;
constexpr std::uint64_t kEdgeStreamKey = 12;
constexpr std::uint64_t kDetectStream = 13;
constexpr std::uint64_t kInstanceStream = 100;

json rates_to_json(const MosaicRates& r) {
  if (r.overrides().empty()) return r.uniform();
  json per = json::object();
  for (const auto& [id, rate] : r.overrides()) per[std::to_string(id)] = rate;
  return {{"default", r.uniform()}, {"per_mosaic", per}};
}

json rates_to_json(const PairRates& r) {
  if (r.overrides().empty()) return r.uniform();
  json per = json::array();
  for (const auto& [key, rate] : r.overrides()) per.push_back({key.first, key.second, rate});
  return {{"default", r.uniform()}, {"per_pair", per}};
}

MosaicRates mosaic_rates_from_json(const json& j) {
  if (j.is_number()) return MosaicRates{j.get<double>()};
  MosaicRates r{j.value("default", 0.0)};
  if (j.contains("per_mosaic"))
    for (const auto& [key, rate] : j.at("per_mosaic").items()) r.set(std::stoll(key), rate.get<double>());
  return r;
}

PairRates pair_rates_from_json(const json& j) {
  if (j.is_number()) return PairRates{j.get<double>()};
  PairRates r{j.value("default", 0.0)};
  if (j.contains("per_pair"))
    for (const auto& entry : j.at("per_pair"))
      r.set(entry.at(0).get<MosaicId>(), entry.at(1).get<MosaicId>(), entry.at(2).get<double>());
  return r;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  c.scenario.kind = ScenarioKind::kRandom;
  c.scenario.k = 30;
  c.scenario.gamma = 0.2;
  c.edges.alpha = 0.9;
  c.edges.beta = 0.1;
  c.edges.lambda_in = MosaicRates{0.4};
  c.edges.lambda_ext = PairRates{0.1};
  for (Method m : kAllMethods) c.detectors.push_back(DetectorConfig{m, 0.3, 0.9, 0});
  return c;
}

void RunConfig::validate() const {
  if (nodes < 2) throw ParameterError("need at least 2 nodes");
  scenario.validate();
  edges.validate();
  if (!(window > 0.0)) throw ParameterError("window size must be positive");
  for (const auto& d : detectors) d.validate();
  if (sweep) {
    if (sweep->phis.empty()) throw ParameterError("sweep needs at least one phi value");
    for (double phi : sweep->phis)
      if (!(phi >= 0.0 && phi <= 0.5)) throw ParameterError("phi values must lie in [0, 0.5]");
    if (sweep->seeds < 1) throw ParameterError("sweep needs at least one seed");
  }
}

json RunConfig::to_json() const {
  json scen = {{"kind", to_string(scenario.kind)},
               {"k", scenario.k},
               {"window_mode", to_string(scenario.window_mode)},
               {"gamma", scenario.gamma},
               {"min_nodes", scenario.min_nodes},
               {"min_duration", scenario.min_duration_for(domain)}};
  if (scenario.kind == ScenarioKind::kExperimental) {
    json specs = json::array();
    for (const auto& s : scenario.specs)
      specs.push_back({{"nodes", s.members}, {"t_start", s.interval.start}, {"t_end", s.interval.end}});
    scen["mosaics"] = specs;
  }
  json dets = json::array();
  for (const auto& d : detectors)
    dets.push_back({{"method", to_string(d.method)}, {"theta", d.theta}, {"rho", d.rho}});
  json j = {{"nodes", nodes},
            {"t_start", domain.start},
            {"t_end", domain.end},
            {"scenario", scen},
            {"edges",
             {{"alpha", edges.alpha},
              {"beta", edges.beta},
              {"lambda_in", rates_to_json(edges.lambda_in)},
              {"lambda_ext", rates_to_json(edges.lambda_ext)},
              {"eta", edges.eta}}},
            {"window", window},
            {"detectors", dets},
            {"seed", seed}};
  if (sweep) j["sweep"] = {{"phi", sweep->phis}, {"seeds", sweep->seeds}};
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c = defaults();
  try {
    c.nodes = j.value("nodes", c.nodes);
    c.domain = TimeInterval{j.value("t_start", c.domain.start), j.value("t_end", c.domain.end)};
    if (j.contains("scenario")) {
      const auto& s = j.at("scenario");
      if (s.contains("kind")) c.scenario.kind = parse_scenario_kind(s.at("kind").get<std::string>());
      c.scenario.k = s.value("k", c.scenario.k);
      if (s.contains("window_mode")) c.scenario.window_mode = parse_window_mode(s.at("window_mode").get<std::string>());
      c.scenario.gamma = s.value("gamma", c.scenario.gamma);
      c.scenario.min_nodes = s.value("min_nodes", c.scenario.min_nodes);
      c.scenario.min_duration = s.value("min_duration", c.scenario.min_duration);
      if (s.contains("mosaics")) {
        for (const auto& m : s.at("mosaics")) {
          c.scenario.specs.push_back({m.at("nodes").get<std::vector<NodeId>>(),
                                      TimeInterval{m.at("t_start").get<double>(), m.at("t_end").get<double>()}});
        }
      }
    }
    if (j.contains("edges")) {
      const auto& e = j.at("edges");
      c.edges.alpha = e.value("alpha", c.edges.alpha);
      c.edges.beta = e.value("beta", c.edges.beta);
      if (e.contains("lambda_in")) c.edges.lambda_in = mosaic_rates_from_json(e.at("lambda_in"));
      if (e.contains("lambda_ext")) c.edges.lambda_ext = pair_rates_from_json(e.at("lambda_ext"));
      c.edges.eta = e.value("eta", c.edges.eta);
    }
    c.window = j.value("window", c.window);
    if (j.contains("detectors")) {
      c.detectors.clear();
      for (const auto& d : j.at("detectors")) {
        DetectorConfig dc;
        dc.method = parse_method(d.at("method").get<std::string>());
        dc.theta = d.value("theta", dc.theta);
        dc.rho = d.value("rho", dc.rho);
        c.detectors.push_back(dc);
      }
    }
    if (j.contains("sweep")) {
      SweepSpec sw;
      const auto& s = j.at("sweep");
      if (s.contains("phi")) sw.phis = s.at("phi").get<std::vector<double>>();
      sw.seeds = s.value("seeds", sw.seeds);
      c.sweep = sw;
    }
    c.seed = j.value("seed", c.seed);
    c.out_dir = j.value("out", c.out_dir);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

json InstanceSummary::to_json() const {
  return {{"community_count", community_count}, {"mean_size", mean_size},
          {"mean_duration", mean_duration},     {"edge_count", edge_count},
          {"internal_edges", internal_edges},   {"external_edges", external_edges},
          {"empty_edges", empty_edges}};
}

InstanceSummary summarize(const MosaicPartition& truth, const LinkStream& stream) {
  InstanceSummary s;
  s.community_count = truth.size();
  std::vector<double> sizes;
  std::vector<double> durations;
  for (const auto& m : truth.mosaics()) {
    sizes.push_back(static_cast<double>(m.size()));
    durations.push_back(m.interval.length());
  }
  s.mean_size = mean(sizes);
  s.mean_duration = mean(durations);
  s.edge_count = stream.size();
  auto b = classify_edges(stream, truth);
  s.internal_edges = b.internal;
  s.external_edges = b.external;
  s.empty_edges = b.empty;
  return s;
}

Instance generate_instance(const RunConfig& config, std::uint64_t seed) {
  config.validate();
  ScenarioParams sp = config.scenario;
  sp.seed = derive_seed(seed, kScenarioStream);
  EdgeGenParams ep = config.edges;
  ep.seed = derive_seed(seed, kEdgeStreamKey);
  Instance inst;
  inst.truth = generate_scenario(sp, config.nodes, config.domain);
  inst.stream = generate_link_stream(inst.truth, ep, config.threads);
  inst.summary = summarize(inst.truth, inst.stream);
  return inst;
}

json manifest(const RunConfig& config, const Instance& instance) {
  return {{"generator", "mosaic"},
          {"version", MOSAIC_VERSION},
          {"seed", config.seed},
          {"config", config.to_json()},
          {"summary", instance.summary.to_json()}};
}

std::vector<EvalRow> evaluate(const MosaicPartition& truth, const LinkStream& stream, double window,
                              const std::vector<DetectorConfig>& detectors, bool truth_passthrough) {
  auto snaps = aggregate(stream, window);
  auto projected = project_ground_truth(truth, snaps.boundaries);
  std::vector<EvalRow> rows;
  if (truth_passthrough) rows.push_back({"truth", score(projected, projected, truth, snaps.boundaries)});
  for (const auto& cfg : detectors) {
    auto detected = detect(snaps, cfg);
    rows.push_back({to_string(cfg.method), score(detected, projected, truth, snaps.boundaries)});
  }
  return rows;
}

std::string report_csv(const std::vector<EvalRow>& rows) {
  std::ostringstream os;
  os << "method,mean_nmi,mosaic_nmi,sm_p,sm_n,sm_l\n";
  for (const auto& r : rows) {
    os << r.method << ',' << format_double(r.report.mean_nmi) << ',' << format_double(r.report.mosaic_nmi) << ','
       << format_double(r.report.sm_p) << ',' << format_double(r.report.sm_n) << ','
       << format_double(r.report.sm_l) << '\n';
  }
  return os.str();
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t index) {
  return derive_seed(master, kInstanceStream, index);
}

SweepResult run_sweep(const RunConfig& config) {
  config.validate();
  SweepSpec spec = config.sweep.value_or(SweepSpec{});
  std::vector<DetectorConfig> detectors = config.detectors;
  if (detectors.empty())
    for (Method m : kAllMethods) detectors.push_back(DetectorConfig{m, 0.3, 0.9, 0});

  struct Point {
    double phi;
    std::size_t seed_index;
  };
  std::vector<Point> points;
  for (double phi : spec.phis)
    for (std::size_t s = 0; s < spec.seeds; ++s) points.push_back({phi, s});

  std::vector<std::vector<SweepRow>> results(points.size());
  auto run_point = [&](std::size_t i) {
    const auto& pt = points[i];
    RunConfig c = config;
    c.threads = 1;
    c.edges.alpha = 1.0 - pt.phi;
    c.edges.beta = pt.phi;
    std::uint64_t seed = instance_seed(config.seed, pt.seed_index);
    auto inst = generate_instance(c, seed);
    auto dets = detectors;
    for (auto& d : dets) d.seed = derive_seed(seed, kDetectStream);
    for (const auto& row : evaluate(inst.truth, inst.stream, c.window, dets)) {
      results[i].push_back({pt.phi, pt.seed_index, parse_method(row.method), row.report.mean_nmi, row.report.sm_p,
                            row.report.sm_n, row.report.sm_l});
    }
  };

  unsigned threads = std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(points.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) run_point(i);
      });
    }
  }

  SweepResult out;
  for (auto& r : results) out.rows.insert(out.rows.end(), r.begin(), r.end());
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "phi,seed,method,mean_nmi,sm_p,sm_n,sm_l\n";
  for (const auto& row : r.rows) {
    os << format_double(row.phi) << ',' << row.seed_index << ',' << to_string(row.method) << ','
       << format_double(row.mean_nmi) << ',' << format_double(row.sm_p) << ',' << format_double(row.sm_n) << ','
       << format_double(row.sm_l) << '\n';
  }
  return os.str();
}

std::string sweep_summary_csv(const SweepResult& r) {
  struct Acc {
    std::vector<double> nmi, p, n, l;
  };
  std::vector<std::pair<double, Method>> order;
  std::map<std::pair<double, Method>, Acc> acc;
  for (const auto& row : r.rows) {
    auto key = std::pair{row.phi, row.method};
    if (!acc.contains(key)) order.push_back(key);
    auto& a = acc[key];
    a.nmi.push_back(row.mean_nmi);
    a.p.push_back(row.sm_p);
    a.n.push_back(row.sm_n);
    a.l.push_back(row.sm_l);
  }
  std::ostringstream os;
  os << "phi,method,runs,mean_nmi,sm_p,sm_n,sm_l\n";
  for (const auto& key : order) {
    const auto& a = acc[key];
    os << format_double(key.first) << ',' << to_string(key.second) << ',' << a.nmi.size() << ','
       << format_double(mean(a.nmi)) << ',' << format_double(mean(a.p)) << ',' << format_double(mean(a.n)) << ','
       << format_double(mean(a.l)) << '\n';
  }
  return os.str();
}

}  // namespace mosaic
