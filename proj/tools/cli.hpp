// Copyright 2026 The hashgnn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. Lives in a header so tests can drive it in-process.
//
// Exit codes: 0 ok, 2 config, 3 parse, 4 validation, 5 resource, 1 internal.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hashgnn/hashgnn.hpp"

namespace hashgnn::cli {

struct RunConfig {
  std::string command;
  std::string edges;
  std::string attrs;
  std::string out;
  std::size_t iterations = 2;
  std::size_t dimensions = 200;
  std::uint64_t seed = 42;
  double train_ratio = 0.8;
  std::size_t trials = 5;
  unsigned threads = 0;
  std::vector<std::size_t> sizes{1000, 10000};
  std::string grid;
  std::string resume;
  bool checkpoint = false;
  double mem_budget_mb = 4096.0;
  SyntheticParams synth;
};

// Accepts "T=a..b" or "T=a,b,c".
inline std::vector<std::size_t> parse_grid(const std::string& spec) {
  if (spec.rfind("T=", 0) != 0) throw ConfigError("grid must look like T=1..5 or T=1,2,3");
  const std::string body = spec.substr(2);
  std::vector<std::size_t> out;
  auto to_size = [&](const std::string& s) -> std::size_t {
    auto v = detail::parse_uint(s);
    if (!v || *v < 1) throw ConfigError("bad grid value '" + s + "'");
    return static_cast<std::size_t>(*v);
  };
  if (const auto dots = body.find(".."); dots != std::string::npos) {
    const std::size_t lo = to_size(body.substr(0, dots));
    const std::size_t hi = to_size(body.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty grid range");
    for (std::size_t t = lo; t <= hi; ++t) out.push_back(t);
    return out;
  }
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(to_size(part));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

inline void validate(const RunConfig& c) {
  if (c.iterations < 1) throw ConfigError("--T must be >= 1");
  if (c.dimensions < 1) throw ConfigError("--K must be >= 1");
  if (!(c.train_ratio > 0.0 && c.train_ratio < 1.0)) throw ConfigError("--ratio must lie in (0, 1)");
  if (c.trials < 1) throw ConfigError("--trials must be >= 1");
  if (c.sizes.empty()) throw ConfigError("--sizes must not be empty");
}

inline nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  if (!c.edges.empty()) j["edges"] = c.edges;
  if (!c.attrs.empty()) j["attrs"] = c.attrs;
  if (!c.out.empty()) j["out"] = c.out;
  j["T"] = c.iterations;
  j["K"] = c.dimensions;
  j["seed"] = c.seed;
  j["train_ratio"] = c.train_ratio;
  j["trials"] = c.trials;
  j["threads"] = c.threads;
  if (!c.grid.empty()) j["grid"] = c.grid;
  if (c.command == "synth" || c.command == "bench-scaling") {
    j["nodes"] = c.synth.node_count;
    j["avg_degree"] = c.synth.avg_degree;
    j["communities"] = c.synth.communities;
    j["attrs_per_node"] = c.synth.attrs_per_node;
    j["universe"] = c.synth.universe_size;
    j["affinity"] = c.synth.attr_affinity;
  }
  if (c.command == "bench-scaling") {
    j["sizes"] = c.sizes;
    j["mem_budget_mb"] = c.mem_budget_mb;
  }
  return j;
}

// The report document: auc_mean, auc_per_trial, embed_seconds_mean,
// score_seconds_mean, config.
inline nlohmann::ordered_json report_json(const EvalReport& r, nlohmann::ordered_json config) {
  nlohmann::ordered_json j;
  j["auc_mean"] = r.auc_mean;
  j["auc_per_trial"] = r.auc_per_trial;
  j["embed_seconds_mean"] = r.embed_seconds_mean;
  j["score_seconds_mean"] = r.score_seconds_mean;
  config["T"] = r.config.iterations;
  j["config"] = std::move(config);
  return j;
}

inline void check_budget(const RunConfig& c, std::size_t nodes, std::ostream& err) {
  const unsigned workers = detail::resolve_threads(c.threads, c.dimensions);
  const double mb = static_cast<double>(memory_footprint(nodes, c.dimensions, workers)) / (1024.0 * 1024.0);
  if (mb > c.mem_budget_mb) {
    err << "warning: planned state of " << mb << " MiB exceeds budget of " << c.mem_budget_mb << " MiB\n";
    throw ResourceError("memory budget exceeded for |V|=" + std::to_string(nodes));
  }
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ResourceError("cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void finish() {
    out_->flush();
    if (!*out_) throw ResourceError("failed writing output");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline int cmd_embed(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) throw ConfigError("embed needs --out");
  const LoadedGraph loaded = load_graph_files(c.edges, c.attrs);
  const AttributedGraph& g = loaded.graph;
  check_budget(c, g.node_count(), err);

  std::size_t blank = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) blank += g.attributes(v).empty() && g.degree(v) == 0;
  if (blank > 0) {
    err << "warning: " << blank << " isolated node(s) without attributes keep the sentinel id " << g.sentinel()
        << " and compare as identical\n";
  }

  EmbeddingMatrix start;
  if (!c.resume.empty()) {
    std::ifstream in(c.resume);
    if (!in) throw ParseError("cannot open checkpoint " + c.resume);
    LoadedEmbedding ckpt = read_embedding(in);
    if (ckpt.header.seed != c.seed || ckpt.header.universe != g.universe_size() ||
        ckpt.header.dimensions != c.dimensions || ckpt.header.nodes != g.node_count()) {
      throw ValidationError("checkpoint header does not match this run");
    }
    start = std::move(ckpt.matrix);
  }

  using Clock = std::chrono::steady_clock;
  const auto table = HashFamilyTable::build(g.universe_size(), c.iterations, c.dimensions, c.seed);
  auto last = Clock::now();
  const auto begin = last;
  EmbedOptions opts;
  opts.threads = c.threads;
  opts.on_iteration = [&](const EmbeddingMatrix& state) {
    const auto now = Clock::now();
    out << "iteration " << state.iteration() << ": " << std::chrono::duration<double>(now - last).count() << " s\n";
    last = now;
    if (c.checkpoint && state.iteration() < c.iterations) {
      const std::string path = c.out + ".t" + std::to_string(state.iteration());
      std::ofstream ck(path, std::ios::binary);
      if (!ck) throw ResourceError("cannot write checkpoint " + path);
      write_embedding(ck, state, c.seed, g.universe_size());
    }
  };
  const EmbeddingMatrix h = resume(g, std::move(start), table, opts);
  const double seconds = std::chrono::duration<double>(Clock::now() - begin).count();

  OutputSink sink(c.out, out);
  write_embedding(sink.stream(), h, c.seed, g.universe_size());
  sink.finish();
  OutputSink map(c.out + ".map", out);
  write_mapping(loaded.tokens, map.stream());
  map.finish();

  out << "embed_seconds: " << seconds << '\n';
  out << "config: " << config_json(c).dump() << '\n';
  return 0;
}

inline int cmd_linkpred(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const LoadedGraph loaded = load_graph_files(c.edges, c.attrs);
  check_budget(c, loaded.graph.node_count(), err);
  std::vector<std::size_t> ts = c.grid.empty() ? std::vector<std::size_t>{c.iterations} : parse_grid(c.grid);

  LinkPredictionConfig lp;
  lp.train_ratio = c.train_ratio;
  lp.dimensions = c.dimensions;
  lp.trials = c.trials;
  lp.seed = c.seed;
  lp.threads = c.threads;

  nlohmann::ordered_json doc;
  for (std::size_t t : ts) {
    lp.iterations = t;
    auto r = report_json(run_link_prediction(loaded.graph, lp), config_json(c));
    if (c.grid.empty()) {
      doc = std::move(r);
    } else {
      doc.push_back(std::move(r));
    }
  }
  OutputSink sink(c.out, out);
  sink.stream() << doc.dump(2) << '\n';
  sink.finish();
  return 0;
}

inline int cmd_synth(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.out.empty()) throw ConfigError("synth needs --out PREFIX");
  Rng rng(c.seed);
  const AttributedGraph g = generate_synthetic(c.synth, rng);
  save_graph_files(g, c.out + ".edges", c.out + ".attrs");
  out << "nodes: " << g.node_count() << " edges: " << g.edge_count() << " avg_degree: " << g.average_degree() << '\n';
  out << "config: " << config_json(c).dump() << '\n';
  return 0;
}

inline int cmd_bench_scaling(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::size_t> ts = c.grid.empty() ? std::vector<std::size_t>{c.iterations} : parse_grid(c.grid);
  for (std::size_t n : c.sizes) check_budget(c, n, err);

  OutputSink sink(c.out, out);
  std::ostream& os = sink.stream();
  os << "# config " << config_json(c).dump() << '\n';
  os << "nodes\tedges\tT\tK\tseconds\n";
  using Clock = std::chrono::steady_clock;
  for (std::size_t n : c.sizes) {
    SyntheticParams p = c.synth;
    p.node_count = n;
    Rng rng(c.seed);
    const AttributedGraph g = generate_synthetic(p, rng);
    for (std::size_t t : ts) {
      const auto t0 = Clock::now();
      const EmbeddingMatrix h = embed(g, t, c.dimensions, c.seed, {c.threads, {}});
      const double s = std::chrono::duration<double>(Clock::now() - t0).count();
      os << n << '\t' << g.edge_count() << '\t' << t << '\t' << c.dimensions << '\t' << std::fixed
         << std::setprecision(6) << s << '\n';
      os.unsetf(std::ios::floatfield);
    }
  }
  sink.finish();
  return 0;
}

// Parses argv and runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hashing-accelerated graph embedding and link prediction"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--T", c.iterations, "Message-passing iterations")->capture_default_str();
    sub->add_option("--K", c.dimensions, "Embedding dimensions")->capture_default_str();
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sub->add_option("--out", c.out, "Output path");
  };
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--edges", c.edges, "Edge list file")->required();
    sub->add_option("--attrs", c.attrs, "Attribute file")->required();
  };
  auto add_synth = [&](CLI::App* sub) {
    sub->add_option("--nodes", c.synth.node_count, "Node count")->capture_default_str();
    sub->add_option("--avg-degree", c.synth.avg_degree, "Expected average degree")->capture_default_str();
    sub->add_option("--communities", c.synth.communities, "Planted communities")->capture_default_str();
    sub->add_option("--attrs-per-node", c.synth.attrs_per_node, "Attributes per node")->capture_default_str();
    sub->add_option("--universe", c.synth.universe_size, "Attribute universe size")->capture_default_str();
    sub->add_option("--affinity", c.synth.attr_affinity, "Share of attributes from the own block")
        ->capture_default_str();
  };

  auto* embed_cmd = app.add_subcommand("embed", "Embed every node of a graph");
  add_common(embed_cmd);
  add_inputs(embed_cmd);
  embed_cmd->add_flag("--checkpoint", c.checkpoint, "Also write intermediate states to <out>.t<N>");
  embed_cmd->add_option("--resume", c.resume, "Continue from a checkpoint file");
  embed_cmd->add_option("--mem-budget-mb", c.mem_budget_mb, "Refuse runs whose planned state exceeds this");

  auto* lp_cmd = app.add_subcommand("linkpred", "Repeated link-prediction trials");
  add_common(lp_cmd);
  add_inputs(lp_cmd);
  lp_cmd->add_option("--ratio", c.train_ratio, "Share of edges kept for training")->capture_default_str();
  lp_cmd->add_option("--trials", c.trials, "Number of trials")->capture_default_str();
  lp_cmd->add_option("--grid", c.grid, "Sweep T, e.g. T=1..5");
  lp_cmd->add_option("--mem-budget-mb", c.mem_budget_mb, "Refuse runs whose planned state exceeds this");

  auto* synth_cmd = app.add_subcommand("synth", "Write a planted-partition graph to <out>.edges / <out>.attrs");
  add_common(synth_cmd);
  add_synth(synth_cmd);

  auto* bench_cmd = app.add_subcommand("bench-scaling", "Embedding time over graph sizes and T");
  add_common(bench_cmd);
  add_synth(bench_cmd);
  bench_cmd->add_option("--sizes", c.sizes, "Comma-separated node counts")->delimiter(',');
  bench_cmd->add_option("--grid", c.grid, "T values, e.g. T=1..3");
  bench_cmd->add_option("--mem-budget-mb", c.mem_budget_mb, "Refuse sizes whose planned state exceeds this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kConfig);
  }

  try {
    if (embed_cmd->parsed()) c.command = "embed";
    else if (lp_cmd->parsed()) c.command = "linkpred";
    else if (synth_cmd->parsed()) c.command = "synth";
    else c.command = "bench-scaling";
    validate(c);
    if (c.command == "embed") return cmd_embed(c, out, err);
    if (c.command == "linkpred") return cmd_linkpred(c, out, err);
    if (c.command == "synth") return cmd_synth(c, out, err);
    return cmd_bench_scaling(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hashgnn::cli
