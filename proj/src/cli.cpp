// Copyright 2026 The ontopred Authors.
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

#include "ontopred/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "ontopred/annotations.hpp"
#include "ontopred/checkpoint.hpp"
#include "ontopred/embeddings.hpp"
#include "ontopred/metrics.hpp"
#include "ontopred/ontology.hpp"
#include "ontopred/parallel.hpp"
#include "ontopred/pipeline.hpp"
#include "ontopred/text.hpp"
#include "ontopred/training.hpp"

namespace ontopred {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  unsigned threads = 0;
  std::string ontology;
  std::string annotations;
  std::string embeddings;
  std::string checkpoint;
  std::string predictions;
  std::string truth;
  std::string ns;
  std::string out;
  std::string curve_out;
  int epochs = 10;
  int batch_size = 32;
  double lr = 1e-3;
  int layers = 2;
  std::uint64_t seed = 0;
  int depth_cap = kDefaultDepthCap;
  int dim = 0;
  double floor = 0.01;
  bool all_evidence = false;
  bool projection_relu = false;
  bool propagate_scores = false;
};

class Run {
 public:
  Run(std::string subcommand, const CLI::App& sub, std::ostream& err)
      : err_(err), start_(std::chrono::steady_clock::now()) {
    manifest_.set("tool_version", kToolVersion);
    manifest_.set("subcommand", std::move(subcommand));
    for (const CLI::Option* opt : sub.get_options()) {
      const auto& names = opt->get_lnames();
      if (names.empty() || names.front() == "help") continue;
      std::string value;
      if (opt->get_expected_max() == 0) {
        value = opt->count() && opt->as<bool>() ? "true" : "false";
      } else if (opt->count()) {
        for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      } else {
        value = opt->get_default_str();
      }
      manifest_.set("config." + names.front(), value);
    }
  }

  std::string read_input(const std::string& key, const std::string& path) {
    std::string bytes = text::read_file(path);
    manifest_.set("input_digest." + key, text::hex64(text::fnv1a64(bytes)));
    return bytes;
  }

  RunManifest& manifest() { return manifest_; }

  void warn(const std::string& message) { err_ << "warning: " << message << '\n'; }

  void write_manifest(const std::string& path) {
    const auto secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    manifest_.set("duration_seconds", text::format_fixed(secs, 3));
    text::write_file(path, manifest_.render());
  }

 private:
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
  RunManifest manifest_;
};

std::string kv(std::string_view key, std::string_view value) {
  return std::string(key) + '\t' + std::string(value) + '\n';
}

std::vector<AnnotationRecord> load_records(Run& run, const std::string& key,
                                           const std::string& path,
                                           const OntologyGraph& g,
                                           bool all_evidence) {
  auto parsed = parse_annotations(run.read_input(key, path), &g);
  if (parsed.unknown_terms)
    run.warn(std::to_string(parsed.unknown_terms) + " " + key +
             " records name terms missing from the ontology; dropped");
  run.manifest().set(key + ".unknown_terms", std::to_string(parsed.unknown_terms));
  const std::size_t before = parsed.records.size();
  auto records = all_evidence ? std::move(parsed.records)
                              : filter_experimental(std::move(parsed.records));
  run.manifest().set(key + ".records_kept", std::to_string(records.size()));
  run.manifest().set(key + ".records_non_experimental",
                     std::to_string(before - records.size()));
  return records;
}

void describe_graph(RunManifest& m, const PreparedGraph& pg) {
  m.set("namespace", std::string(to_string(pg.ns)));
  m.set("namespace_terms", std::to_string(pg.namespace_terms));
  m.set("isolated_removed", std::to_string(pg.isolated_removed));
  m.set("n_terms", std::to_string(pg.graph.size()));
  m.set("retained_fraction",
        text::format_fixed(static_cast<double>(pg.graph.size()) /
                               static_cast<double>(pg.namespace_terms),
                           6));
  m.set("edges", std::to_string(pg.graph.edge_count()));
  m.set("max_depth", std::to_string(pg.max_depth));
  m.set("d0", std::to_string(pg.d0));
  m.set("training_proteins", std::to_string(pg.annotations.size()));
  m.set("counts_taken", "after_isolated_term_removal");
  m.set("ic_log_base", "e");
  m.set("ic_root_freq", text::format_significant(pg.ic.root_freq, 17));
  m.set("ic_zero_freq_floor", text::format_significant(pg.ic.zero_freq_floor, 17));
  m.set("ic_floored_terms", std::to_string(pg.ic.floored_terms));
  m.set("prior_zero_parent_floor", "0");
  m.set("ic_share_zero_denominator", "uniform");
  m.set("normalization", "row_stochastic(max(A,A^T)+I)");
}

int cmd_ontology_stats(const Options& o, Run& run, std::ostream& out) {
  const auto g = parse_obo(run.read_input("ontology", o.ontology));
  std::string report;
  report += kv("terms", std::to_string(g.size()));
  report += kv("edges", std::to_string(g.edge_count()));
  report += kv("obsolete_dropped", std::to_string(g.obsolete_dropped()));
  int overall = 0;
  std::string per_ns;
  for (Namespace ns : kAllNamespaces) {
    if (!g.has_namespace(ns)) continue;
    const auto sub = restrict_namespace(g, ns, nullptr);
    const int depth = max_depth(g, ns);
    overall = std::max(overall, depth);
    const std::string tag(to_string(ns));
    per_ns += kv("terms." + tag, std::to_string(sub.size()));
    per_ns += kv("edges." + tag, std::to_string(sub.edge_count()));
    per_ns += kv("max_depth." + tag, std::to_string(depth));
    std::string roots;
    for (Index r : g.roots(ns)) roots += (roots.empty() ? "" : ",") + g.id(r).str();
    per_ns += kv("roots." + tag, roots);
  }
  report += kv("max_depth", std::to_string(overall));
  report += per_ns;
  out << report;
  if (!o.out.empty()) {
    text::write_file(o.out, report);
    run.write_manifest(o.out + ".manifest");
  }
  return 0;
}

int cmd_propagate(const Options& o, Run& run) {
  const auto g = parse_obo(run.read_input("ontology", o.ontology));
  const auto records = load_records(run, "annotations", o.annotations, g, o.all_evidence);
  // First evidence code seen for each direct (protein, term) pair.
  std::map<std::pair<std::string, Index>, std::string> direct;
  for (const auto& r : records)
    direct.emplace(std::make_pair(r.protein, *g.find(r.term)), r.evidence);
  const auto set = propagate_true_path(make_annotation_set(records, g), g);
  std::string tsv;
  std::size_t inferred = 0;
  for (std::size_t p = 0; p < set.size(); ++p)
    for (Index t : set.labels[p]) {
      const auto it = direct.find({set.proteins[p], t});
      std::string evidence;
      if (it != direct.end()) {
        evidence = it->second;
      } else {
        evidence = kPropagatedEvidence;
        ++inferred;
      }
      tsv += set.proteins[p] + '\t' + g.id(t).str() + '\t' + evidence + '\n';
    }
  text::write_file(o.out, tsv);
  run.manifest().set("proteins", std::to_string(set.size()));
  run.manifest().set("inferred_rows", std::to_string(inferred));
  run.write_manifest(o.out + ".manifest");
  return 0;
}

PreparedGraph prepare_from_options(const Options& o, Run& run) {
  const auto g = parse_obo(run.read_input("ontology", o.ontology));
  const auto records = load_records(run, "annotations", o.annotations, g, o.all_evidence);
  auto pg = prepare_graph(g, records, parse_namespace(o.ns), o.depth_cap);
  describe_graph(run.manifest(), pg);
  return pg;
}

int cmd_build_graph(const Options& o, Run& run) {
  const auto pg = prepare_from_options(o, run);
  fs::create_directories(o.out);
  std::string adjacency;
  for (Index t = 0; t < pg.adjacency.raw.outerSize(); ++t)
    for (SparseMatrixXd::InnerIterator it(pg.adjacency.raw, t); it; ++it)
      adjacency += pg.graph.id(t).str() + '\t' + pg.graph.id(it.col()).str() +
                   '\t' + text::format_significant(it.value(), 9) + '\n';
  std::string ic;
  for (Index k = 0; k < pg.graph.size(); ++k)
    ic += pg.graph.id(k).str() + '\t' + text::format_significant(pg.ic.freq(k), 9) +
          '\t' + text::format_significant(pg.ic.p(k), 9) + '\t' +
          text::format_significant(pg.ic.ic(k), 9) + '\n';
  text::write_file((fs::path(o.out) / "adjacency.tsv").string(), adjacency);
  text::write_file((fs::path(o.out) / "ic.tsv").string(), ic);
  run.write_manifest((fs::path(o.out) / "manifest.tsv").string());
  return 0;
}

ModelConfig config_from(const Options& o, const PreparedGraph& pg, Index seq_dim) {
  ModelConfig cfg;
  cfg.n_terms = pg.graph.size();
  cfg.d0 = o.dim > 0 ? o.dim : pg.d0;
  cfg.d = cfg.d0;
  cfg.n_layers = o.layers;
  cfg.seq_dim = seq_dim;
  cfg.lr = o.lr;
  cfg.epochs = o.epochs;
  cfg.batch_size = o.batch_size;
  cfg.seed = o.seed;
  cfg.projection_relu = o.projection_relu;
  return cfg;
}

int cmd_train(const Options& o, Run& run) {
  const auto pg = prepare_from_options(o, run);
  const auto emb = parse_embeddings(run.read_input("embeddings", o.embeddings));

  TrainingData data;
  std::vector<Index> rows;
  std::size_t missing = 0;
  for (std::size_t p = 0; p < pg.annotations.size(); ++p) {
    const auto row = emb.find(pg.annotations.proteins[p]);
    if (!row) {
      ++missing;
      continue;
    }
    rows.push_back(*row);
    data.labels.push_back(pg.annotations.labels[p]);
  }
  if (missing)
    run.warn(std::to_string(missing) +
             " annotated proteins have no embedding; dropped");
  data.embeddings.resize(static_cast<Index>(rows.size()), emb.dim());
  for (std::size_t k = 0; k < rows.size(); ++k)
    data.embeddings.row(static_cast<Index>(k)) = emb.values.row(rows[k]);

  const ModelConfig cfg = config_from(o, pg, emb.dim());
  run.manifest().set("proteins_without_embedding", std::to_string(missing));
  run.manifest().set("proteins_used", std::to_string(rows.size()));
  run.manifest().set("d", std::to_string(cfg.d));
  run.manifest().set("seq_dim", std::to_string(cfg.seq_dim));
  run.manifest().set("seed", std::to_string(cfg.seed));

  fs::create_directories(o.out);
  const fs::path dir(o.out);
  const auto result = train(cfg, data, pg.inputs,
                            [&](const EpochLog& e, const ModelParams<double>& p) {
                              char name[32];
                              std::snprintf(name, sizeof name, "epoch_%03d.ckpt", e.epoch);
                              text::write_file((dir / name).string(),
                                               write_checkpoint(cfg, p));
                            });
  text::write_file((dir / "model.ckpt").string(), write_checkpoint(cfg, result.params));
  std::string log = "epoch\tmean_batch_loss\tfull_loss\n0\t\t" +
                    text::format_significant(result.initial_loss, 17) + '\n';
  for (const auto& e : result.log)
    log += std::to_string(e.epoch) + '\t' +
           text::format_significant(e.mean_batch_loss, 17) + '\t' +
           text::format_significant(e.full_loss, 17) + '\n';
  text::write_file((dir / "loss.tsv").string(), log);
  run.write_manifest((dir / "manifest.tsv").string());
  return 0;
}

int cmd_predict(const Options& o, Run& run) {
  const auto pg = prepare_from_options(o, run);
  const auto ck = read_checkpoint(run.read_input("checkpoint", o.checkpoint));
  if (ck.config.n_terms != pg.graph.size())
    throw ValidationError("checkpoint has " + std::to_string(ck.config.n_terms) +
                          " terms but the prepared graph has " +
                          std::to_string(pg.graph.size()));
  const auto emb = parse_embeddings(run.read_input("embeddings", o.embeddings));
  ModelConfig cfg = ck.config;
  cfg.projection_relu = o.projection_relu;
  PredictionMatrix pred{emb.ids, predict_batch(cfg, ck.params, pg.inputs, emb.values)};
  if (o.propagate_scores) pred = propagate_scores(std::move(pred), pg.graph);
  text::write_file(o.out, format_predictions(pred, pg.graph, o.floor));
  run.manifest().set("proteins", std::to_string(pred.proteins.size()));
  run.write_manifest(o.out + ".manifest");
  return 0;
}

int cmd_evaluate(const Options& o, Run& run, std::ostream& out) {
  const auto full = parse_obo(run.read_input("ontology", o.ontology));
  const Namespace ns = parse_namespace(o.ns);
  const auto g = restrict_namespace(full, ns, nullptr);
  const auto records = load_records(run, "truth", o.truth, g, o.all_evidence);
  const auto truth = propagate_true_path(make_annotation_set(records, g), g);
  if (truth.size() == 0)
    throw ValidationError("truth file has no " + std::string(to_string(ns)) +
                          " annotations");
  auto pred = parse_predictions(run.read_input("predictions", o.predictions), g,
                                truth.proteins);
  if (o.propagate_scores) pred = propagate_scores(std::move(pred), g);
  const auto report = evaluate(pred, truth.labels);

  std::string text_report;
  text_report += kv("fmax", text::format_fixed(report.fmax, 6));
  text_report += kv("best_threshold", text::format_fixed(report.best_threshold, 2));
  text_report += kv("aupr_micro", text::format_fixed(report.aupr_micro, 6));
  text_report += kv("aupr_macro", text::format_fixed(report.aupr_macro, 6));
  text_report += kv("proteins", std::to_string(truth.size()));
  text_report += kv("terms", std::to_string(g.size()));
  out << text_report;
  run.manifest().set("namespace", std::string(to_string(ns)));
  run.manifest().set("n_terms", std::to_string(g.size()));

  if (!o.curve_out.empty()) {
    std::string curve = "threshold\tprecision\trecall\tf\tcovered\n";
    for (const auto& pt : report.curve)
      curve += text::format_fixed(pt.threshold, 2) + '\t' +
               text::format_fixed(pt.precision, 6) + '\t' +
               text::format_fixed(pt.recall, 6) + '\t' +
               text::format_fixed(f_measure(pt.precision, pt.recall), 6) + '\t' +
               std::to_string(pt.covered) + '\n';
    text::write_file(o.curve_out, curve);
  }
  if (!o.out.empty()) {
    text::write_file(o.out, text_report);
    run.write_manifest(o.out + ".manifest");
  }
  return 0;
}

// Flat `key = value` lines; '#' starts a comment.
std::vector<std::string> config_args(const std::string& path) {
  std::vector<std::string> out;
  const auto contents = text::read_file(path);
  const auto all = text::lines(contents);
  for (std::size_t k = 0; k < all.size(); ++k) {
    auto line = all[k];
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw CLI::ConversionError("config line " + std::to_string(k + 1) +
                                 ": expected key = value");
    out.push_back("--" + std::string(text::trim(line.substr(0, eq))) + "=" +
                  std::string(text::trim(line.substr(eq + 1))));
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Protein function prediction over the GO is_a graph", "ontopred"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
      ->always_capture_default();
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "flat key = value file; flags override it");
    sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
  };
  auto add_namespace = [&](CLI::App* sub) {
    sub->add_option("--namespace", o.ns, "MFO, BPO or CCO")->required();
  };

  auto* stats = app.add_subcommand("ontology-stats", "Term, edge, depth and root summary");
  common(stats);
  stats->add_option("--ontology", o.ontology, "OBO file")->required();
  stats->add_option("--out", o.out, "also write the report (and a manifest) here");

  auto* prop = app.add_subcommand("propagate", "Apply the true path rule to an annotation TSV");
  common(prop);
  prop->add_option("--ontology", o.ontology, "OBO file")->required();
  prop->add_option("--annotations", o.annotations, "protein/term/evidence TSV")->required();
  prop->add_option("--out", o.out, "propagated TSV")->required();
  prop->add_flag("--all-evidence", o.all_evidence, "keep non-experimental evidence codes");

  auto* build = app.add_subcommand("build-graph", "Write adjacency weights and the IC table");
  common(build);
  build->add_option("--ontology", o.ontology, "OBO file")->required();
  build->add_option("--annotations", o.annotations, "training annotation TSV")->required();
  add_namespace(build);
  build->add_option("--out", o.out, "output directory")->required();
  build->add_option("--depth-cap", o.depth_cap, "upper bound on the embedding width");
  build->add_flag("--all-evidence", o.all_evidence, "keep non-experimental evidence codes");

  auto* tr = app.add_subcommand("train", "Train a model for one namespace");
  common(tr);
  tr->add_option("--ontology", o.ontology, "OBO file")->required();
  tr->add_option("--annotations", o.annotations, "training annotation TSV")->required();
  tr->add_option("--embeddings", o.embeddings, "TSV or PEMB embedding file")->required();
  add_namespace(tr);
  tr->add_option("--epochs", o.epochs, "training epochs");
  tr->add_option("--batch-size", o.batch_size, "proteins per batch");
  tr->add_option("--lr", o.lr, "Adam learning rate");
  tr->add_option("--layers", o.layers, "GCN layers (1-4)")->check(CLI::Range(1, 4));
  tr->add_option("--seed", o.seed, "random seed");
  tr->add_option("--out", o.out, "output directory")->required();
  tr->add_option("--depth-cap", o.depth_cap, "upper bound on the embedding width");
  tr->add_option("--dim", o.dim, "override the hidden width (0: namespace depth)");
  tr->add_flag("--projection-relu", o.projection_relu, "ReLU after the sequence projection");
  tr->add_flag("--all-evidence", o.all_evidence, "keep non-experimental evidence codes");

  auto* pr = app.add_subcommand("predict", "Score proteins with a trained checkpoint");
  common(pr);
  pr->add_option("--ontology", o.ontology, "OBO file")->required();
  pr->add_option("--annotations", o.annotations, "the training annotation TSV")->required();
  pr->add_option("--embeddings", o.embeddings, "TSV or PEMB embedding file")->required();
  pr->add_option("--checkpoint", o.checkpoint, "checkpoint written by train")->required();
  add_namespace(pr);
  pr->add_option("--out", o.out, "prediction TSV")->required();
  pr->add_option("--floor", o.floor, "omit scores below this value");
  pr->add_option("--depth-cap", o.depth_cap, "must match training");
  pr->add_flag("--projection-relu", o.projection_relu, "must match training");
  pr->add_flag("--propagate-scores", o.propagate_scores, "make parent scores >= child scores");
  pr->add_flag("--all-evidence", o.all_evidence, "must match training");

  auto* ev = app.add_subcommand("evaluate", "Fmax and AUPR against a truth TSV");
  common(ev);
  ev->add_option("--predictions", o.predictions, "prediction TSV")->required();
  ev->add_option("--truth", o.truth, "benchmark annotation TSV")->required();
  ev->add_option("--ontology", o.ontology, "OBO file")->required();
  add_namespace(ev);
  ev->add_option("--curve-out", o.curve_out, "per-threshold precision/recall TSV");
  ev->add_option("--out", o.out, "also write the report (and a manifest) here");
  ev->add_flag("--propagate-scores", o.propagate_scores, "make parent scores >= child scores");
  ev->add_flag("--all-evidence", o.all_evidence, "keep non-experimental evidence codes");

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  try {
    // Config values go right after the subcommand so later flags win.
    for (std::size_t k = 1; k < argv.size(); ++k) {
      std::string path;
      if (argv[k] == "--config" && k + 1 < argv.size()) path = argv[k + 1];
      else if (argv[k].rfind("--config=", 0) == 0) path = argv[k].substr(9);
      if (path.empty()) continue;
      const auto extra = config_args(path);
      argv.insert(argv.begin() + 1, extra.begin(), extra.end());
      break;
    }
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  set_thread_count(o.threads);
  try {
    for (CLI::App* sub : app.get_subcommands()) {
      Run run(sub->get_name(), *sub, err);
      const auto& name = sub->get_name();
      if (name == "ontology-stats") return cmd_ontology_stats(o, run, out);
      if (name == "propagate") return cmd_propagate(o, run);
      if (name == "build-graph") return cmd_build_graph(o, run);
      if (name == "train") return cmd_train(o, run);
      if (name == "predict") return cmd_predict(o, run);
      if (name == "evaluate") return cmd_evaluate(o, run, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace ontopred
