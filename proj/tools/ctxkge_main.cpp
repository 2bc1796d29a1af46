/*
 * Copyright 2026 The ctxkge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctxkge/checkpoint.hpp"
#include "ctxkge/gradcheck.hpp"
#include "ctxkge/report.hpp"
#include "ctxkge/run_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ctxkge::Dataset load_dataset_dir(const std::string& dir) {
  for (const char* name : {"train.txt", "valid.txt", "test.txt"}) {
    if (!fs::exists(fs::path(dir) / name)) {
      throw std::runtime_error("missing split file: " + (fs::path(dir) / name).string());
    }
  }
  return ctxkge::build_dataset(ctxkge::load_split((fs::path(dir) / "train.txt").string()),
                               ctxkge::load_split((fs::path(dir) / "valid.txt").string()),
                               ctxkge::load_split((fs::path(dir) / "test.txt").string()));
}

json stats_json(const ctxkge::DatasetStats& s) {
  return json{{"num_entities", s.num_entities},
              {"num_relations", s.num_relations},
              {"num_train", s.num_train},
              {"num_valid", s.num_valid},
              {"num_test", s.num_test},
              {"avg_entity_context", s.avg_entity_context},
              {"avg_relation_context", s.avg_relation_context}};
}

json metrics_json(const ctxkge::MetricsReport& m) {
  return json{{"mrr", m.mrr}, {"mr", m.mr}, {"hit3", m.hit3}, {"num_queries", m.num_queries}};
}

void add_run_options(CLI::App& cmd, ctxkge::RunConfig& cfg, std::string& config_path) {
  cmd.add_option("--dataset-dir", cfg.dataset_dir,
                 "directory with train.txt / valid.txt / test.txt");
  cmd.add_option("--model", cfg.model, "scoring model")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ctxkge::ModelKind>{{"transe", ctxkge::ModelKind::TransE},
                                                   {"distmult", ctxkge::ModelKind::DistMult}}));
  cmd.add_option("--context", cfg.context, "which contexts to aggregate")
      ->transform(CLI::CheckedTransformer(std::map<std::string, ctxkge::ContextVariant>{
          {"both", ctxkge::ContextVariant::Both},
          {"ent", ctxkge::ContextVariant::EntityOnly},
          {"rel", ctxkge::ContextVariant::RelationOnly},
          {"none", ctxkge::ContextVariant::None}}));
  cmd.add_option("--dim", cfg.dim, "embedding dimension")->check(CLI::PositiveNumber);
  cmd.add_option("--lr", cfg.lr, "learning rate")->check(CLI::PositiveNumber);
  cmd.add_option("--l2", cfg.l2, "L2 penalty coefficient")->check(CLI::NonNegativeNumber);
  cmd.add_option("--batch-size", cfg.batch_size)->check(CLI::PositiveNumber);
  cmd.add_option("--iterations", cfg.iterations, "aggregation iterations L")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--epochs", cfg.epochs)->check(CLI::NonNegativeNumber);
  cmd.add_option("--patience", cfg.patience)->check(CLI::PositiveNumber);
  cmd.add_option("--seed", cfg.seed, "root seed for all sub-streams");
  cmd.add_option("--threads", cfg.threads, "worker threads (1 = bit-reproducible)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--cap", cfg.cap, "context cap (-1 = none)");
  cmd.add_option("--cap-seed", cfg.cap_seed);
  cmd.add_flag("--mask-target-edge", cfg.mask_target_edge,
               "mask the scored triple from its own contexts");
  cmd.add_option("--out", cfg.out, "output directory");
  cmd.add_option("--config", config_path, "flat key=value config file (flags override)");
}

// Resolves the final configuration: file values override the defaults,
// command-line flags override the file. Flags are detected by their parse
// count, so only options the user actually passed win over the file.
ctxkge::RunConfig merge_config(const CLI::App& cmd, const ctxkge::RunConfig& cli,
                               const std::string& config_path) {
  if (config_path.empty()) return cli;
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);
  std::ostringstream text;
  text << in.rdbuf();
  ctxkge::RunConfig cfg = ctxkge::RunConfig::from_kv(text.str());
  const auto given = [&](const std::string& name) { return cmd.count(name) > 0; };
  if (given("--dataset-dir")) cfg.dataset_dir = cli.dataset_dir;
  if (given("--model")) cfg.model = cli.model;
  if (given("--context")) cfg.context = cli.context;
  if (given("--dim")) cfg.dim = cli.dim;
  if (given("--lr")) cfg.lr = cli.lr;
  if (given("--l2")) cfg.l2 = cli.l2;
  if (given("--batch-size")) cfg.batch_size = cli.batch_size;
  if (given("--iterations")) cfg.iterations = cli.iterations;
  if (given("--epochs")) cfg.epochs = cli.epochs;
  if (given("--patience")) cfg.patience = cli.patience;
  if (given("--seed")) cfg.seed = cli.seed;
  if (given("--threads")) cfg.threads = cli.threads;
  if (given("--cap")) cfg.cap = cli.cap;
  if (given("--cap-seed")) cfg.cap_seed = cli.cap_seed;
  if (given("--mask-target-edge")) cfg.mask_target_edge = cli.mask_target_edge;
  if (given("--out")) cfg.out = cli.out;
  return cfg;
}

int cmd_stats(const std::string& dir) {
  const auto ds = load_dataset_dir(dir);
  const auto s = ctxkge::compute_stats(ds);
  std::cout << "num_entities: " << s.num_entities << '\n'
            << "num_relations: " << s.num_relations << '\n'
            << "num_train: " << s.num_train << '\n'
            << "num_valid: " << s.num_valid << '\n'
            << "num_test: " << s.num_test << '\n'
            << "avg_entity_context: " << s.avg_entity_context << '\n'
            << "avg_relation_context: " << s.avg_relation_context << '\n';
  std::cout << stats_json(s).dump() << '\n';
  return 0;
}

int cmd_train(const ctxkge::RunConfig& cfg) {
  const auto ds = load_dataset_dir(cfg.dataset_dir);
  fs::create_directories(cfg.out);
  {
    std::ofstream config_out(fs::path(cfg.out) / "config.txt");
    config_out << cfg.to_kv();
  }
  std::ofstream log_out(fs::path(cfg.out) / "train_log.jsonl");
  const std::string ckpt_path = (fs::path(cfg.out) / "model.ckpt").string();

  const auto t = cfg.to_train_config();
  auto result = ctxkge::fit(ds, t, [&](const ctxkge::EpochRecord& er,
                                       const ctxkge::EmbeddingTables& best, bool improved) {
    json rec{{"epoch", er.epoch},
             {"train_loss", er.train_loss},
             {"valid", metrics_json(er.valid)},
             {"wall_time_s", er.wall_time_s}};
    log_out << rec.dump() << '\n';
    log_out.flush();
    std::cerr << "epoch " << er.epoch << " loss " << er.train_loss << " valid MRR "
              << er.valid.mrr << (improved ? " *" : "") << '\n';
    if (improved) {
      ctxkge::Checkpoint ck{t.kind, t.num_iterations, t.variant, best, ds.entity_names,
                            ds.relation_names};
      ctxkge::save_checkpoint(ckpt_path, ck);
    }
  });
  if (result.log.empty()) {
    // epochs == 0: persist the initialized tables so eval still works.
    ctxkge::Checkpoint ck{t.kind, t.num_iterations, t.variant, result.tables, ds.entity_names,
                          ds.relation_names};
    ctxkge::save_checkpoint(ckpt_path, ck);
  }
  std::cout << json{{"best_epoch", result.best_epoch},
                    {"best_valid_mrr", result.best_valid_mrr},
                    {"checkpoint", ckpt_path}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_eval(const std::string& ckpt_path, const std::string& dir, const std::string& split,
             int threads, const std::string& dump_ranks) {
  const auto ck = ctxkge::load_checkpoint(ckpt_path);
  const auto ds = load_dataset_dir(dir);
  if (ck.tables.num_entities != ds.num_entities() ||
      ck.tables.num_relations != ds.num_relations_augmented()) {
    throw std::runtime_error("checkpoint/dataset vocabulary mismatch: checkpoint has " +
                             std::to_string(ck.tables.num_entities) + " entities / " +
                             std::to_string(ck.tables.num_relations) + " relations, dataset has " +
                             std::to_string(ds.num_entities()) + " / " +
                             std::to_string(ds.num_relations_augmented()));
  }
  if (ck.entity_names != ds.entity_names || ck.relation_names != ds.relation_names) {
    throw std::runtime_error("checkpoint/dataset vocabulary mismatch: surface strings differ");
  }
  const std::vector<ctxkge::Triple>* queries = nullptr;
  if (split == "train") queries = &ds.train;
  else if (split == "valid") queries = &ds.valid;
  else if (split == "test") queries = &ds.test;
  else throw std::runtime_error("unknown split: " + split);

  const auto index = ctxkge::build_context_index(ds);
  const ctxkge::AggregationConfig agg{ck.num_iterations, ck.variant};
  const auto state = ctxkge::aggregate(ck.tables, index, ck.kind, agg, threads);
  const auto rep =
      ctxkge::evaluate(*queries, state.final_tables(), ck.kind, ds.num_relations(), threads);
  std::cout << "split: " << split << '\n'
            << "MRR:   " << rep.mrr << '\n'
            << "MR:    " << rep.mr << '\n'
            << "Hit@3: " << rep.hit3 << '\n';
  std::cout << metrics_json(rep).dump() << '\n';
  if (!dump_ranks.empty()) {
    const auto ranks =
        ctxkge::rank_all(*queries, state.final_tables(), ck.kind, ds.num_relations(), threads);
    std::ofstream out(dump_ranks);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      out << json{{"head", ds.entity_names[(*queries)[i].head]},
                  {"relation", ds.relation_names[(*queries)[i].relation]},
                  {"tail", ds.entity_names[(*queries)[i].tail]},
                  {"rank", ranks[i]}}
                 .dump()
          << '\n';
    }
  }
  return 0;
}

int cmd_gradcheck(ctxkge::ModelKind kind, int iterations, std::uint64_t seed, bool mask) {
  ctxkge::GradCheckOptions opt;
  opt.kind = kind;
  opt.num_iterations = iterations;
  opt.seed = seed;
  opt.mask_target_edge = mask;
  const double err = ctxkge::gradcheck(opt);
  std::cout << json{{"model", ctxkge::to_string(kind)},
                    {"iterations", iterations},
                    {"seed", seed},
                    {"mask_target_edge", mask},
                    {"max_relative_error", err}}
                   .dump()
            << '\n';
  return err < 1e-4 ? 0 : 1;
}

int cmd_report(const ctxkge::RunConfig& cfg) {
  const auto ds = load_dataset_dir(cfg.dataset_dir);
  std::optional<int> cap;
  if (cfg.cap > 0) cap = cfg.cap;
  const auto index = ctxkge::build_context_index(ds, cap, cfg.cap_seed);
  const auto rep = ctxkge::make_report(ds, index, cfg.model, cfg.dim, cfg.iterations);
  std::cout << "model: " << ctxkge::to_string(rep.kind) << '\n'
            << "dim: " << rep.dim << '\n'
            << "iterations: " << rep.num_iterations << '\n'
            << "trainable_parameters: " << rep.trainable_parameters << '\n'
            << "aggregation_work: " << rep.aggregation_work << '\n';
  std::cout << json{{"model", ctxkge::to_string(rep.kind)},
                    {"dim", rep.dim},
                    {"iterations", rep.num_iterations},
                    {"trainable_parameters", rep.trainable_parameters},
                    {"aggregation_work", rep.aggregation_work}}
                   .dump()
            << '\n';
  return 0;
}

int cmd_dump(const std::string& dir, const std::string& what, ctxkge::ModelKind kind, int dim,
             int iterations, std::uint64_t seed) {
  const auto ds = load_dataset_dir(dir);
  const auto index = ctxkge::build_context_index(ds);
  if (what == "contexts") {
    for (int h = 0; h < ds.num_entities(); ++h) {
      json pairs = json::array();
      for (const auto& [r, t] : index.entity_context[h]) {
        pairs.push_back({ds.relation_display_name(r), ds.entity_names[t]});
      }
      std::cout << json{{"entity", ds.entity_names[h]}, {"context", pairs}}.dump() << '\n';
    }
    for (int r = 0; r < ds.num_relations_augmented(); ++r) {
      json pairs = json::array();
      for (const auto& [h, t] : index.relation_context[r]) {
        pairs.push_back({ds.entity_names[h], ds.entity_names[t]});
      }
      std::cout << json{{"relation", ds.relation_display_name(r)}, {"context", pairs}}.dump()
                << '\n';
    }
    return 0;
  }
  // Attention dump from a fresh random initialization.
  const auto tables =
      ctxkge::init_embeddings(ds.num_entities(), ds.num_relations_augmented(), dim, seed);
  const ctxkge::AggregationConfig agg{iterations, ctxkge::ContextVariant::Both};
  const auto state = ctxkge::aggregate(tables, index, kind, agg);
  for (int l = 0; l < state.num_steps(); ++l) {
    for (int h = 0; h < ds.num_entities(); ++h) {
      if (state.entity_attention[l][h].empty()) continue;
      std::cout << json{{"layer", l},
                        {"entity", ds.entity_names[h]},
                        {"alpha", state.entity_attention[l][h]}}
                       .dump()
                << '\n';
    }
    for (int r = 0; r < ds.num_relations_augmented(); ++r) {
      if (state.relation_attention[l][r].empty()) continue;
      std::cout << json{{"layer", l},
                        {"relation", ds.relation_display_name(r)},
                        {"beta", state.relation_attention[l][r]}}
                       .dump()
                << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"context-aware knowledge graph embedding toolkit"};
  app.require_subcommand(1);

  std::string stats_dir;
  auto* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("--dataset-dir", stats_dir)->required();

  ctxkge::RunConfig train_cfg;
  std::string train_config_path;
  auto* train = app.add_subcommand("train", "train a model");
  add_run_options(*train, train_cfg, train_config_path);

  std::string eval_ckpt, eval_dir, eval_split = "test", eval_dump;
  int eval_threads = 1;
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  eval->add_option("--checkpoint", eval_ckpt)->required();
  eval->add_option("--dataset-dir", eval_dir)->required();
  eval->add_option("--split", eval_split)->check(CLI::IsMember({"train", "valid", "test"}));
  eval->add_option("--threads", eval_threads)->check(CLI::PositiveNumber);
  eval->add_option("--dump-ranks", eval_dump, "write per-query ranks to this JSONL file");

  ctxkge::ModelKind gc_kind = ctxkge::ModelKind::DistMult;
  int gc_iters = 2;
  std::uint64_t gc_seed = 1;
  bool gc_mask = false;
  auto* gradcheck = app.add_subcommand("gradcheck", "finite-difference gradient validation");
  gradcheck->add_option("--model", gc_kind)
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ctxkge::ModelKind>{{"transe", ctxkge::ModelKind::TransE},
                                                   {"distmult", ctxkge::ModelKind::DistMult}}));
  gradcheck->add_option("--iterations", gc_iters)->check(CLI::NonNegativeNumber);
  gradcheck->add_option("--seed", gc_seed);
  gradcheck->add_flag("--mask-target-edge", gc_mask);

  ctxkge::RunConfig report_cfg;
  std::string report_config_path;
  auto* report = app.add_subcommand("report", "parameter count and aggregation work");
  add_run_options(*report, report_cfg, report_config_path);

  std::string dump_dir, dump_what = "contexts";
  ctxkge::RunConfig dump_cfg;
  auto* dump = app.add_subcommand("dump", "debug dump of contexts or attention");
  dump->add_option("--dataset-dir", dump_dir)->required();
  dump->add_option("--what", dump_what)->check(CLI::IsMember({"contexts", "attention"}));
  dump->add_option("--dim", dump_cfg.dim);
  dump->add_option("--iterations", dump_cfg.iterations);
  dump->add_option("--seed", dump_cfg.seed);
  dump->add_option("--model", dump_cfg.model)
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, ctxkge::ModelKind>{{"transe", ctxkge::ModelKind::TransE},
                                                   {"distmult", ctxkge::ModelKind::DistMult}}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) return cmd_stats(stats_dir);
    if (*train) {
      const auto cfg = merge_config(*train, train_cfg, train_config_path);
      if (cfg.dataset_dir.empty()) throw std::runtime_error("--dataset-dir is required");
      return cmd_train(cfg);
    }
    if (*eval) return cmd_eval(eval_ckpt, eval_dir, eval_split, eval_threads, eval_dump);
    if (*gradcheck) return cmd_gradcheck(gc_kind, gc_iters, gc_seed, gc_mask);
    if (*report) {
      const auto cfg = merge_config(*report, report_cfg, report_config_path);
      if (cfg.dataset_dir.empty()) throw std::runtime_error("--dataset-dir is required");
      return cmd_report(cfg);
    }
    if (*dump) {
      return cmd_dump(dump_dir, dump_what, dump_cfg.model, dump_cfg.dim, dump_cfg.iterations,
                      dump_cfg.seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
