// Copyright 2026 The kbread Authors.
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

// kbread: command-line front end.
//
//   kbread train --labeled train.tsv [--unlabeled wkp.tsv] --model-out m.tsv
//   kbread predict --model m.tsv --input test.tsv --out pred.tsv
//   kbread eval --model m.tsv --test test.tsv --collins-train train.tsv
//   kbread ternary-extract --model m.tsv --tuples t.tsv --out ternary.tsv
//   kbread ternary-templates --model m.tsv --train roles.tsv --tuples t.tsv
//   kbread knom-mine | knom-learn | knom-predict --compounds c.tsv ...
//   kbread kb-check --kb-dir kb/
//
// Shared flags: --kb-dir, --config, --seed, --threads. A config file holds
// flat key=value lines naming long options; command-line flags win.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kbread/collins.h"
#include "kbread/corpus.h"
#include "kbread/eval.h"
#include "kbread/features.h"
#include "kbread/kb_store.h"
#include "kbread/kernels.h"
#include "kbread/knom.h"
#include "kbread/model.h"
#include "kbread/ternary.h"
#include "kbread/text.h"

namespace kbread {
namespace {

constexpr int kExitInput = 2;

struct Shared {
  std::string kb_dir;
  std::string config;
  uint64_t seed = 0;
  unsigned threads = 1;
  int min_svo_count = kDefaultMinSvoCount;
  std::string category_scheme;
  bool dry_run = false;
};

struct TrainArgs {
  std::string labeled, unlabeled, model_out, log_out;
  std::string features = "default";
  size_t max_sense_verbs = 5;
  TrainConfig cfg;
  bool synonym_expand = false;
};

struct PredictArgs {
  std::string model, input, out;
};

struct EvalArgs {
  std::string model, test, collins_train, report, tsv, chart, distribution;
};

struct TernaryArgs {
  std::string model, tuples, train, out, maps_out, templates_out;
  size_t min_support = kDefaultTernaryMinSupport;
};

struct KnomArgs {
  std::string compounds, mappings, out, baseline_out, sample_out;
  size_t min_support = knom::kDefaultMinSupport;
  size_t min_support_seq = knom::kDefaultMinSupport;
  size_t sample_size = 100;
  bool baseline = false;
};

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

KnowledgeBase load_knowledge(const Shared& sh, const std::string& scheme) {
  if (sh.kb_dir.empty()) return KnowledgeBase{};
  if (!std::filesystem::is_directory(sh.kb_dir)) {
    throw InputError(sh.kb_dir + ": knowledge directory not found");
  }
  return load_kb(KbPaths::from_dir(sh.kb_dir, scheme), sh.min_svo_count);
}

std::string scheme_for(const Shared& sh, const AttachmentModel* model) {
  if (!sh.category_scheme.empty()) return sh.category_scheme;
  if (model != nullptr) return model->feature_config.category_scheme;
  return "default";
}

class Output {
 public:
  Output(const std::string& path, bool dry_run) {
    if (dry_run || path.empty()) return;
    file_.open(path);
    if (!file_) throw InputError(path + ": cannot open for writing");
    path_ = path;
  }
  bool active() const { return file_.is_open(); }
  std::ostream& stream() { return file_; }
  void close() {
    if (!active()) return;
    file_.close();
    if (!file_) throw InputError(path_ + ": write failed");
  }

 private:
  std::ofstream file_;
  std::string path_;
};

std::vector<FeatureVector> extract_all(std::span<const PPInstance> data,
                                       const KnowledgeBase& kb,
                                       const FeatureConfig& cfg,
                                       unsigned threads) {
  std::vector<FeatureVector> out(data.size());
  parallel_for(data.size(), threads, [&](size_t b, size_t e) {
    for (size_t i = b; i < e; ++i) out[i] = extract_features(data[i], kb, cfg);
  });
  return out;
}

// --- subcommands ------------------------------------------------------------

int run_train(const Shared& sh, TrainArgs a) {
  FeatureConfig fcfg;
  if (a.features == "default") {
    fcfg = FeatureConfig::defaults();
  } else {
    fcfg.families = FeatureConfig::parse_families(a.features);
  }
  fcfg.max_sense_verbs = a.max_sense_verbs;
  fcfg.category_scheme = sh.category_scheme.empty() ? "default" : sh.category_scheme;
  a.cfg.threads = sh.threads;
  a.cfg.validate();

  KnowledgeBase kb = load_knowledge(sh, fcfg.category_scheme);
  std::vector<PPInstance> labeled = read_instances(a.labeled);
  for (size_t i = 0; i < labeled.size(); ++i) {
    if (!labeled[i].label) {
      throw InputError(a.labeled + ": instance " + std::to_string(i + 1) +
                       " has no V/N label");
    }
  }
  if (labeled.empty()) throw InputError(a.labeled + ": no instances");
  std::vector<PPInstance> unlabeled;
  if (!a.unlabeled.empty()) unlabeled = read_instances(a.unlabeled);
  if (a.synonym_expand) labeled = expand_with_synonyms(labeled, kb);

  if (sh.dry_run) {
    std::cout << "dry run: " << labeled.size() << " labeled, "
              << unlabeled.size() << " unlabeled instances; inputs valid\n";
    return 0;
  }

  std::vector<Example> lab;
  lab.reserve(labeled.size());
  auto lab_fv = extract_all(labeled, kb, fcfg, sh.threads);
  for (size_t i = 0; i < labeled.size(); ++i) {
    lab.push_back({std::move(lab_fv[i]),
                   *labeled[i].label == Attachment::kVerb ? 1.0 : 0.0});
  }
  auto unl_fv = extract_all(unlabeled, kb, fcfg, sh.threads);

  AttachmentModel model = train_em(lab, unl_fv, a.cfg);
  model.feature_config = fcfg;
  model.save(std::filesystem::path(a.model_out));

  std::string log_path = a.log_out.empty() ? a.model_out + ".log" : a.log_out;
  Output log(log_path, false);
  log.stream() << "phase\titeration\tq_before\tq_after\tlabeled_ll\tsteps\n";
  log.stream() << "supervised\t0\t-\t-\t-\t" << model.info.supervised_steps
               << '\n';
  for (const auto& it : model.info.em_log) {
    log.stream() << "em\t" << it.iteration << '\t' << num(it.q_before) << '\t'
                 << num(it.q_after) << '\t' << num(it.labeled_ll) << '\t'
                 << it.gradient_steps << '\n';
  }
  log.close();
  std::cerr << "trained on " << lab.size() << " labeled + " << unl_fv.size()
            << " unlabeled instances, " << model.info.em_iterations
            << " EM iterations, " << model.weights().size() << " weights ("
            << kernels::active().name << " kernels)\n";
  return 0;
}

int run_predict(const Shared& sh, const PredictArgs& a) {
  AttachmentModel model = AttachmentModel::load(std::filesystem::path(a.model));
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, &model));
  std::vector<PPInstance> data = read_instances(a.input);
  Output out(a.out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << data.size() << " instances; inputs valid\n";
    return 0;
  }
  auto fvs = extract_all(data, kb, model.feature_config, sh.threads);
  std::ostream& os = out.active() ? out.stream() : std::cout;
  char buf[32];
  for (size_t i = 0; i < data.size(); ++i) {
    const PPInstance& d = data[i];
    Posterior post = predict_proba(model, fvs[i]);
    std::snprintf(buf, sizeof(buf), "%.6f", post.p_verb);
    os << d.n0.value_or("-") << '\t' << d.v << '\t' << d.n1 << '\t' << d.p
       << '\t' << d.n2 << '\t' << attachment_code(post.decision()) << '\t'
       << buf << '\n';
  }
  out.close();
  return 0;
}

int run_eval(const Shared& sh, const EvalArgs& a) {
  AttachmentModel model = AttachmentModel::load(std::filesystem::path(a.model));
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, &model));
  std::vector<PPInstance> test = read_instances(a.test);
  for (size_t i = 0; i < test.size(); ++i) {
    if (!test[i].label) {
      throw InputError(a.test + ": instance " + std::to_string(i + 1) +
                       " has no V/N label");
    }
  }
  std::optional<collins::BackoffCounts> counts;
  if (!a.collins_train.empty()) {
    counts = collins::fit_counts(read_instances(a.collins_train));
  }
  Output report(a.report, sh.dry_run), tsv(a.tsv, sh.dry_run),
      chart(a.chart, sh.dry_run), dist(a.distribution, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << test.size() << " test instances; inputs valid\n";
    return 0;
  }

  auto fvs = extract_all(test, kb, model.feature_config, sh.threads);
  std::vector<NamedPredictor> methods;
  // Predictions are looked up by position in `test`.
  methods.push_back({"ppad", [&](const PPInstance& inst) {
                       size_t i = static_cast<size_t>(&inst - test.data());
                       return predict_proba(model, fvs[i]).decision();
                     }});
  if (counts) {
    methods.push_back({"collins", [&](const PPInstance& inst) {
                         return collins::predict(*counts, inst).attachment;
                       }});
  }
  auto reports = compare(methods, test);

  if (report.active()) {
    write_report_text(report.stream(), reports);
  } else {
    write_report_text(std::cout, reports);
  }
  if (tsv.active()) write_report_tsv(tsv.stream(), reports);
  if (chart.active()) write_chart_data(chart.stream(), reports);
  if (dist.active()) write_distribution(dist.stream(), reports.front());
  report.close();
  tsv.close();
  chart.close();
  dist.close();
  return 0;
}

int run_ternary_extract(const Shared& sh, const TernaryArgs& a) {
  AttachmentModel model = AttachmentModel::load(std::filesystem::path(a.model));
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, &model));
  std::vector<PPInstance> tuples = read_tuples(a.tuples);
  Output out(a.out, sh.dry_run), maps_out(a.maps_out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << tuples.size() << " tuples; inputs valid\n";
    return 0;
  }
  auto maps = map_relations_to_verbs(kb, tuples, a.min_support);
  auto ternary = extract_ternary(tuples, model, kb, maps);
  write_ternary(out.active() ? out.stream() : std::cout, ternary);
  if (maps_out.active()) write_relation_maps(maps_out.stream(), maps);
  out.close();
  maps_out.close();
  return 0;
}

int run_ternary_templates(const Shared& sh, const TernaryArgs& a) {
  AttachmentModel model = AttachmentModel::load(std::filesystem::path(a.model));
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, &model));
  std::vector<LabeledTuple> train = read_labeled_tuples(a.train);
  std::vector<PPInstance> tuples;
  if (!a.tuples.empty()) tuples = read_tuples(a.tuples);
  Output out(a.out, sh.dry_run), tmpl_out(a.templates_out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << train.size() << " labeled, " << tuples.size()
              << " tuples; inputs valid\n";
    return 0;
  }
  auto templates = learn_role_templates(train, kb, a.min_support);
  if (tmpl_out.active()) write_role_templates(tmpl_out.stream(), templates);
  auto labeled = apply_role_templates(templates, tuples, model, kb);
  write_ternary(out.active() ? out.stream() : std::cout, labeled);
  out.close();
  tmpl_out.close();
  return 0;
}

int run_knom_mine(const Shared& sh, const KnomArgs& a) {
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, nullptr));
  auto corpus = knom::read_compounds(a.compounds);
  Output out(a.out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << corpus.size() << " compounds; inputs valid\n";
    return 0;
  }
  auto seqs = knom::mine_sequences(corpus, kb, a.min_support);
  knom::write_sequences(out.active() ? out.stream() : std::cout, seqs);
  out.close();
  return 0;
}

int run_knom_learn(const Shared& sh, const KnomArgs& a) {
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, nullptr));
  auto corpus = knom::read_compounds(a.compounds);
  Output out(a.out, sh.dry_run), base(a.baseline_out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << corpus.size() << " compounds; inputs valid\n";
    return 0;
  }
  auto seqs = knom::mine_sequences(corpus, kb, a.min_support_seq);
  auto mappings = knom::learn_mappings(seqs, kb, a.min_support);
  knom::write_mappings(out.active() ? out.stream() : std::cout, mappings);
  if (base.active()) {
    knom::write_mappings(base.stream(), knom::baseline_mappings(mappings));
  }
  out.close();
  base.close();
  return 0;
}

int run_knom_predict(const Shared& sh, const KnomArgs& a) {
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, nullptr));
  auto mappings = knom::read_mappings(a.mappings);
  auto corpus = knom::read_compounds(a.compounds);
  Output out(a.out, sh.dry_run), sample(a.sample_out, sh.dry_run);
  if (sh.dry_run) {
    std::cout << "dry run: " << mappings.size() << " mappings, "
              << corpus.size() << " compounds; inputs valid\n";
    return 0;
  }
  if (a.baseline) mappings = knom::baseline_mappings(mappings);
  auto preds = knom::predict_instances(mappings, corpus, kb);
  knom::write_predictions(out.active() ? out.stream() : std::cout, preds);
  if (sample.active()) {
    knom::write_predictions(
        sample.stream(),
        knom::sample_for_annotation(preds, a.sample_size, sh.seed));
  }
  out.close();
  sample.close();
  return 0;
}

int run_kb_check(const Shared& sh) {
  if (sh.kb_dir.empty()) throw InputError("kb-check needs --kb-dir");
  KnowledgeBase kb = load_knowledge(sh, scheme_for(sh, nullptr));
  KbStats s = kb.stats();
  std::cout << "svo_triples\t" << s.svo_triples << '\n'
            << "svo_above_threshold\t" << s.svo_above_threshold << '\n'
            << "typed_nouns\t" << s.typed_nouns << '\n'
            << "type_assertions\t" << s.type_assertions << '\n'
            << "role_entries\t" << s.role_entries << '\n'
            << "prepositions\t" << s.prepositions << '\n'
            << "synonym_groups\t" << s.synonym_groups << '\n'
            << "relation_instances\t" << s.relation_instances << '\n';
  return 0;
}

// --- config file ------------------------------------------------------------

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open config file");
  std::map<std::string, std::string> kv;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = line;
    while (!t.empty() && (t.back() == '\r' || t.back() == ' ')) t.pop_back();
    size_t start = t.find_first_not_of(" \t");
    if (start == std::string::npos || t[start] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw format_error(path, lineno, "expected key=value");
    }
    std::string key = t.substr(start, eq - start);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    std::string value = t.substr(eq + 1);
    value.erase(0, std::min(value.find_first_not_of(" \t"), value.size()));
    if (key.empty()) throw format_error(path, lineno, "empty key");
    kv[key] = value;
  }
  return kv;
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].starts_with("--config=")) return args[i].substr(9);
  }
  return std::nullopt;
}

bool given_on_command_line(const std::vector<std::string>& args,
                           const std::string& key) {
  const std::string flag = "--" + key;
  for (const auto& a : args) {
    if (a == flag || a.starts_with(flag + "=")) return true;
  }
  return false;
}

int run(int argc, char** argv) {
  CLI::App app{"Knowledge-aware PP attachment, ternary relations and "
               "compound-noun relation extraction",
               "kbread"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Shared sh;
  app.add_option("--kb-dir", sh.kb_dir, "Directory with svo/isa/roles/...tsv");
  app.add_option("--config", sh.config, "Flat key=value defaults file");
  app.add_option("--seed", sh.seed, "Seed for sampling")->capture_default_str();
  app.add_option("--threads", sh.threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--min-svo-count", sh.min_svo_count,
                 "SVO occurrences needed for a triple to count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--category-scheme", sh.category_scheme,
                 "Noun categories from isa.<scheme>.tsv");
  app.add_flag("--dry-run", sh.dry_run, "Validate inputs without writing");

  TrainArgs ta;
  auto* train = app.add_subcommand("train", "Train the attachment model");
  train->add_option("--labeled", ta.labeled, "Labeled corpus")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--unlabeled", ta.unlabeled, "Unlabeled corpus")
      ->check(CLI::ExistingFile);
  train->add_option("--model-out", ta.model_out, "Model file to write")
      ->required();
  train->add_option("--log-out", ta.log_out, "Training log (default <model>.log)");
  train->add_option("--features", ta.features,
                    "Families as a list (F1,F3,F8), 'default' or 'all'")
      ->capture_default_str();
  train->add_option("--max-sense-verbs", ta.max_sense_verbs,
                    "Ranked preposition senses checked per instance")->capture_default_str();
  train->add_option("--learning-rate", ta.cfg.learning_rate,
                    "Initial step on the mean objective")->capture_default_str();
  train->add_option("--l2", ta.cfg.l2_penalty, "L2 penalty")->capture_default_str();
  train->add_option("--em-iters", ta.cfg.max_em_iters, "EM iteration cap")->capture_default_str();
  train->add_option("--gradient-steps", ta.cfg.max_gradient_steps,
                    "Ascent steps per fit")
      ->capture_default_str();
  train->add_option("--tol", ta.cfg.convergence_tol,
                    "Stop when an objective gain falls below this")->capture_default_str();
  train->add_flag("--synonym-expand", ta.synonym_expand,
                  "Add labeled copies with synonymous verbs");

  PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "Predict attachments");
  predict->add_option("--model", pa.model)->required()->check(CLI::ExistingFile);
  predict->add_option("--input", pa.input)->required()->check(CLI::ExistingFile);
  predict->add_option("--out", pa.out, "Output TSV (default stdout)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Compare the model and baseline");
  eval->add_option("--model", ea.model)->required()->check(CLI::ExistingFile);
  eval->add_option("--test", ea.test)->required()->check(CLI::ExistingFile);
  eval->add_option("--collins-train", ea.collins_train,
                   "Labeled data for the back-off baseline")
      ->check(CLI::ExistingFile);
  eval->add_option("--report", ea.report, "Text report (default stdout)");
  eval->add_option("--tsv", ea.tsv, "Machine-readable report");
  eval->add_option("--chart", ea.chart, "Per-preposition accuracy plot data");
  eval->add_option("--distribution", ea.distribution,
                   "Per-preposition gold V/N proportions");

  TernaryArgs xa;
  auto* tx = app.add_subcommand("ternary-extract",
                                "Ternary relations from verb attachments");
  tx->add_option("--model", xa.model)->required()->check(CLI::ExistingFile);
  tx->add_option("--tuples", xa.tuples)->required()->check(CLI::ExistingFile);
  tx->add_option("--out", xa.out, "Ternary TSV (default stdout)");
  tx->add_option("--maps-out", xa.maps_out, "Relation-to-verb maps");
  tx->add_option("--min-support", xa.min_support)->capture_default_str();

  TernaryArgs ya;
  auto* tt = app.add_subcommand("ternary-templates",
                                "Learn and apply role-label templates");
  tt->add_option("--model", ya.model)->required()->check(CLI::ExistingFile);
  tt->add_option("--train", ya.train, "Role-labeled tuples")
      ->required()
      ->check(CLI::ExistingFile);
  tt->add_option("--tuples", ya.tuples, "Tuples to label")
      ->check(CLI::ExistingFile);
  tt->add_option("--out", ya.out, "Labeled ternary TSV (default stdout)");
  tt->add_option("--templates-out", ya.templates_out, "Learned templates");
  tt->add_option("--min-support", ya.min_support)->capture_default_str();

  KnomArgs ma;
  auto* km = app.add_subcommand("knom-mine", "Mine compound type sequences");
  km->add_option("--compounds", ma.compounds)->required()->check(CLI::ExistingFile);
  km->add_option("--out", ma.out, "Sequences TSV (default stdout)");
  km->add_option("--min-support", ma.min_support)->capture_default_str();

  KnomArgs la;
  auto* kl = app.add_subcommand("knom-learn", "Learn sequence-relation mappings");
  kl->add_option("--compounds", la.compounds)->required()->check(CLI::ExistingFile);
  kl->add_option("--out", la.out, "mappings.tsv (default stdout)");
  kl->add_option("--baseline-out", la.baseline_out, "Type-free mappings");
  kl->add_option("--min-support", la.min_support, "Mapping support threshold")
      ->capture_default_str();
  kl->add_option("--min-support-seq", la.min_support_seq,
                 "Sequence support threshold")
      ->capture_default_str();

  KnomArgs pa2;
  auto* kp = app.add_subcommand("knom-predict", "Predict relation instances");
  kp->add_option("--mappings", pa2.mappings)->required()->check(CLI::ExistingFile);
  kp->add_option("--compounds", pa2.compounds)->required()->check(CLI::ExistingFile);
  kp->add_option("--out", pa2.out, "predictions.tsv (default stdout)");
  kp->add_flag("--baseline", pa2.baseline, "Apply type-free baseline mappings");
  kp->add_option("--sample-out", pa2.sample_out, "Annotation sample manifest");
  kp->add_option("--sample-size", pa2.sample_size)->capture_default_str();

  auto* kc = app.add_subcommand("kb-check", "Load the knowledge base and report");

  std::vector<std::string> args(argv + 1, argv + argc);
  if (auto path = find_config_path(args)) {
    std::string sub;
    for (const auto& a : args) {
      if (auto* s = app.get_subcommand_no_throw(a)) {
        sub = s->get_name();
        break;
      }
    }
    for (const auto& [key, value] : read_config(*path)) {
      if (key == "config") throw InputError(*path + ": config cannot nest");
      const CLI::Option* known = app.get_option_no_throw("--" + key);
      bool anywhere = known != nullptr;
      if (!known && !sub.empty()) {
        known = app.get_subcommand(sub)->get_option_no_throw("--" + key);
      }
      for (auto* s : app.get_subcommands({})) {
        if (s->get_option_no_throw("--" + key)) anywhere = true;
      }
      if (!anywhere) throw InputError(*path + ": unknown key '" + key + "'");
      if (known && !given_on_command_line(args, key)) {
        args.push_back("--" + key + "=" + value);
      }
    }
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*train) return run_train(sh, ta);
  if (*predict) return run_predict(sh, pa);
  if (*eval) return run_eval(sh, ea);
  if (*tx) return run_ternary_extract(sh, xa);
  if (*tt) return run_ternary_templates(sh, ya);
  if (*km) return run_knom_mine(sh, ma);
  if (*kl) return run_knom_learn(sh, la);
  if (*kp) return run_knom_predict(sh, pa2);
  if (*kc) return run_kb_check(sh);
  return kExitInput;
}

}  // namespace
}  // namespace kbread

int main(int argc, char** argv) {
  try {
    return kbread::run(argc, argv);
  } catch (const kbread::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kbread::kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kbread::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 1;
  }
}
