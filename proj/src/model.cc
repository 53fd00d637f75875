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

#include "kbread/model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "kbread/kernels.h"
#include "kbread/text.h"

namespace kbread {
namespace {

constexpr int kModelVersion = 1;
constexpr int kMaxHalvings = 60;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void check_hard_targets(std::span<const Example> data) {
  for (const auto& e : data) {
    if (e.target != 0.0 && e.target != 1.0) {
      throw std::invalid_argument("labeled examples need targets of 0 or 1");
    }
  }
}

// Examples compiled to a CSR matrix over interned feature ids.
class Problem {
 public:
  uint32_t intern(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  void add(const FeatureVector& fv, double target) {
    for (const auto& name : fv) cols_.push_back(intern(name));
    offsets_.push_back(cols_.size());
    targets_.push_back(target);
  }

  size_t rows() const { return targets_.size(); }
  size_t dims() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  double target(size_t i) const { return targets_[i]; }
  void set_target(size_t i, double t) { targets_[i] = t; }

  double score(size_t i, const std::vector<double>& theta) const {
    const auto& k = kernels::active();
    return k.gather_sum(theta.data(), cols_.data() + offsets_[i],
                        offsets_[i + 1] - offsets_[i]);
  }

  void scores(const std::vector<double>& theta, unsigned threads,
              std::vector<double>& out) const {
    out.resize(rows());
    parallel_for(rows(), threads, [&](size_t b, size_t e) {
      for (size_t i = b; i < e; ++i) out[i] = score(i, theta);
    });
  }

  // Objective over rows [0, limit).
  double objective(const std::vector<double>& theta, double l2,
                   unsigned threads, size_t limit) const {
    std::vector<double> s;
    scores(theta, threads, s);
    double total = 0.0;
    for (size_t i = 0; i < limit; ++i) {
      total += targets_[i] * s[i] - log1pexp(s[i]);
    }
    const auto& k = kernels::active();
    return total - 0.5 * l2 * k.sum_squares(theta.data(), theta.size());
  }

  double objective(const std::vector<double>& theta, double l2,
                   unsigned threads) const {
    return objective(theta, l2, threads, rows());
  }

  void gradient(const std::vector<double>& theta, double l2, unsigned threads,
                std::vector<double>& g) const {
    std::vector<double> s;
    scores(theta, threads, s);
    g.assign(theta.size(), 0.0);
    for (size_t i = 0; i < rows(); ++i) {
      double r = targets_[i] - sigmoid(s[i]);
      for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) g[cols_[k]] += r;
    }
    if (l2 != 0.0) kernels::active().axpy(-l2, theta.data(), g.data(), g.size());
  }

 private:
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<std::string> names_;
  std::vector<size_t> offsets_{0};
  std::vector<uint32_t> cols_;
  std::vector<double> targets_;
};

struct AscentResult {
  int steps = 0;
  double start = 0.0;
  double end = 0.0;
  std::vector<double> trace;
};

// Fixed-step gradient ascent; the step halves whenever a move would lower
// the objective, so accepted values never decrease.
AscentResult ascend(const Problem& prob, std::vector<double>& theta,
                    const TrainConfig& cfg) {
  const auto& k = kernels::active();
  AscentResult res;
  double f = prob.objective(theta, cfg.l2_penalty, cfg.threads);
  res.start = f;
  if (cfg.record_trace) res.trace.push_back(f);
  double eta =
      cfg.learning_rate / static_cast<double>(std::max<size_t>(1, prob.rows()));
  std::vector<double> g, candidate;
  for (int step = 0; step < cfg.max_gradient_steps; ++step) {
    prob.gradient(theta, cfg.l2_penalty, cfg.threads, g);
    if (k.sum_squares(g.data(), g.size()) == 0.0) break;
    bool accepted = false;
    double fc = f;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      candidate = theta;
      k.axpy(eta, g.data(), candidate.data(), candidate.size());
      fc = prob.objective(candidate, cfg.l2_penalty, cfg.threads);
      if (fc >= f) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
    double delta = fc - f;
    theta.swap(candidate);
    f = fc;
    ++res.steps;
    if (cfg.record_trace) res.trace.push_back(f);
    if (delta < cfg.convergence_tol) break;
  }
  res.end = f;
  return res;
}

AttachmentModel to_model(const Problem& prob, const std::vector<double>& theta,
                         const TrainConfig& cfg) {
  AttachmentModel m;
  m.train_config = cfg;
  for (size_t j = 0; j < prob.dims(); ++j) {
    m.set_weight(prob.names()[j], theta[j]);
  }
  return m;
}

}  // namespace

// --- config ----------------------------------------------------------------

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be positive");
  }
  if (!(l2_penalty >= 0.0) || !std::isfinite(l2_penalty)) {
    throw std::invalid_argument("l2_penalty must be nonnegative");
  }
  if (max_em_iters < 0) throw std::invalid_argument("max_em_iters must be >= 0");
  if (max_gradient_steps < 1) {
    throw std::invalid_argument("max_gradient_steps must be positive");
  }
  if (!(convergence_tol > 0.0)) {
    throw std::invalid_argument("convergence_tol must be positive");
  }
}

// --- math ------------------------------------------------------------------

double sigmoid(double s) {
  static const double kLow = std::numeric_limits<double>::min();
  static const double kHigh = std::nextafter(1.0, 0.0);
  double p;
  if (s >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-s));
  } else {
    double e = std::exp(s);
    p = e / (1.0 + e);
  }
  return std::clamp(p, kLow, kHigh);
}

double log1pexp(double s) {
  if (s > 0.0) return s + std::log1p(std::exp(-s));
  return std::log1p(std::exp(s));
}

// --- model -----------------------------------------------------------------

double AttachmentModel::weight(std::string_view name) const {
  auto it = weights_.find(name);
  return it == weights_.end() ? 0.0 : it->second;
}

void AttachmentModel::set_weight(const std::string& name, double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite weight for " + name);
  }
  weights_[name] = value;
}

double AttachmentModel::score(const FeatureVector& fv) const {
  double s = 0.0;
  for (const auto& name : fv) s += weight(name);
  return s;
}

void AttachmentModel::save(std::ostream& out) const {
  const TrainConfig& c = train_config;
  out << "@kbread-model\t" << kModelVersion << '\n';
  out << "@train\tlearning_rate\t" << format_double(c.learning_rate)
      << "\tl2_penalty\t" << format_double(c.l2_penalty) << "\tmax_em_iters\t"
      << c.max_em_iters << "\tmax_gradient_steps\t" << c.max_gradient_steps
      << "\tconvergence_tol\t" << format_double(c.convergence_tol) << '\n';
  out << "@features\tfamilies\t" << feature_config.families_string()
      << "\tcategory_scheme\t" << feature_config.category_scheme
      << "\tmax_sense_verbs\t" << feature_config.max_sense_verbs << '\n';
  out << "@counts\tlabeled\t" << info.labeled << "\tunlabeled\t"
      << info.unlabeled << "\tsupervised_steps\t" << info.supervised_steps
      << "\tem_iterations\t" << info.em_iterations << '\n';
  for (const auto& [name, w] : weights_) {
    out << name << '\t' << format_double(w) << '\n';
  }
}

void AttachmentModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw format_error(path.string(), 0, "cannot write model");
  save(out);
  if (!out) throw format_error(path.string(), 0, "write failed");
}

AttachmentModel AttachmentModel::load(std::istream& in,
                                      const std::string& name) {
  AttachmentModel m;
  std::string line;
  size_t lineno = 0;
  bool saw_version = false;
  auto fail = [&](const std::string& msg) -> InputError {
    return format_error(name, lineno, msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split(line, '\t');
    if (f[0].starts_with("@")) {
      if (f[0] == "@kbread-model") {
        if (f.size() != 2 || f[1] != std::to_string(kModelVersion)) {
          throw fail("unsupported model version");
        }
        saw_version = true;
        continue;
      }
      if (!saw_version) throw fail("missing @kbread-model header");
      if (f.size() % 2 != 1) throw fail("header needs key/value pairs");
      for (size_t i = 1; i + 1 < f.size(); i += 2) {
        const std::string& k = f[i];
        const std::string& v = f[i + 1];
        bool ok = true;
        try {
          if (f[0] == "@train") {
            TrainConfig& c = m.train_config;
            if (k == "learning_rate") ok = parse_double(v, c.learning_rate);
            else if (k == "l2_penalty") ok = parse_double(v, c.l2_penalty);
            else if (k == "max_em_iters") c.max_em_iters = std::stoi(v);
            else if (k == "max_gradient_steps") c.max_gradient_steps = std::stoi(v);
            else if (k == "convergence_tol") ok = parse_double(v, c.convergence_tol);
            else ok = false;
          } else if (f[0] == "@features") {
            FeatureConfig& c = m.feature_config;
            if (k == "families") c.families = FeatureConfig::parse_families(v);
            else if (k == "category_scheme") c.category_scheme = v;
            else if (k == "max_sense_verbs") c.max_sense_verbs = std::stoul(v);
            else ok = false;
          } else if (f[0] == "@counts") {
            TrainingInfo& c = m.info;
            if (k == "labeled") c.labeled = std::stoul(v);
            else if (k == "unlabeled") c.unlabeled = std::stoul(v);
            else if (k == "supervised_steps") c.supervised_steps = std::stoi(v);
            else if (k == "em_iterations") c.em_iterations = std::stoi(v);
            else ok = false;
          } else {
            ok = false;
          }
        } catch (const std::exception&) {
          ok = false;
        }
        if (!ok) throw fail("bad header entry " + f[0] + " " + k + "=" + v);
      }
      continue;
    }
    if (!saw_version) throw fail("missing @kbread-model header");
    double w = 0.0;
    if (f.size() != 2 || !parse_double(f[1], w) || !std::isfinite(w)) {
      throw fail("expected feature<TAB>weight");
    }
    m.weights_[f[0]] = w;
  }
  if (!saw_version) throw fail("missing @kbread-model header");
  return m;
}

AttachmentModel AttachmentModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw format_error(path.string(), 0, "cannot open model");
  return load(in, path.string());
}

// --- inference and objective ----------------------------------------------

Posterior predict_proba(const AttachmentModel& model, const FeatureVector& fv) {
  return Posterior{sigmoid(model.score(fv))};
}

double conditional_log_likelihood(const AttachmentModel& model,
                                  std::span<const Example> data) {
  double total = 0.0;
  for (const auto& e : data) {
    double s = model.score(e.features);
    total += e.target * s - log1pexp(s);
  }
  double sq = 0.0;
  for (const auto& [name, w] : model.weights()) sq += w * w;
  return total - 0.5 * model.train_config.l2_penalty * sq;
}

WeightMap gradient(const AttachmentModel& model, std::span<const Example> data) {
  WeightMap g;
  const double l2 = model.train_config.l2_penalty;
  for (const auto& [name, w] : model.weights()) g[name] = -l2 * w;
  for (const auto& e : data) {
    double r = e.target - sigmoid(model.score(e.features));
    for (const auto& name : e.features) g[name] += r;
  }
  return g;
}

// --- training --------------------------------------------------------------

AttachmentModel train_supervised(std::span<const Example> labeled,
                                 const TrainConfig& cfg) {
  cfg.validate();
  if (labeled.empty()) throw std::invalid_argument("no labeled data");
  check_hard_targets(labeled);

  Problem prob;
  for (const auto& e : labeled) prob.add(e.features, e.target);
  std::vector<double> theta(prob.dims(), 0.0);
  AscentResult r = ascend(prob, theta, cfg);

  AttachmentModel m = to_model(prob, theta, cfg);
  m.info.labeled = labeled.size();
  m.info.supervised_steps = r.steps;
  m.info.supervised_trace = std::move(r.trace);
  return m;
}

AttachmentModel train_em(std::span<const Example> labeled,
                         std::span<const FeatureVector> unlabeled,
                         const TrainConfig& cfg) {
  AttachmentModel init = train_supervised(labeled, cfg);
  if (unlabeled.empty()) return init;

  Problem prob;
  for (const auto& e : labeled) prob.add(e.features, e.target);
  for (const auto& fv : unlabeled) prob.add(fv, 0.5);
  std::vector<double> theta(prob.dims(), 0.0);
  for (size_t j = 0; j < prob.dims(); ++j) {
    theta[j] = init.weight(prob.names()[j]);
  }

  TrainingInfo info = std::move(init.info);
  info.unlabeled = unlabeled.size();
  const size_t first_unlabeled = labeled.size();
  std::vector<double> s;
  for (int t = 1; t <= cfg.max_em_iters; ++t) {
    // E-step: labeled posteriors stay fixed at 1/0.
    prob.scores(theta, cfg.threads, s);
    for (size_t i = first_unlabeled; i < prob.rows(); ++i) {
      prob.set_target(i, sigmoid(s[i]));
    }
    // M-step.
    AscentResult r = ascend(prob, theta, cfg);
    EmIteration it;
    it.iteration = t;
    it.q_before = r.start;
    it.q_after = r.end;
    it.gradient_steps = r.steps;
    it.labeled_ll =
        prob.objective(theta, cfg.l2_penalty, cfg.threads, first_unlabeled);
    it.trace = std::move(r.trace);
    info.em_log.push_back(std::move(it));
    info.em_iterations = t;
    if (r.end - r.start < cfg.convergence_tol) break;
  }

  AttachmentModel m = to_model(prob, theta, cfg);
  m.info = std::move(info);
  return m;
}

}  // namespace kbread
