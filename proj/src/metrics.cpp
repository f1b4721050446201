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

#include "ontopred/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "ontopred/parallel.hpp"

namespace ontopred {

namespace {

void check_shapes(const PredictionMatrix& pred, const TruthSets& truth) {
  if (static_cast<Index>(truth.size()) != pred.scores.rows() ||
      pred.proteins.size() != truth.size())
    throw ValidationError("prediction rows and truth sets differ in count");
  for (const auto& labels : truth)
    for (Index t : labels)
      if (t < 0 || t >= pred.scores.cols())
        throw ValidationError("truth term index outside the score matrix");
}

// Per benchmark protein: all scores and the true-term scores, ascending, so
// that "how many are >= t" is a binary search.
struct SortedScores {
  std::vector<double> all;
  std::vector<double> positive;
};

std::vector<SortedScores> sort_benchmark(const PredictionMatrix& pred,
                                         const TruthSets& truth) {
  std::vector<std::size_t> rows;
  for (std::size_t p = 0; p < truth.size(); ++p)
    if (!truth[p].empty()) rows.push_back(p);
  std::vector<SortedScores> out(rows.size());
  parallel_for(rows.size(), [&](std::size_t k) {
    const auto r = static_cast<Index>(rows[k]);
    auto& s = out[k];
    s.all.resize(static_cast<std::size_t>(pred.scores.cols()));
    for (Index c = 0; c < pred.scores.cols(); ++c)
      s.all[static_cast<std::size_t>(c)] = pred.scores(r, c);
    for (Index t : truth[rows[k]]) s.positive.push_back(pred.scores(r, t));
    std::sort(s.all.begin(), s.all.end());
    std::sort(s.positive.begin(), s.positive.end());
  });
  return out;
}

std::size_t count_at_least(const std::vector<double>& sorted, double t) {
  return static_cast<std::size_t>(
      sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t));
}

PRPoint point_at(const std::vector<SortedScores>& bench, double t) {
  PRPoint pt;
  pt.threshold = t;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (const auto& s : bench) {
    const std::size_t predicted = count_at_least(s.all, t);
    const std::size_t hits = count_at_least(s.positive, t);
    recall_sum += static_cast<double>(hits) / static_cast<double>(s.positive.size());
    if (predicted > 0) {
      ++pt.covered;
      precision_sum += static_cast<double>(hits) / static_cast<double>(predicted);
    }
  }
  pt.precision = pt.covered ? precision_sum / static_cast<double>(pt.covered) : 0.0;
  pt.recall = bench.empty() ? 0.0 : recall_sum / static_cast<double>(bench.size());
  return pt;
}

// pairs sorted by descending score; labels 0/1.
double average_precision(std::vector<std::pair<double, bool>>& pairs) {
  std::size_t positives = 0;
  for (const auto& pr : pairs) positives += pr.second;
  if (positives == 0) return -1.0;
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double area = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  for (std::size_t k = 0; k < pairs.size();) {
    const double cut = pairs[k].first;
    while (k < pairs.size() && pairs[k].first == cut) {
      tp += pairs[k].second;
      ++seen;
      ++k;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(positives);
    const double precision = static_cast<double>(tp) / static_cast<double>(seen);
    area += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return area;
}

}  // namespace

double f_measure(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

PRPoint pr_at_threshold(const PredictionMatrix& pred, const TruthSets& truth,
                        double t) {
  check_shapes(pred, truth);
  return point_at(sort_benchmark(pred, truth), t);
}

EvalReport fmax(const PredictionMatrix& pred, const TruthSets& truth) {
  check_shapes(pred, truth);
  const auto bench = sort_benchmark(pred, truth);
  if (bench.empty())
    throw ValidationError("no benchmark protein has a true term");
  EvalReport report;
  report.curve.resize(kThresholdSteps + 1);
  parallel_for(report.curve.size(), [&](std::size_t k) {
    report.curve[k] = point_at(bench, grid_threshold(static_cast<int>(k)));
  });
  for (const auto& pt : report.curve) {
    const double f = f_measure(pt.precision, pt.recall);
    if (f > report.fmax) {
      report.fmax = f;
      report.best_threshold = pt.threshold;
    }
  }
  return report;
}

double aupr(const PredictionMatrix& pred, const TruthSets& truth,
            AuprMode mode) {
  check_shapes(pred, truth);
  std::vector<Index> rows;
  for (std::size_t p = 0; p < truth.size(); ++p)
    if (!truth[p].empty()) rows.push_back(static_cast<Index>(p));
  const Index n_terms = pred.scores.cols();

  // Dense 0/1 view of the benchmark rows.
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> label =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
          static_cast<Index>(rows.size()), n_terms, false);
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (Index t : truth[static_cast<std::size_t>(rows[k])])
      label(static_cast<Index>(k), t) = true;

  if (mode == AuprMode::Micro) {
    std::vector<std::pair<double, bool>> pairs;
    pairs.reserve(rows.size() * static_cast<std::size_t>(n_terms));
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (Index t = 0; t < n_terms; ++t)
        pairs.emplace_back(pred.scores(rows[k], t), label(static_cast<Index>(k), t));
    const double area = average_precision(pairs);
    if (area < 0.0) throw ValidationError("no positive pairs for AUPR");
    return area;
  }

  std::vector<double> per_term(static_cast<std::size_t>(n_terms), -1.0);
  parallel_for(per_term.size(), [&](std::size_t t) {
    std::vector<std::pair<double, bool>> pairs;
    pairs.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k)
      pairs.emplace_back(pred.scores(rows[k], static_cast<Index>(t)),
                         label(static_cast<Index>(k), static_cast<Index>(t)));
    per_term[t] = average_precision(pairs);
  });
  double sum = 0.0;
  std::size_t used = 0;
  for (double a : per_term)
    if (a >= 0.0) {
      sum += a;
      ++used;
    }
  if (used == 0) throw ValidationError("no term has a positive for AUPR");
  return sum / static_cast<double>(used);
}

EvalReport evaluate(const PredictionMatrix& pred, const TruthSets& truth) {
  EvalReport report = fmax(pred, truth);
  report.aupr_micro = aupr(pred, truth, AuprMode::Micro);
  report.aupr_macro = aupr(pred, truth, AuprMode::Macro);
  return report;
}

PredictionMatrix propagate_scores(PredictionMatrix pred, const OntologyGraph& g) {
  if (pred.scores.cols() != g.size())
    throw ValidationError("score columns do not match ontology size");
  const auto& order = g.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (Index c : g.children(*it))
      pred.scores.col(*it) = pred.scores.col(*it).cwiseMax(pred.scores.col(c));
  return pred;
}

}  // namespace ontopred
