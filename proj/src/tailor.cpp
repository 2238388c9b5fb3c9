// Copyright 2026 The tldiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tldiv/tailor.hpp"

#include <algorithm>
#include <deque>

namespace tldiv {
namespace detail {

std::vector<Record> sorted_by_dimension(std::vector<Record> records,
                                        std::size_t dim) {
  std::sort(records.begin(), records.end(),
            [dim](const Record& a, const Record& b) {
              if (a.qi[dim] != b.qi[dim]) return a.qi[dim] < b.qi[dim];
              return a.id < b.id;
            });
  return records;
}

namespace {

// Scaled perimeter weights: multiplying every h_p term by the product D of
// the non-degenerate domain widths turns perimeter comparisons into exact
// integer comparisons. Zero-width dimensions always contribute zero extent.
std::vector<Int> scaled_weights(const AttributeSchema& schema) {
  Int product = 1;
  for (std::size_t i = 0; i < schema.dim(); ++i) {
    if (schema.width(i) != 0) product *= schema.width(i);
  }
  std::vector<Int> w(schema.dim());
  for (std::size_t i = 0; i < schema.dim(); ++i)
    w[i] = schema.width(i) == 0 ? Int(0) : product / schema.width(i);
  return w;
}

struct Candidate {
  bool set = false;
  Int penalty;
  std::size_t dimension = 0;
  std::size_t left_size = 0;
};

}  // namespace

std::optional<SplitChoice> canonical_split(const std::vector<Record>& records,
                                           const AttributeSchema& schema,
                                           std::size_t min_side,
                                           bool prefer_large_left,
                                           const PenaltyMetric* metric) {
  const std::size_t n = records.size();
  if (min_side < 1 || n < 2 * min_side) return std::nullopt;
  const std::size_t d = schema.dim();

  if (metric != nullptr && metric->name != perimeter_metric().name) {
    // Pluggable metric path; materializes the sides, desk scale only.
    bool found = false;
    Rat best_penalty;
    std::size_t best_dim = 0, best_left = 0;
    for (std::size_t dim = 0; dim < d; ++dim) {
      std::vector<Record> order = sorted_by_dimension(records, dim);
      for (std::size_t k = min_side; k + min_side <= n; ++k) {
        QIGroup left(std::vector<Record>(order.begin(), order.begin() + k));
        QIGroup right(std::vector<Record>(order.begin() + k, order.end()));
        Rat penalty = metric->fn(left, schema) + metric->fn(right, schema);
        bool better =
            !found || penalty < best_penalty ||
            (penalty == best_penalty && dim == best_dim && prefer_large_left);
        if (better) {
          found = true;
          best_penalty = penalty;
          best_dim = dim;
          best_left = k;
        }
      }
    }
    if (!found) return std::nullopt;
    return SplitChoice{best_dim, best_left};
  }

  const std::vector<Int> weights = scaled_weights(schema);
  Candidate best;
  std::vector<std::int64_t> pref_lo(n * d), pref_hi(n * d);
  std::vector<std::int64_t> suf_lo(n * d), suf_hi(n * d);

  for (std::size_t dim = 0; dim < d; ++dim) {
    std::vector<Record> order = sorted_by_dimension(records, dim);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t v = order[i].qi[j];
        pref_lo[i * d + j] = i == 0 ? v : std::min(pref_lo[(i - 1) * d + j], v);
        pref_hi[i * d + j] = i == 0 ? v : std::max(pref_hi[(i - 1) * d + j], v);
      }
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t v = order[i].qi[j];
        suf_lo[i * d + j] = i + 1 == n ? v : std::min(suf_lo[(i + 1) * d + j], v);
        suf_hi[i * d + j] = i + 1 == n ? v : std::max(suf_hi[(i + 1) * d + j], v);
      }
    }
    for (std::size_t k = min_side; k + min_side <= n; ++k) {
      Int left_extent = 0, right_extent = 0;
      for (std::size_t j = 0; j < d; ++j) {
        left_extent +=
            Int(pref_hi[(k - 1) * d + j] - pref_lo[(k - 1) * d + j]) * weights[j];
        right_extent += Int(suf_hi[k * d + j] - suf_lo[k * d + j]) * weights[j];
      }
      Int penalty = Int(k) * left_extent + Int(n - k) * right_extent;
      bool better = !best.set || penalty < best.penalty ||
                    (penalty == best.penalty && dim == best.dimension &&
                     prefer_large_left);
      if (better) {
        best.set = true;
        best.penalty = std::move(penalty);
        best.dimension = dim;
        best.left_size = k;
      }
    }
  }
  if (!best.set) return std::nullopt;
  return SplitChoice{best.dimension, best.left_size};
}

}  // namespace detail

std::vector<LCut> enumerate_l_cuts(const QIGroup& g, int l,
                                   const AttributeSchema& schema) {
  std::vector<LCut> cuts;
  if (l < 1 || g.empty()) return cuts;
  const std::size_t min_side =
      static_cast<std::size_t>(l) * g.max_multiplicity();
  if (g.size() < 2 * min_side) return cuts;
  for (std::size_t dim = 0; dim < schema.dim(); ++dim) {
    std::vector<Record> order = detail::sorted_by_dimension(g.records(), dim);
    for (std::size_t k = min_side; k + min_side <= g.size(); ++k) {
      QIGroup left(std::vector<Record>(order.begin(), order.begin() + k));
      QIGroup right(std::vector<Record>(order.begin() + k, order.end()));
      Rat p = perimeter(left, schema) + perimeter(right, schema);
      cuts.push_back({std::move(left), std::move(right), dim, k, std::move(p)});
    }
  }
  return cuts;
}

std::optional<LCut> canonical_l_cut(const QIGroup& g, int l,
                                    const AttributeSchema& schema,
                                    const PenaltyMetric* metric) {
  if (l < 1 || g.empty()) return std::nullopt;
  const std::size_t min_side =
      static_cast<std::size_t>(l) * g.max_multiplicity();
  auto choice = detail::canonical_split(g.records(), schema, min_side,
                                        /*prefer_large_left=*/true, metric);
  if (!choice) return std::nullopt;
  std::vector<Record> order =
      detail::sorted_by_dimension(g.records(), choice->dimension);
  QIGroup left(
      std::vector<Record>(order.begin(), order.begin() + choice->left_size));
  QIGroup right(
      std::vector<Record>(order.begin() + choice->left_size, order.end()));
  Rat p = perimeter(left, schema) + perimeter(right, schema);
  return LCut{std::move(left), std::move(right), choice->dimension,
              choice->left_size, std::move(p)};
}

namespace {

// Shared FIFO refinement loop: splits any group satisfying `splittable` by
// its canonical split with the given side bound.
std::vector<QIGroup> refine_fifo(
    std::vector<Record> all, const AttributeSchema& schema,
    const std::function<bool(const QIGroup&)>& splittable,
    const std::function<std::size_t(const QIGroup&)>& min_side,
    const PenaltyMetric* metric) {
  std::deque<QIGroup> queue;
  std::vector<QIGroup> done;
  if (!all.empty()) queue.emplace_back(std::move(all));
  while (!queue.empty()) {
    QIGroup g = std::move(queue.front());
    queue.pop_front();
    if (!splittable(g)) {
      done.push_back(std::move(g));
      continue;
    }
    auto choice = detail::canonical_split(g.records(), schema, min_side(g),
                                          /*prefer_large_left=*/true, metric);
    if (!choice) throw std::logic_error("splittable group without a split");
    std::vector<Record> order =
        detail::sorted_by_dimension(g.records(), choice->dimension);
    queue.emplace_back(
        std::vector<Record>(order.begin(), order.begin() + choice->left_size));
    queue.emplace_back(
        std::vector<Record>(order.begin() + choice->left_size, order.end()));
  }
  return done;
}

}  // namespace

std::optional<TailorResult> tailor(const MicrodataTable& t, int l,
                                   AnonFunction fn) {
  if (l < 1) throw SchemaError("l must be positive");
  if (!is_l_eligible(t, l)) return std::nullopt;
  auto groups = refine_fifo(
      t.records(), t.schema(),
      [l](const QIGroup& g) { return is_l_diverse(g, 2 * l); },
      [l](const QIGroup& g) {
        return static_cast<std::size_t>(l) * g.max_multiplicity();
      },
      nullptr);
  Partition p(std::move(groups));
  AnonymizedTable table = anonymize(p, fn);
  return TailorResult{std::move(p), std::move(table)};
}

Partition k_anon_partition(const MicrodataTable& t, int k) {
  if (k < 1) throw SchemaError("k must be positive");
  if (t.size() < static_cast<std::size_t>(k))
    throw InfeasibleError("table smaller than k");
  auto groups = refine_fifo(
      t.records(), t.schema(),
      [k](const QIGroup& g) {
        return g.size() >= 2 * static_cast<std::size_t>(k);
      },
      [k](const QIGroup&) { return static_cast<std::size_t>(k); }, nullptr);
  return Partition(std::move(groups));
}

}  // namespace tldiv
