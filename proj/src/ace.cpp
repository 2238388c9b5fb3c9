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

#include "tldiv/ace.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tldiv/tailor.hpp"

namespace tldiv {

namespace {

// Residue values ordered by descending count, ties by ascending value.
std::vector<std::pair<std::string, std::uint64_t>> ranked_counts(
    const std::map<std::string, std::uint64_t>& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> v;
  for (const auto& [value, n] : counts)
    if (n > 0) v.emplace_back(value, n);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return v;
}

Int support_size(const std::map<std::string, std::uint64_t>& counts,
                 const AssignSkeleton& skeleton) {
  Int m = 1;
  for (const auto& [v, n] : counts) m *= factorial(n);
  for (const auto& s : skeleton)
    for (std::size_t j = 0; j < s.signature.size(); ++j)
      m /= factorial(s.column_size);
  return m;
}

}  // namespace

AssignParams assign_params(const std::map<std::string, std::uint64_t>& counts,
                           int l) {
  if (l < 1) throw SchemaError("l must be positive");
  const auto ranked = ranked_counts(counts);
  const std::uint64_t w = ranked.size();
  std::uint64_t total = 0;
  for (const auto& [v, n] : ranked) total += n;
  if (total == 0) throw std::logic_error("assign_params on an empty residue");

  auto count_at = [&](std::uint64_t i) {  // 1-based; 0 past the last value
    return i <= w ? ranked[i - 1].second : 0;
  };
  const std::uint64_t ul = static_cast<std::uint64_t>(l);

  for (std::uint64_t beta = ul; beta <= w; ++beta) {
    const std::uint64_t n1 = count_at(1);
    const std::uint64_t nb = count_at(beta);
    const std::uint64_t nb1 = count_at(beta + 1);
    // Largest alpha with: alpha <= n_beta,
    // n_1 - alpha <= (total - alpha*beta)/l, and
    // n_{beta+1} <= (total - alpha*beta)/l (compared exactly, cross-multiplied).
    for (std::uint64_t alpha = nb; alpha >= 1; --alpha) {
      if (alpha * beta > total) continue;
      const std::uint64_t slack = total - alpha * beta;
      if (n1 > alpha && (n1 - alpha) * ul > slack) continue;
      if (nb1 * ul > slack) continue;
      AssignParams p;
      p.column_size = alpha;
      p.signature_size = beta;
      for (std::uint64_t i = 0; i < beta; ++i)
        p.signature.push_back(ranked[i].first);
      return p;
    }
  }
  throw std::logic_error("assign_params: residue is not l-eligible");
}

AssignSkeleton assign_skeleton(std::map<std::string, std::uint64_t> counts,
                               int l) {
  for (auto it = counts.begin(); it != counts.end();)
    it = it->second == 0 ? counts.erase(it) : std::next(it);
  AssignSkeleton steps;
  std::size_t iteration = 0;
  while (!counts.empty()) {
    AssignParams p = assign_params(counts, l);
    AssignStep step;
    step.iteration = iteration++;
    step.column_size = p.column_size;
    step.signature_size = p.signature_size;
    step.signature = p.signature;
    step.remaining_counts = counts;
    for (const auto& v : p.signature) {
      counts[v] -= p.column_size;
      if (counts[v] == 0) counts.erase(v);
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

BucketPartition assign(const MicrodataTable& t, int l, Rng& rng) {
  if (!is_l_eligible(t, l))
    throw std::logic_error("assign requires an l-eligible table");
  std::map<std::string, std::vector<Record>> pools;
  for (const auto& r : t.records()) pools[r.sensitive].push_back(r);

  BucketPartition out;
  while (!pools.empty()) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& [v, pool] : pools) counts[v] = pool.size();
    AssignParams p = assign_params(counts, l);
    std::map<std::string, std::vector<Record>> columns;
    for (const auto& v : p.signature) {
      auto& pool = pools[v];
      std::sort(pool.begin(), pool.end(), record_id_less);
      columns[v] = rng.sample(pool, p.column_size);
      if (pool.empty()) pools.erase(v);
    }
    out.buckets.emplace_back(std::move(columns));
  }
  return out;
}

Rat assign_probability(const MicrodataTable& t, int l,
                       const BucketPartition& u) {
  // The partition must consist of exactly the table's records.
  std::vector<Record> from_u;
  for (const auto& b : u.buckets)
    for (const auto& [v, col] : b.columns())
      from_u.insert(from_u.end(), col.begin(), col.end());
  std::sort(from_u.begin(), from_u.end(), record_id_less);
  if (from_u.size() != t.size()) return Rat(0);
  for (std::size_t i = 0; i < from_u.size(); ++i)
    if (!(from_u[i] == t.records()[i])) return Rat(0);
  if (t.size() == 0) return Rat(1);
  if (!is_l_eligible(t, l)) return Rat(0);

  // Bucket shapes must realize the skeleton (sizes, signatures, step order;
  // the skeleton is a function of the multiset alone, so matching shapes as a
  // multiset pins the step sequence).
  std::map<std::string, std::uint64_t> counts;
  for (const auto& [v, n] : t.sensitive_counts()) counts[v] = n;
  AssignSkeleton skeleton = assign_skeleton(counts, l);
  if (skeleton.size() != u.buckets.size()) return Rat(0);

  std::multiset<std::pair<std::vector<std::string>, std::uint64_t>> expected,
      actual;
  for (const auto& s : skeleton) expected.insert({s.signature, s.column_size});
  for (const auto& b : u.buckets)
    actual.insert({b.signature(), b.column_size()});
  if (expected != actual) return Rat(0);

  return Rat(1) / Rat(support_size(counts, skeleton));
}

std::vector<Division> enumerate_divisions(const Bucket& b,
                                          const AttributeSchema& schema) {
  std::vector<Division> out;
  const std::size_t single = b.column_size();
  if (single < 2) return out;
  for (std::size_t dim = 0; dim < schema.dim(); ++dim) {
    std::map<std::string, std::vector<Record>> sorted_cols;
    for (const auto& [v, col] : b.columns())
      sorted_cols[v] = detail::sorted_by_dimension(col, dim);
    for (std::size_t k = 1; k < single; ++k) {
      std::map<std::string, std::vector<Record>> left, right;
      for (const auto& [v, col] : sorted_cols) {
        left[v].assign(col.begin(), col.begin() + k);
        right[v].assign(col.begin() + k, col.end());
      }
      out.push_back(
          {Bucket(std::move(left)), Bucket(std::move(right)), dim, k});
    }
  }
  return out;
}

std::optional<Division> canonical_division(const Bucket& b,
                                           const AttributeSchema& schema) {
  std::vector<Division> all = enumerate_divisions(b, schema);
  if (all.empty()) return std::nullopt;
  // Smallest perimeter; ties by smallest dimension, then smallest left
  // bucket. Candidates arrive ordered by (dimension, size), so only strict
  // improvement replaces.
  std::size_t best = 0;
  Rat best_perimeter = perimeter(all[0].left.as_group(), schema) +
                       perimeter(all[0].right.as_group(), schema);
  for (std::size_t i = 1; i < all.size(); ++i) {
    Rat p = perimeter(all[i].left.as_group(), schema) +
            perimeter(all[i].right.as_group(), schema);
    if (p < best_perimeter) {
      best = i;
      best_perimeter = std::move(p);
    }
  }
  return std::move(all[best]);
}

BucketPartition slice(const BucketPartition& u,
                      const AttributeSchema& schema) {
  std::deque<Bucket> queue(u.buckets.begin(), u.buckets.end());
  BucketPartition out;
  while (!queue.empty()) {
    Bucket b = std::move(queue.front());
    queue.pop_front();
    if (b.column_size() < 2) {
      out.buckets.push_back(std::move(b));
      continue;
    }
    auto division = canonical_division(b, schema);
    if (!division) throw std::logic_error("divisible bucket without division");
    queue.push_back(std::move(division->left));
    queue.push_back(std::move(division->right));
  }
  return out;
}

std::optional<AnonymizedTable> ace(const MicrodataTable& t, int l, Rng& rng,
                                   AnonFunction fn) {
  if (l < 1) throw SchemaError("l must be positive");
  if (!is_l_eligible(t, l)) return std::nullopt;
  if (t.size() == 0) return anonymize(Partition(), fn);
  BucketPartition u = assign(t, l, rng);
  BucketPartition refined = slice(u, t.schema());
  return anonymize(refined.as_partition(), fn);
}

namespace {

// Visits all k-subsets of pool in lexicographic order; fn receives the chosen
// records and the remaining pool.
void for_each_combination(
    const std::vector<Record>& pool, std::size_t k,
    const std::function<void(std::vector<Record>, std::vector<Record>)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<Record> chosen, rest;
    for (std::size_t j = 0, c = 0; j < pool.size(); ++j) {
      if (c < k && idx[c] == j) {
        chosen.push_back(pool[j]);
        ++c;
      } else {
        rest.push_back(pool[j]);
      }
    }
    fn(std::move(chosen), std::move(rest));

    std::size_t j = k;
    bool advanced = false;
    while (j-- > 0) {
      if (idx[j] < pool.size() - (k - j)) {
        ++idx[j];
        for (std::size_t t = j + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

struct SupportEnumerator {
  const AssignSkeleton& skeleton;
  std::uint64_t max_outcomes;
  Rat probability;
  std::vector<AceOutcome>& out;

  void step(std::size_t i, std::map<std::string, std::vector<Record>>& pools,
            std::vector<Bucket>& prefix) {
    if (i == skeleton.size()) {
      if (out.size() >= max_outcomes)
        throw LimitError("assign support exceeds the enumeration limit");
      out.push_back({BucketPartition{prefix}, probability});
      return;
    }
    std::map<std::string, std::vector<Record>> columns;
    pick_value(i, 0, pools, columns, prefix);
  }

  void pick_value(std::size_t i, std::size_t vi,
                  std::map<std::string, std::vector<Record>>& pools,
                  std::map<std::string, std::vector<Record>>& columns,
                  std::vector<Bucket>& prefix) {
    const AssignStep& s = skeleton[i];
    if (vi == s.signature.size()) {
      prefix.emplace_back(columns);
      step(i + 1, pools, prefix);
      prefix.pop_back();
      return;
    }
    const std::string& value = s.signature[vi];
    std::vector<Record> pool = pools[value];
    for_each_combination(
        pool, s.column_size,
        [&](std::vector<Record> chosen, std::vector<Record> rest) {
          columns[value] = std::move(chosen);
          pools[value] = std::move(rest);
          pick_value(i, vi + 1, pools, columns, prefix);
        });
    pools[value] = std::move(pool);
    columns.erase(value);
  }
};

}  // namespace

std::vector<AceOutcome> enumerate_assign_support(const MicrodataTable& t,
                                                 int l,
                                                 std::uint64_t max_outcomes) {
  if (!is_l_eligible(t, l))
    throw std::logic_error("support of assign on an ineligible table");
  std::vector<AceOutcome> out;
  if (t.size() == 0) return out;

  std::map<std::string, std::uint64_t> counts;
  for (const auto& [v, n] : t.sensitive_counts()) counts[v] = n;
  AssignSkeleton skeleton = assign_skeleton(counts, l);
  Int m = support_size(counts, skeleton);
  if (m > Int(max_outcomes))
    throw LimitError("assign support exceeds the enumeration limit");

  std::map<std::string, std::vector<Record>> pools;
  for (const auto& r : t.records()) pools[r.sensitive].push_back(r);
  for (auto& [v, pool] : pools)
    std::sort(pool.begin(), pool.end(), record_id_less);

  std::vector<Bucket> prefix;
  SupportEnumerator e{skeleton, max_outcomes, Rat(1) / Rat(m), out};
  e.step(0, pools, prefix);
  return out;
}

}  // namespace tldiv
