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

#include "tldiv/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace tldiv {

int AttributeSchema::value_index(const std::string& v) const {
  auto it = std::lower_bound(sensitive_values.begin(), sensitive_values.end(), v);
  if (it == sensitive_values.end() || *it != v) return -1;
  return static_cast<int>(it - sensitive_values.begin());
}

void AttributeSchema::validate() const {
  if (qi.empty()) throw SchemaError("schema needs at least one QI attribute");
  for (const auto& a : qi) {
    if (a.lo > a.hi)
      throw SchemaError("QI attribute '" + a.name + "' has lo > hi");
  }
  if (sensitive_values.empty())
    throw SchemaError("sensitive value universe is empty");
  if (!std::is_sorted(sensitive_values.begin(), sensitive_values.end()))
    throw SchemaError("sensitive value universe is not sorted");
  if (std::adjacent_find(sensitive_values.begin(), sensitive_values.end()) !=
      sensitive_values.end())
    throw SchemaError("sensitive value universe has duplicates");
}

bool record_id_less(const Record& a, const Record& b) { return a.id < b.id; }

QIGroup::QIGroup(std::vector<Record> records) : records_(std::move(records)) {
  if (records_.empty()) throw SchemaError("QI-group must be non-empty");
  std::sort(records_.begin(), records_.end(), record_id_less);
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].id == records_[i - 1].id)
      throw SchemaError("duplicate identifier in QI-group: " + records_[i].id);
  }
}

std::vector<std::string> QIGroup::ids() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.id);
  return out;
}

std::map<std::string, std::size_t> QIGroup::sensitive_counts() const {
  std::map<std::string, std::size_t> c;
  for (const auto& r : records_) ++c[r.sensitive];
  return c;
}

std::size_t QIGroup::max_multiplicity() const {
  std::size_t m = 0;
  for (const auto& [v, n] : sensitive_counts()) m = std::max(m, n);
  return m;
}

Partition::Partition(std::vector<QIGroup> groups) : groups_(std::move(groups)) {
  std::unordered_set<std::string> seen;
  for (const auto& g : groups_) {
    for (const auto& r : g.records()) {
      if (!seen.insert(r.id).second)
        throw SchemaError("partition groups are not disjoint: " + r.id);
    }
  }
}

std::size_t Partition::record_count() const {
  std::size_t n = 0;
  for (const auto& g : groups_) n += g.size();
  return n;
}

MicrodataTable::MicrodataTable(AttributeSchema schema,
                               std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  schema_.validate();
  std::sort(records_.begin(), records_.end(), record_id_less);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (i > 0 && r.id == records_[i - 1].id)
      throw SchemaError("duplicate identifier: " + r.id);
    if (r.qi.size() != schema_.dim())
      throw SchemaError("record " + r.id + " has wrong QI arity");
    for (std::size_t j = 0; j < schema_.dim(); ++j) {
      if (r.qi[j] < schema_.qi[j].lo || r.qi[j] > schema_.qi[j].hi)
        throw SchemaError("record " + r.id + " violates the domain of " +
                          schema_.qi[j].name);
    }
    if (schema_.value_index(r.sensitive) < 0)
      throw SchemaError("record " + r.id + " has sensitive value '" +
                        r.sensitive + "' outside the declared universe");
  }
}

QIGroup MicrodataTable::as_group() const { return QIGroup(records_); }

std::map<std::string, std::size_t> MicrodataTable::sensitive_counts() const {
  std::map<std::string, std::size_t> c;
  for (const auto& r : records_) ++c[r.sensitive];
  return c;
}

Bucket::Bucket(std::map<std::string, std::vector<Record>> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw SchemaError("bucket must have a column");
  std::size_t sz = columns_.begin()->second.size();
  for (auto& [value, col] : columns_) {
    if (col.empty()) throw SchemaError("bucket column is empty");
    if (col.size() != sz)
      throw SchemaError("bucket columns have unequal sizes");
    for (const auto& r : col) {
      if (r.sensitive != value)
        throw SchemaError("record " + r.id + " is in the wrong column");
    }
    std::sort(col.begin(), col.end(), record_id_less);
  }
}

std::vector<std::string> Bucket::signature() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& [v, col] : columns_) out.push_back(v);
  return out;
}

std::size_t Bucket::column_size() const {
  return columns_.begin()->second.size();
}

std::size_t Bucket::size() const { return column_count() * column_size(); }

QIGroup Bucket::as_group() const {
  std::vector<Record> all;
  for (const auto& [v, col] : columns_)
    all.insert(all.end(), col.begin(), col.end());
  return QIGroup(std::move(all));
}

Bucket Bucket::from_group(const QIGroup& g) {
  std::map<std::string, std::vector<Record>> cols;
  for (const auto& r : g.records()) cols[r.sensitive].push_back(r);
  return Bucket(std::move(cols));
}

std::size_t BucketPartition::record_count() const {
  std::size_t n = 0;
  for (const auto& b : buckets) n += b.size();
  return n;
}

Partition BucketPartition::as_partition() const {
  std::vector<QIGroup> gs;
  gs.reserve(buckets.size());
  for (const auto& b : buckets) gs.push_back(b.as_group());
  return Partition(std::move(gs));
}

void ExternalSource::validate() const {
  std::unordered_set<std::string> seen;
  for (const auto& [id, v] : entries) {
    if (!seen.insert(id).second)
      throw SchemaError("duplicate identifier in external source: " + id);
    if (v.size() != qi.size())
      throw SchemaError("external entry " + id + " has wrong QI arity");
  }
}

ExternalSource ExternalSource::projection_of(const MicrodataTable& t) {
  ExternalSource e;
  e.id_name = t.schema().id_name;
  e.qi = t.schema().qi;
  for (const auto& r : t.records()) e.entries.emplace_back(r.id, r.qi);
  return e;
}

bool is_l_diverse(const QIGroup& g, int l) {
  if (l < 1) throw SchemaError("l must be positive");
  // max multiplicity <= |G|/l, compared exactly as l * mult <= |G|.
  return g.max_multiplicity() * static_cast<std::size_t>(l) <= g.size();
}

bool is_l_diverse(const Partition& p, int l) {
  for (const auto& g : p.groups())
    if (!is_l_diverse(g, l)) return false;
  return true;
}

bool is_l_eligible(const MicrodataTable& t, int l) {
  if (l < 1) throw SchemaError("l must be positive");
  if (t.size() == 0) return true;
  return is_l_diverse(t.as_group(), l);
}

namespace {

std::vector<std::pair<std::string, std::vector<std::int64_t>>> id_qi_pairs(
    const QIGroup& g) {
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> out;
  out.reserve(g.size());
  for (const auto& r : g.records()) out.emplace_back(r.id, r.qi);
  return out;
}

std::multiset<std::string> sensitive_multiset(const QIGroup& g) {
  std::multiset<std::string> out;
  for (const auto& r : g.records()) out.insert(r.sensitive);
  return out;
}

}  // namespace

bool are_isomorphic(const QIGroup& a, const QIGroup& b) {
  return id_qi_pairs(a) == id_qi_pairs(b) &&
         sensitive_multiset(a) == sensitive_multiset(b);
}

bool are_isomorphic_partitions(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  // Groups are id-disjoint, so matching greedily by id set is exact.
  std::map<std::vector<std::string>, const QIGroup*> by_ids;
  for (const auto& g : b.groups()) by_ids[g.ids()] = &g;
  for (const auto& g : a.groups()) {
    auto it = by_ids.find(g.ids());
    if (it == by_ids.end() || !are_isomorphic(g, *it->second)) return false;
  }
  return true;
}

bool are_symmetric(const Bucket& a, const Bucket& b) {
  if (a.signature() != b.signature()) return false;
  if (a.column_size() != b.column_size()) return false;
  // Column id/qi sets of one side must be exactly the columns of the other.
  std::multiset<std::vector<std::pair<std::string, std::vector<std::int64_t>>>>
      cols_a, cols_b;
  for (const auto& [v, col] : a.columns()) {
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> c;
    for (const auto& r : col) c.emplace_back(r.id, r.qi);
    cols_a.insert(std::move(c));
  }
  for (const auto& [v, col] : b.columns()) {
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> c;
    for (const auto& r : col) c.emplace_back(r.id, r.qi);
    cols_b.insert(std::move(c));
  }
  return cols_a == cols_b;
}

bool are_symmetric_partitions(const BucketPartition& a,
                              const BucketPartition& b) {
  if (a.buckets.size() != b.buckets.size()) return false;
  std::map<std::vector<std::string>, const Bucket*> by_ids;
  for (const auto& bk : b.buckets) by_ids[bk.as_group().ids()] = &bk;
  for (const auto& bk : a.buckets) {
    auto it = by_ids.find(bk.as_group().ids());
    if (it == by_ids.end() || !are_symmetric(bk, *it->second)) return false;
  }
  return true;
}

Int count_isomorphic_groups(const QIGroup& g) {
  Int r = factorial(g.size());
  for (const auto& [v, n] : g.sensitive_counts()) r /= factorial(n);
  return r;
}

Int count_symmetric_buckets(const Bucket& b) {
  return factorial(b.column_count());
}

}  // namespace tldiv
