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

#ifndef TLDIV_MODEL_HPP_
#define TLDIV_MODEL_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tldiv/numeric.hpp"

namespace tldiv {

class SchemaError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class LimitError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class InfeasibleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class ConsistencyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Desk-scale bounds for the exhaustive engines. Exceeding one raises
// LimitError; nothing is ever silently truncated.
struct EnumLimits {
  std::size_t max_partition_table = 12;     // global-recoding partition search
  std::size_t max_published = 8;            // possible-instance enumeration
  std::uint64_t max_instances = 1u << 21;   // enumerated instances cap
  std::uint64_t max_support = 1u << 20;     // randomized-trace support cap
};

struct QiAttribute {
  std::string name;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Schema of a microdata table: one identifier, d integer-coded QI attributes
// with closed domains, one categorical sensitive attribute with a totally
// ordered (lexicographic) value universe.
struct AttributeSchema {
  std::string id_name;
  std::vector<QiAttribute> qi;
  std::string sensitive_name;
  std::vector<std::string> sensitive_values;  // sorted, unique, non-empty

  std::size_t dim() const { return qi.size(); }
  // Domain width |max - min|; the normalization denominator of the perimeter.
  std::int64_t width(std::size_t i) const { return qi[i].hi - qi[i].lo; }
  int value_index(const std::string& v) const;  // -1 if absent
  void validate() const;
};

struct Record {
  std::string id;
  std::vector<std::int64_t> qi;
  std::string sensitive;

  friend bool operator==(const Record&, const Record&) = default;
};

bool record_id_less(const Record& a, const Record& b);

// Non-empty set of records, kept sorted by identifier.
class QIGroup {
 public:
  QIGroup() = default;
  explicit QIGroup(std::vector<Record> records);

  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::vector<std::string> ids() const;
  // Sensitive value -> multiplicity.
  std::map<std::string, std::size_t> sensitive_counts() const;
  std::size_t max_multiplicity() const;

  friend bool operator==(const QIGroup&, const QIGroup&) = default;

 private:
  std::vector<Record> records_;
};

// Disjoint QI-groups; whether the union equals a particular table is checked
// against that table, not at construction.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<QIGroup> groups);

  const std::vector<QIGroup>& groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }
  std::size_t record_count() const;

 private:
  std::vector<QIGroup> groups_;
};

class MicrodataTable {
 public:
  MicrodataTable() = default;
  MicrodataTable(AttributeSchema schema, std::vector<Record> records);

  const AttributeSchema& schema() const { return schema_; }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  QIGroup as_group() const;
  std::map<std::string, std::size_t> sensitive_counts() const;

  friend bool operator==(const MicrodataTable&, const MicrodataTable&) = default;

 private:
  AttributeSchema schema_;
  std::vector<Record> records_;
};

// QI-group organized into equal-size per-sensitive-value columns. The key set
// of columns() is the signature.
class Bucket {
 public:
  Bucket() = default;
  explicit Bucket(std::map<std::string, std::vector<Record>> columns);

  const std::map<std::string, std::vector<Record>>& columns() const {
    return columns_;
  }
  std::vector<std::string> signature() const;
  std::size_t column_count() const { return columns_.size(); }
  std::size_t column_size() const;  // tuples per column
  std::size_t size() const;
  QIGroup as_group() const;

  static Bucket from_group(const QIGroup& g);  // throws if columns are unequal

  friend bool operator==(const Bucket&, const Bucket&) = default;

 private:
  std::map<std::string, std::vector<Record>> columns_;
};

struct BucketPartition {
  std::vector<Bucket> buckets;

  std::size_t record_count() const;
  Partition as_partition() const;
};

// The adversary's side information: identifier + QI values for a superset of
// the microdata's individuals.
struct ExternalSource {
  std::string id_name;
  std::vector<QiAttribute> qi;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> entries;

  void validate() const;
  static ExternalSource projection_of(const MicrodataTable& t);
};

// --- structural predicates -------------------------------------------------

// At most |G|/l members share a sensitive value (exact integer comparison).
bool is_l_diverse(const QIGroup& g, int l);
bool is_l_diverse(const Partition& p, int l);
// The whole table, treated as one QI-group, is l-diverse.
bool is_l_eligible(const MicrodataTable& t, int l);

// Same (id, qi) pairs and the same multiset of sensitive values.
bool are_isomorphic(const QIGroup& a, const QIGroup& b);
bool are_isomorphic_partitions(const Partition& a, const Partition& b);

// Same signature, and columns match pairwise on exact (id, qi) sets.
bool are_symmetric(const Bucket& a, const Bucket& b);
bool are_symmetric_partitions(const BucketPartition& a,
                              const BucketPartition& b);

// |G|! / prod(b_i!) over the sensitive multiplicities b_i: the number of
// distinct groups isomorphic to g.
Int count_isomorphic_groups(const QIGroup& g);

// x! over the column count x: the number of distinct buckets symmetric to b.
Int count_symmetric_buckets(const Bucket& b);

}  // namespace tldiv

#endif  // TLDIV_MODEL_HPP_
