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

#ifndef TLDIV_RECODING_HPP_
#define TLDIV_RECODING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/numeric.hpp"

namespace tldiv {

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t points() const { return hi - lo + 1; }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  // Number of shared integer points.
  std::int64_t overlap(const Interval& o) const;
  bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

struct GeneralizedRow {
  std::vector<Interval> intervals;
  std::string sensitive;

  friend auto operator<=>(const GeneralizedRow&, const GeneralizedRow&) = default;
};

// One output QI-group of a generalization: shared intervals plus the group's
// sensitive multiset (kept sorted).
struct GenGroup {
  std::vector<Interval> intervals;
  std::vector<std::string> sensitive;

  std::size_t size() const { return sensitive.size(); }
  friend auto operator<=>(const GenGroup&, const GenGroup&) = default;
};

// One output group of an anatomy pair: exact QI vectors and the sensitive
// multiset, linked only by the (implicit) group id.
struct AnatGroup {
  std::vector<std::vector<std::int64_t>> qi_rows;  // sorted
  std::vector<std::string> sensitive;              // sorted

  std::size_t size() const { return sensitive.size(); }
  friend auto operator<=>(const AnatGroup&, const AnatGroup&) = default;
};

enum class AnonFunction { kMbr, kAnatomy };

// A published table. Groups are kept in canonical order (sorted), so equality
// of two AnonymizedTables is canonical. Generalizations loaded from files
// without group ids carry no boundaries; comparing against such a table falls
// back to row-multiset equality.
class AnonymizedTable {
 public:
  AnonymizedTable() = default;

  static AnonymizedTable generalization(std::vector<GenGroup> groups,
                                        bool has_boundaries = true);
  static AnonymizedTable anatomy(std::vector<AnatGroup> groups);

  AnonFunction function() const { return function_; }
  bool has_boundaries() const { return has_boundaries_; }
  bool is_generalization() const { return function_ == AnonFunction::kMbr; }

  const std::vector<GenGroup>& gen_groups() const;
  const std::vector<AnatGroup>& anat_groups() const;
  std::size_t group_count() const;
  std::size_t size() const;  // number of anonymized records

  std::vector<GeneralizedRow> rows() const;  // generalization only, sorted
  std::vector<std::string> sensitive_multiset() const;  // sorted
  bool l_diverse(int l) const;

  friend bool operator==(const AnonymizedTable& a, const AnonymizedTable& b);
  friend bool operator<(const AnonymizedTable& a, const AnonymizedTable& b);

 private:
  AnonFunction function_ = AnonFunction::kMbr;
  bool has_boundaries_ = true;
  std::vector<GenGroup> gen_groups_;
  std::vector<AnatGroup> anat_groups_;
};

// Tightest per-attribute intervals over the group; sensitive values pass
// through as a multiset, so isomorphic groups map to the same output.
std::vector<GeneralizedRow> mbr_generalize(const QIGroup& g);
GenGroup mbr_group(const QIGroup& g);
Interval mbr_interval(const QIGroup& g, std::size_t dim);

AnatGroup anatomize(const QIGroup& g);

AnonymizedTable anonymize(const Partition& p, AnonFunction fn);

// Penalty metric h: sensitive-blind and superadditive. Cut selection in
// tailor/ace takes one of these; the perimeter function is the default.
struct PenaltyMetric {
  std::string name;
  std::function<Rat(const QIGroup&, const AttributeSchema&)> fn;
};
const PenaltyMetric& perimeter_metric();
const PenaltyMetric& discernability_metric();

// |G| * sum_i extent_i / domain_width_i. A zero-width domain with zero extent
// contributes 0; zero width with positive extent is a schema violation.
Rat perimeter(const QIGroup& g, const AttributeSchema& schema);
Rat perimeter(const Partition& p, const AttributeSchema& schema);

std::uint64_t discernability(const Partition& p);

// Correlation ratio eta of a QI attribute grouped by the sensitive attribute:
// sqrt(between-group variance / total variance); 0 when total variance is 0.
double correlation_ratio(const MicrodataTable& t, std::size_t qi_attr);

}  // namespace tldiv

#endif  // TLDIV_RECODING_HPP_
