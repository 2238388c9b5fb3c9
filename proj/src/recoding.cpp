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

#include "tldiv/recoding.hpp"

#include <algorithm>
#include <cmath>

namespace tldiv {

std::int64_t Interval::overlap(const Interval& o) const {
  std::int64_t lo2 = std::max(lo, o.lo);
  std::int64_t hi2 = std::min(hi, o.hi);
  return hi2 < lo2 ? 0 : hi2 - lo2 + 1;
}

AnonymizedTable AnonymizedTable::generalization(std::vector<GenGroup> groups,
                                                bool has_boundaries) {
  AnonymizedTable t;
  t.function_ = AnonFunction::kMbr;
  t.has_boundaries_ = has_boundaries;
  for (auto& g : groups) std::sort(g.sensitive.begin(), g.sensitive.end());
  std::sort(groups.begin(), groups.end());
  t.gen_groups_ = std::move(groups);
  return t;
}

AnonymizedTable AnonymizedTable::anatomy(std::vector<AnatGroup> groups) {
  AnonymizedTable t;
  t.function_ = AnonFunction::kAnatomy;
  for (auto& g : groups) {
    if (g.qi_rows.size() != g.sensitive.size())
      throw SchemaError("anatomy group with mismatched QI/sensitive counts");
    std::sort(g.qi_rows.begin(), g.qi_rows.end());
    std::sort(g.sensitive.begin(), g.sensitive.end());
  }
  std::sort(groups.begin(), groups.end());
  t.anat_groups_ = std::move(groups);
  return t;
}

const std::vector<GenGroup>& AnonymizedTable::gen_groups() const {
  if (function_ != AnonFunction::kMbr)
    throw std::logic_error("not a generalization");
  return gen_groups_;
}

const std::vector<AnatGroup>& AnonymizedTable::anat_groups() const {
  if (function_ != AnonFunction::kAnatomy)
    throw std::logic_error("not an anatomy table");
  return anat_groups_;
}

std::size_t AnonymizedTable::group_count() const {
  return is_generalization() ? gen_groups_.size() : anat_groups_.size();
}

std::size_t AnonymizedTable::size() const {
  std::size_t n = 0;
  if (is_generalization())
    for (const auto& g : gen_groups_) n += g.size();
  else
    for (const auto& g : anat_groups_) n += g.size();
  return n;
}

std::vector<GeneralizedRow> AnonymizedTable::rows() const {
  std::vector<GeneralizedRow> out;
  for (const auto& g : gen_groups()) {
    for (const auto& v : g.sensitive) out.push_back({g.intervals, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> AnonymizedTable::sensitive_multiset() const {
  std::vector<std::string> out;
  if (is_generalization()) {
    for (const auto& g : gen_groups_)
      out.insert(out.end(), g.sensitive.begin(), g.sensitive.end());
  } else {
    for (const auto& g : anat_groups_)
      out.insert(out.end(), g.sensitive.begin(), g.sensitive.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool multiset_l_diverse(const std::vector<std::string>& sorted_values, int l) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < sorted_values.size();) {
    std::size_t j = i;
    while (j < sorted_values.size() && sorted_values[j] == sorted_values[i]) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return best * static_cast<std::size_t>(l) <= sorted_values.size();
}

}  // namespace

bool AnonymizedTable::l_diverse(int l) const {
  if (is_generalization()) {
    for (const auto& g : gen_groups_)
      if (!multiset_l_diverse(g.sensitive, l)) return false;
  } else {
    for (const auto& g : anat_groups_)
      if (!multiset_l_diverse(g.sensitive, l)) return false;
  }
  return true;
}

bool operator==(const AnonymizedTable& a, const AnonymizedTable& b) {
  if (a.function_ != b.function_) return false;
  if (a.function_ == AnonFunction::kAnatomy)
    return a.anat_groups_ == b.anat_groups_;
  if (a.has_boundaries_ && b.has_boundaries_)
    return a.gen_groups_ == b.gen_groups_;
  // One side lacks group structure: compare the row multisets.
  return a.rows() == b.rows();
}

bool operator<(const AnonymizedTable& a, const AnonymizedTable& b) {
  if (a.function_ != b.function_) return a.function_ < b.function_;
  if (a.function_ == AnonFunction::kAnatomy)
    return a.anat_groups_ < b.anat_groups_;
  return a.gen_groups_ < b.gen_groups_;
}

Interval mbr_interval(const QIGroup& g, std::size_t dim) {
  std::int64_t lo = g.records().front().qi[dim];
  std::int64_t hi = lo;
  for (const auto& r : g.records()) {
    lo = std::min(lo, r.qi[dim]);
    hi = std::max(hi, r.qi[dim]);
  }
  return {lo, hi};
}

GenGroup mbr_group(const QIGroup& g) {
  if (g.empty()) throw SchemaError("cannot generalize an empty group");
  GenGroup out;
  const std::size_t d = g.records().front().qi.size();
  out.intervals.reserve(d);
  for (std::size_t i = 0; i < d; ++i) out.intervals.push_back(mbr_interval(g, i));
  for (const auto& r : g.records()) out.sensitive.push_back(r.sensitive);
  std::sort(out.sensitive.begin(), out.sensitive.end());
  return out;
}

std::vector<GeneralizedRow> mbr_generalize(const QIGroup& g) {
  GenGroup grp = mbr_group(g);
  std::vector<GeneralizedRow> rows;
  rows.reserve(grp.size());
  for (const auto& v : grp.sensitive) rows.push_back({grp.intervals, v});
  return rows;
}

AnatGroup anatomize(const QIGroup& g) {
  if (g.empty()) throw SchemaError("cannot anatomize an empty group");
  AnatGroup out;
  for (const auto& r : g.records()) {
    out.qi_rows.push_back(r.qi);
    out.sensitive.push_back(r.sensitive);
  }
  std::sort(out.qi_rows.begin(), out.qi_rows.end());
  std::sort(out.sensitive.begin(), out.sensitive.end());
  return out;
}

AnonymizedTable anonymize(const Partition& p, AnonFunction fn) {
  if (fn == AnonFunction::kMbr) {
    std::vector<GenGroup> gs;
    gs.reserve(p.size());
    for (const auto& g : p.groups()) gs.push_back(mbr_group(g));
    return AnonymizedTable::generalization(std::move(gs));
  }
  std::vector<AnatGroup> gs;
  gs.reserve(p.size());
  for (const auto& g : p.groups()) gs.push_back(anatomize(g));
  return AnonymizedTable::anatomy(std::move(gs));
}

Rat perimeter(const QIGroup& g, const AttributeSchema& schema) {
  if (g.empty()) return Rat(0);
  Rat sum = 0;
  for (std::size_t i = 0; i < schema.dim(); ++i) {
    Interval iv = mbr_interval(g, i);
    std::int64_t extent = iv.hi - iv.lo;
    std::int64_t width = schema.width(i);
    if (width == 0) {
      if (extent != 0)
        throw SchemaError("positive extent on zero-width domain of " +
                          schema.qi[i].name);
      continue;
    }
    sum += Rat(extent, width);
  }
  return Rat(g.size()) * sum;
}

Rat perimeter(const Partition& p, const AttributeSchema& schema) {
  Rat sum = 0;
  for (const auto& g : p.groups()) sum += perimeter(g, schema);
  return sum;
}

const PenaltyMetric& perimeter_metric() {
  static const PenaltyMetric m{
      "perimeter",
      [](const QIGroup& g, const AttributeSchema& s) { return perimeter(g, s); }};
  return m;
}

const PenaltyMetric& discernability_metric() {
  static const PenaltyMetric m{
      "discernability", [](const QIGroup& g, const AttributeSchema&) {
        return Rat(g.size()) * Rat(g.size());
      }};
  return m;
}

std::uint64_t discernability(const Partition& p) {
  std::uint64_t sum = 0;
  for (const auto& g : p.groups())
    sum += static_cast<std::uint64_t>(g.size()) * g.size();
  return sum;
}

double correlation_ratio(const MicrodataTable& t, std::size_t qi_attr) {
  if (t.size() == 0) throw SchemaError("correlation ratio of an empty table");
  double mean = 0;
  for (const auto& r : t.records()) mean += static_cast<double>(r.qi[qi_attr]);
  mean /= static_cast<double>(t.size());

  double total = 0;
  std::map<std::string, std::pair<double, std::size_t>> groups;  // sum, count
  for (const auto& r : t.records()) {
    double x = static_cast<double>(r.qi[qi_attr]);
    total += (x - mean) * (x - mean);
    auto& [sum, count] = groups[r.sensitive];
    sum += x;
    ++count;
  }
  if (total == 0) return 0.0;

  double between = 0;
  for (const auto& [v, sc] : groups) {
    double gmean = sc.first / static_cast<double>(sc.second);
    between += static_cast<double>(sc.second) * (gmean - mean) * (gmean - mean);
  }
  return std::sqrt(between / total);
}

}  // namespace tldiv
