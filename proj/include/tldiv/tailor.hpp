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

#ifndef TLDIV_TAILOR_HPP_
#define TLDIV_TAILOR_HPP_

#include <optional>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"

namespace tldiv {

// An ordered two-way split of a QI-group. Both sides have at least l*c
// members (c = the parent's maximum sensitive multiplicity) and every left
// record precedes every right record in (value on dimension, id) order.
struct LCut {
  QIGroup left;
  QIGroup right;
  std::size_t dimension = 0;
  std::size_t split_size = 0;  // |left|
  Rat cut_perimeter;           // h_p(left) + h_p(right)
};

// All l-cuts of the group: d * (|G| + 1 - 2*l*c) of them, or none at all
// exactly when the group is not 2l-diverse.
std::vector<LCut> enumerate_l_cuts(const QIGroup& g, int l,
                                   const AttributeSchema& schema);

// The l-cut with the smallest perimeter; ties go to the smallest dimension
// index, then to the largest left side.
std::optional<LCut> canonical_l_cut(const QIGroup& g, int l,
                                    const AttributeSchema& schema,
                                    const PenaltyMetric* metric = nullptr);

struct TailorResult {
  Partition partition;
  AnonymizedTable table;
};

// Deterministic top-down anonymization: start from the whole table and keep
// replacing any 2l-diverse group by its canonical l-cut (FIFO order; the
// final partition does not depend on the order). Empty iff the table is not
// l-eligible.
std::optional<TailorResult> tailor(const MicrodataTable& t, int l,
                                   AnonFunction fn = AnonFunction::kMbr);

// Greedy k-anonymous partitioner built on the same split machinery, with the
// side constraint |G_a|, |G_b| >= k in place of l*c. Used by mask.
Partition k_anon_partition(const MicrodataTable& t, int k);

namespace detail {
// Canonical split of a record sequence: smallest penalty, then smallest
// dimension, then largest (prefer_large_left) or smallest left side.
struct SplitChoice {
  std::size_t dimension;
  std::size_t left_size;
};
std::optional<SplitChoice> canonical_split(const std::vector<Record>& records,
                                           const AttributeSchema& schema,
                                           std::size_t min_side,
                                           bool prefer_large_left,
                                           const PenaltyMetric* metric);
std::vector<Record> sorted_by_dimension(std::vector<Record> records,
                                        std::size_t dim);
}  // namespace detail

}  // namespace tldiv

#endif  // TLDIV_TAILOR_HPP_
