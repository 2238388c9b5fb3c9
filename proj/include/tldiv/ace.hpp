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

#ifndef TLDIV_ACE_HPP_
#define TLDIV_ACE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"
#include "tldiv/rng.hpp"

namespace tldiv {

// Parameters of one Assign iteration. The signature holds the most frequent
// values of the residue (ties broken by ascending value); every column of the
// new bucket receives column_size tuples.
struct AssignParams {
  std::uint64_t column_size = 0;     // tuples per signature value
  std::uint64_t signature_size = 0;  // number of signature values
  std::vector<std::string> signature;
};

struct AssignStep {
  std::size_t iteration = 0;
  std::uint64_t column_size = 0;
  std::uint64_t signature_size = 0;
  std::vector<std::string> signature;
  std::map<std::string, std::uint64_t> remaining_counts;  // before this step
};

// The deterministic part of Assign: fully determined by the sensitive-value
// multiset and l; the only randomness left is which tuples fill each column.
using AssignSkeleton = std::vector<AssignStep>;

// Largest column size and smallest signature size admitted by the residue
// counts. Throws std::logic_error if the residue is not l-eligible.
AssignParams assign_params(const std::map<std::string, std::uint64_t>& counts,
                           int l);

AssignSkeleton assign_skeleton(std::map<std::string, std::uint64_t> counts,
                               int l);

// Randomized l-diverse bucket partition. Each signature value's tuples are a
// Fisher-Yates draw over that value's residue sorted by id, so the seed fully
// determines the run.
BucketPartition assign(const MicrodataTable& t, int l, Rng& rng);

// 1/m for partitions in the support of assign(t, l), 0 otherwise, with
// m = prod_j(n_j!) / prod_i prod_j(d_ij!).
Rat assign_probability(const MicrodataTable& t, int l,
                       const BucketPartition& u);

// An ordered bucket split: the left bucket takes the same number of tuples
// from the top of every column.
struct Division {
  Bucket left;
  Bucket right;
  std::size_t dimension = 0;
  std::size_t left_column_size = 0;
};

// All divisions of the bucket: d * (column_size - 1); empty iff some column
// has fewer than two tuples.
std::vector<Division> enumerate_divisions(const Bucket& b,
                                          const AttributeSchema& schema);

// Smallest-perimeter division; ties go to the smallest dimension, then the
// smallest left bucket.
std::optional<Division> canonical_division(const Bucket& b,
                                           const AttributeSchema& schema);

// Replaces divisible buckets by their canonical divisions until none remains
// (FIFO order; the result is order-independent). Deterministic.
BucketPartition slice(const BucketPartition& u, const AttributeSchema& schema);

std::optional<AnonymizedTable> ace(const MicrodataTable& t, int l, Rng& rng,
                                   AnonFunction fn = AnonFunction::kMbr);

// Full-trace enumeration of Assign, for the exact probability oracles: every
// bucket partition assign can emit, each with probability 1/m.
struct AceOutcome {
  BucketPartition partition;
  Rat probability;
};
std::vector<AceOutcome> enumerate_assign_support(
    const MicrodataTable& t, int l, std::uint64_t max_outcomes = 1u << 20);

}  // namespace tldiv

#endif  // TLDIV_ACE_HPP_
