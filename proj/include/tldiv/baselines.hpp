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

#ifndef TLDIV_BASELINES_HPP_
#define TLDIV_BASELINES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"
#include "tldiv/rng.hpp"

namespace tldiv {

// Global recoding forces identical-QI records into one group and, so that the
// published group structure is recoverable, keeps group MBRs pairwise
// disjoint. Local recoding has no structural constraint.
enum class RecodingScheme { kGlobal, kLocal };

// All partitions whose groups are l-diverse and satisfy global recoding,
// in deterministic (restricted-growth over QI-equality classes) order.
std::vector<Partition> enumerate_global_partitions(
    const MicrodataTable& t, int l, const EnumLimits& limits = {});

// Exhaustive discernability-minimal l-diverse global-recoding generalization;
// ties broken by the smallest canonical form. Not transparent.
std::optional<AnonymizedTable> opt_gen(const MicrodataTable& t, int l,
                                       const EnumLimits& limits = {});

// True iff published is decided by some partition of source that conforms to
// the scheme and no child of it (one group split in two) decides an l-diverse
// generalization under the same scheme. ConsistencyError if published cannot
// be decided by any partition of source; false if it can, but only through
// partitions violating the scheme.
bool is_minimal_generalization(const MicrodataTable& source,
                               const AnonymizedTable& published, int l,
                               RecodingScheme scheme);

using KAnonPartitioner =
    std::function<Partition(const MicrodataTable&, int k)>;

// A partitioner that returns one fixed grouping of ids; used to inject
// worked-example partitions into mask.
KAnonPartitioner fixed_partitioner(std::vector<std::set<std::string>> groups);

struct MaskParams {
  int k = 2;
  int l = 2;
  std::set<std::string> protected_values;  // V
};

// The credibility-model baseline: k-anonymous partition, then every group in
// which some value of V exceeds the 1/l quota copies the sensitive
// distribution of a donor group drawn among the valid ones. Donor counts are
// transferred exactly when they scale integrally to the group size and by
// largest-remainder apportionment otherwise; a donor is valid when the
// transferred counts respect the V quota. InfeasibleError ("unmaskable") when
// a violating group has no valid donor.
AnonymizedTable mask(const MicrodataTable& t, const MaskParams& params,
                     Rng& rng, const KAnonPartitioner& partitioner = nullptr,
                     AnonFunction fn = AnonFunction::kMbr);

// The count vector a donor's distribution induces on a group of target_size.
std::map<std::string, std::uint64_t> mask_transfer_counts(
    const std::map<std::string, std::uint64_t>& donor_counts,
    std::uint64_t target_size);

// Exact probability that mask(t) publishes `published`, summed over donor
// choices and value-to-tuple assignments.
Rat mask_output_probability(const MicrodataTable& t, const MaskParams& params,
                            const AnonymizedTable& published,
                            const KAnonPartitioner& partitioner = nullptr,
                            const EnumLimits& limits = {});

struct MaskAttackReport {
  std::uint64_t consistent_instances = 0;
  // individual -> value -> fraction of consistent instances
  std::map<std::string, std::map<std::string, Rat>> posteriors;

  Rat posterior(const std::string& id, const std::string& value) const;
};

// Brute-force consistency attack against mask: enumerates every microdata
// instance (individuals matching the published group structure, all value
// assignments over the universe) for which some mask execution publishes the
// observed table; instances are weighted equally.
MaskAttackReport mask_consistency_attack(
    const AnonymizedTable& published, const ExternalSource& external,
    const MaskParams& params, const std::vector<std::string>& universe,
    const KAnonPartitioner& partitioner = nullptr,
    const EnumLimits& limits = {});

// Simplified multidimensional baseline: recursive sorted-midpoint split on
// the widest normalized dimension, accepted only when both halves stay
// l-eligible. Deterministic; makes no transparency claim.
std::optional<AnonymizedTable> mondrian_lite(
    const MicrodataTable& t, int l, AnonFunction fn = AnonFunction::kMbr);

namespace detail {
// Every size-sized subset of candidates whose MBR is exactly `box`
// (containment is assumed pre-filtered). Indices arrive sorted ascending.
void for_each_exact_mbr_subset(
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>&
        candidates,
    const std::vector<Interval>& box, std::size_t size,
    const std::function<void(const std::vector<std::size_t>&)>& fn);
}  // namespace detail

}  // namespace tldiv

#endif  // TLDIV_BASELINES_HPP_
