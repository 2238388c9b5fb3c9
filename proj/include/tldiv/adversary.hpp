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

#ifndef TLDIV_ADVERSARY_HPP_
#define TLDIV_ADVERSARY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tldiv/baselines.hpp"
#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"

namespace tldiv {

enum class Algo { kTailor, kAce, kHybrid, kOptGen, kMask, kMondrianLite };

std::string algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

// The algorithm the adversary re-executes: identity plus every parameter the
// publisher used. The attack model conditions on all of this being public.
struct AlgoSpec {
  Algo id = Algo::kTailor;
  int l = 2;
  AnonFunction fn = AnonFunction::kMbr;
  MaskParams mask;                     // when id == kMask
  KAnonPartitioner mask_partitioner;   // optional; k_anon_partition otherwise
};

enum class ProbabilityMode { kExact, kMonteCarlo };

struct ProbeOptions {
  ProbabilityMode mode = ProbabilityMode::kExact;
  std::uint64_t trials = 10000;  // Monte Carlo trials per instance
  std::uint64_t seed = 1;
  EnumLimits limits;
};

// Exact rational or Monte Carlo estimate with a 99% normal-approximation
// half-width. Estimates are reported with their interval, never silently
// compared as if exact.
struct Probability {
  bool is_exact = true;
  Rat exact;
  double estimate = 0.0;
  double half_width = 0.0;

  double value() const { return is_exact ? to_double(exact) : estimate; }
};

// Every microdata instance, drawn from the external source, that can decide
// `published` under its anonymization function (exact per-group MBR
// attainment / QI multisets plus the sensitive multisets). Instances outside
// this set have output probability zero for every Def.-1 algorithm, so both
// Eq.-2 sums are unchanged by the pruning.
std::vector<MicrodataTable> enumerate_possible_instances(
    const ExternalSource& external, const AnonymizedTable& published,
    const EnumLimits& limits = {});

// Pr{algo(instance, l) = published}.
Probability output_probability(const AlgoSpec& algo,
                               const MicrodataTable& instance,
                               const AnonymizedTable& published,
                               const ProbeOptions& opts = {});

struct IndividualRisk {
  std::map<std::string, Probability> posteriors;  // sensitive value -> belief
  std::string witness_value;
  Probability risk;  // max posterior
  bool breach = false;
};

struct RiskReport {
  std::uint64_t instance_count = 0;
  std::map<std::string, IndividualRisk> individuals;
  bool any_breach = false;
};

// Prop.-1 posterior for every individual of the external source at once (the
// per-instance output probabilities are shared across individuals).
RiskReport disclosure_risk_all(const AnonymizedTable& published,
                               const ExternalSource& external,
                               const AlgoSpec& algo,
                               const ProbeOptions& opts = {});

IndividualRisk disclosure_risk(const std::string& individual,
                               const AnonymizedTable& published,
                               const ExternalSource& external,
                               const AlgoSpec& algo,
                               const ProbeOptions& opts = {});

struct CredibilityReport {
  std::uint64_t consistent_instances = 0;  // |S|, for reference
  std::uint64_t minimal_instances = 0;     // |S+|
  std::map<std::string, Rat> posteriors;   // value -> |S+_{o,v}| / |S+|
  std::string witness_value;
  Rat credibility;
};

// Prop.-2 credibility: instances for which published is a *minimal* l-diverse
// generalization, counted uniformly.
CredibilityReport credibility(const std::string& individual,
                              const AnonymizedTable& published,
                              const ExternalSource& external, int l,
                              RecodingScheme scheme,
                              const EnumLimits& limits = {});

// Everything the algorithm can publish for this table: the single output for
// deterministic algorithms, the full trace support otherwise.
std::vector<AnonymizedTable> output_support(const AlgoSpec& algo,
                                            const MicrodataTable& t,
                                            const EnumLimits& limits = {});

struct TransparencyBreach {
  std::string individual;
  std::string value;
  Probability risk;
  AnonymizedTable output;
};

struct TransparencyReport {
  bool pass = true;
  std::size_t outputs_checked = 0;
  std::uint64_t instances_checked = 0;
  std::optional<TransparencyBreach> breach;
};

// Def.-5 check at desk scale: every output the algorithm can produce on t
// must keep every individual's risk at or below 1/l. The external source
// defaults to the table's own (id, qi) projection.
TransparencyReport verify_transparency(
    const AlgoSpec& algo, const MicrodataTable& t,
    const ProbeOptions& opts = {},
    const std::optional<ExternalSource>& external = std::nullopt);

}  // namespace tldiv

#endif  // TLDIV_ADVERSARY_HPP_
