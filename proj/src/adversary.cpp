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

#include "tldiv/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "tldiv/ace.hpp"
#include "tldiv/hybrid.hpp"
#include "tldiv/rng.hpp"
#include "tldiv/tailor.hpp"

namespace tldiv {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // 99% two-sided normal quantile

using CanonicalIds = std::vector<std::vector<std::string>>;

AttributeSchema instance_schema(const ExternalSource& e,
                                const AnonymizedTable& published) {
  AttributeSchema s;
  s.id_name = e.id_name;
  s.qi = e.qi;
  s.sensitive_name = "sensitive";
  std::vector<std::string> universe = published.sensitive_multiset();
  universe.erase(std::unique(universe.begin(), universe.end()),
                 universe.end());
  if (universe.empty()) universe.push_back("(empty)");
  s.sensitive_values = std::move(universe);
  return s;
}

// Distinct value-to-record assignments of a sorted multiset onto `ids`.
void for_each_assignment(
    const std::vector<std::string>& sorted_values,
    const std::function<void(const std::vector<std::string>&)>& fn) {
  std::vector<std::string> perm = sorted_values;
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::kTailor: return "tailor";
    case Algo::kAce: return "ace";
    case Algo::kHybrid: return "hybrid";
    case Algo::kOptGen: return "optgen";
    case Algo::kMask: return "mask";
    case Algo::kMondrianLite: return "mondrian";
  }
  return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "tailor") return Algo::kTailor;
  if (name == "ace") return Algo::kAce;
  if (name == "hybrid") return Algo::kHybrid;
  if (name == "optgen" || name == "opt-gen") return Algo::kOptGen;
  if (name == "mask") return Algo::kMask;
  if (name == "mondrian" || name == "mondrian-lite") return Algo::kMondrianLite;
  return std::nullopt;
}

std::vector<MicrodataTable> enumerate_possible_instances(
    const ExternalSource& external, const AnonymizedTable& published,
    const EnumLimits& limits) {
  external.validate();
  if (published.size() > limits.max_published)
    throw LimitError("published table exceeds the instance-enumeration limit");

  AttributeSchema schema = instance_schema(external, published);
  std::vector<MicrodataTable> out;
  if (published.size() == 0) {
    out.emplace_back(schema, std::vector<Record>{});
    return out;
  }
  if (published.is_generalization() && !published.has_boundaries())
    throw SchemaError(
        "instance enumeration needs a published table with group structure");

  std::set<std::vector<Record>> seen;
  std::vector<bool> used(external.entries.size(), false);
  std::vector<Record> current;
  auto emit = [&](const std::vector<Record>& records) {
    if (seen.size() >= limits.max_instances)
      throw LimitError("instance enumeration exceeds the configured limit");
    std::vector<Record> sorted = records;
    std::sort(sorted.begin(), sorted.end(), record_id_less);
    if (seen.insert(sorted).second)
      out.emplace_back(schema, std::move(sorted));
  };

  if (published.is_generalization()) {
    const auto& groups = published.gen_groups();
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
      if (gi == groups.size()) {
        emit(current);
        return;
      }
      const GenGroup& g = groups[gi];
      std::vector<std::pair<std::string, std::vector<std::int64_t>>> cands;
      std::vector<std::size_t> cand_index;
      for (std::size_t i = 0; i < external.entries.size(); ++i) {
        if (used[i]) continue;
        bool inside = true;
        for (std::size_t j = 0; j < g.intervals.size(); ++j)
          if (!g.intervals[j].contains(external.entries[i].second[j]))
            inside = false;
        if (!inside) continue;
        cands.push_back(external.entries[i]);
        cand_index.push_back(i);
      }
      detail::for_each_exact_mbr_subset(
          cands, g.intervals, g.size(),
          [&](const std::vector<std::size_t>& cs) {
            for (std::size_t c : cs) used[cand_index[c]] = true;
            for_each_assignment(g.sensitive, [&](const std::vector<std::string>&
                                                     values) {
              const std::size_t base = current.size();
              for (std::size_t i = 0; i < cs.size(); ++i) {
                const auto& entry = cands[cs[i]];
                current.push_back({entry.first, entry.second, values[i]});
              }
              rec(gi + 1);
              current.resize(base);
            });
            for (std::size_t c : cs) used[cand_index[c]] = false;
          });
    };
    rec(0);
    return out;
  }

  // Anatomy: the group's exact QI multiset must be realized.
  const auto& groups = published.anat_groups();
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      emit(current);
      return;
    }
    const AnatGroup& g = groups[gi];
    // distinct qi vectors with multiplicities
    std::map<std::vector<std::int64_t>, std::size_t> needed;
    for (const auto& q : g.qi_rows) ++needed[q];

    std::vector<std::pair<std::vector<std::int64_t>, std::size_t>> need(
        needed.begin(), needed.end());
    std::vector<std::size_t> chosen;

    std::function<void(std::size_t)> pick_qi = [&](std::size_t ni) {
      if (ni == need.size()) {
        for_each_assignment(
            g.sensitive, [&](const std::vector<std::string>& values) {
              const std::size_t base = current.size();
              for (std::size_t i = 0; i < chosen.size(); ++i) {
                const auto& entry = external.entries[chosen[i]];
                current.push_back({entry.first, entry.second, values[i]});
              }
              rec(gi + 1);
              current.resize(base);
            });
        return;
      }
      const auto& [qi, mult] = need[ni];
      std::vector<std::size_t> cands;
      for (std::size_t i = 0; i < external.entries.size(); ++i)
        if (!used[i] && external.entries[i].second == qi) cands.push_back(i);
      if (cands.size() < mult) return;
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> comb = [&](std::size_t start) {
        if (pick.size() == mult) {
          for (std::size_t c : pick) {
            used[c] = true;
            chosen.push_back(c);
          }
          pick_qi(ni + 1);
          for (std::size_t c : pick) used[c] = false;
          chosen.resize(chosen.size() - pick.size());
          return;
        }
        for (std::size_t i = start; i < cands.size(); ++i) {
          pick.push_back(cands[i]);
          comb(i + 1);
          pick.pop_back();
        }
      };
      comb(0);
    };
    pick_qi(0);
  };
  rec(0);
  return out;
}

namespace {

Rat exact_output_probability(const AlgoSpec& algo,
                             const MicrodataTable& instance,
                             const AnonymizedTable& published,
                             const EnumLimits& limits) {
  const AnonFunction fn = published.function();
  switch (algo.id) {
    case Algo::kTailor: {
      auto r = tailor(instance, algo.l, fn);
      return r && r->table == published ? Rat(1) : Rat(0);
    }
    case Algo::kOptGen: {
      if (fn != AnonFunction::kMbr) return Rat(0);
      auto r = opt_gen(instance, algo.l, limits);
      return r && *r == published ? Rat(1) : Rat(0);
    }
    case Algo::kMondrianLite: {
      auto r = mondrian_lite(instance, algo.l, fn);
      return r && *r == published ? Rat(1) : Rat(0);
    }
    case Algo::kMask:
      return mask_output_probability(instance, algo.mask, published,
                                     algo.mask_partitioner, limits);
    case Algo::kAce: {
      if (!is_l_eligible(instance, algo.l)) return Rat(0);
      Rat total = 0;
      for (const auto& outcome :
           enumerate_assign_support(instance, algo.l, limits.max_support)) {
        BucketPartition s = slice(outcome.partition, instance.schema());
        if (anonymize(s.as_partition(), fn) == published)
          total += outcome.probability;
      }
      return total;
    }
    case Algo::kHybrid: {
      auto coarse = tailor(instance, algo.l, fn);
      if (!coarse) return Rat(0);
      // Per coarse group: the distribution of its sliced output, as a sorted
      // list of published-style groups.
      using GroupList = std::vector<GenGroup>;
      using AnatList = std::vector<AnatGroup>;
      struct Option {
        GroupList gen;
        AnatList anat;
        Rat prob;
      };
      std::vector<std::vector<Option>> per_group;
      for (const auto& g : coarse->partition.groups()) {
        MicrodataTable sub = group_as_table(g, instance.schema());
        std::map<std::pair<GroupList, AnatList>, Rat> dist;
        for (const auto& outcome :
             enumerate_assign_support(sub, algo.l, limits.max_support)) {
          BucketPartition s = slice(outcome.partition, instance.schema());
          AnonymizedTable t2 = anonymize(s.as_partition(), fn);
          std::pair<GroupList, AnatList> key;
          if (fn == AnonFunction::kMbr)
            key.first = t2.gen_groups();
          else
            key.second = t2.anat_groups();
          dist[key] += outcome.probability;
        }
        std::vector<Option> opts;
        for (auto& [key, prob] : dist)
          opts.push_back({key.first, key.second, prob});
        per_group.push_back(std::move(opts));
      }
      // Sum over decompositions whose union is the published group multiset.
      std::multiset<GenGroup> want_gen;
      std::multiset<AnatGroup> want_anat;
      if (fn == AnonFunction::kMbr)
        want_gen.insert(published.gen_groups().begin(),
                        published.gen_groups().end());
      else
        want_anat.insert(published.anat_groups().begin(),
                         published.anat_groups().end());

      Rat total = 0;
      std::function<void(std::size_t, Rat)> rec = [&](std::size_t i,
                                                      Rat prob) {
        if (i == per_group.size()) {
          if (want_gen.empty() && want_anat.empty()) total += prob;
          return;
        }
        for (const auto& opt : per_group[i]) {
          bool ok = true;
          std::vector<GenGroup> taken_gen;
          std::vector<AnatGroup> taken_anat;
          for (const auto& g : opt.gen) {
            auto it = want_gen.find(g);
            if (it == want_gen.end()) {
              ok = false;
              break;
            }
            want_gen.erase(it);
            taken_gen.push_back(g);
          }
          if (ok) {
            for (const auto& g : opt.anat) {
              auto it = want_anat.find(g);
              if (it == want_anat.end()) {
                ok = false;
                break;
              }
              want_anat.erase(it);
              taken_anat.push_back(g);
            }
          }
          if (ok) rec(i + 1, prob * opt.prob);
          for (const auto& g : taken_gen) want_gen.insert(g);
          for (const auto& g : taken_anat) want_anat.insert(g);
        }
      };
      rec(0, Rat(1));
      return total;
    }
  }
  return Rat(0);
}

std::optional<AnonymizedTable> run_once(const AlgoSpec& algo,
                                        const MicrodataTable& instance,
                                        AnonFunction fn, std::uint64_t seed,
                                        const EnumLimits& limits) {
  switch (algo.id) {
    case Algo::kTailor: {
      auto r = tailor(instance, algo.l, fn);
      if (!r) return std::nullopt;
      return std::move(r->table);
    }
    case Algo::kOptGen:
      return opt_gen(instance, algo.l, limits);
    case Algo::kMondrianLite:
      return mondrian_lite(instance, algo.l, fn);
    case Algo::kAce: {
      Rng rng(seed);
      return ace(instance, algo.l, rng, fn);
    }
    case Algo::kHybrid:
      return hybrid(instance, algo.l, seed, fn);
    case Algo::kMask: {
      Rng rng(seed);
      try {
        return mask(instance, algo.mask, rng, algo.mask_partitioner, fn);
      } catch (const InfeasibleError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

bool algo_is_deterministic(Algo a) {
  return a == Algo::kTailor || a == Algo::kOptGen || a == Algo::kMondrianLite;
}

}  // namespace

Probability output_probability(const AlgoSpec& algo,
                               const MicrodataTable& instance,
                               const AnonymizedTable& published,
                               const ProbeOptions& opts) {
  Probability p;
  if (opts.mode == ProbabilityMode::kExact || algo_is_deterministic(algo.id)) {
    p.is_exact = true;
    p.exact = exact_output_probability(algo, instance, published, opts.limits);
    return p;
  }
  if (opts.trials < 1) throw SchemaError("Monte Carlo needs trials >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    auto out = run_once(algo, instance, published.function(),
                        Rng::derive(opts.seed, t), opts.limits);
    if (out && *out == published) ++hits;
  }
  p.is_exact = false;
  p.estimate = static_cast<double>(hits) / static_cast<double>(opts.trials);
  p.half_width = kZ99 * std::sqrt(p.estimate * (1.0 - p.estimate) /
                                  static_cast<double>(opts.trials));
  return p;
}

RiskReport disclosure_risk_all(const AnonymizedTable& published,
                               const ExternalSource& external,
                               const AlgoSpec& algo,
                               const ProbeOptions& opts) {
  std::vector<MicrodataTable> instances =
      enumerate_possible_instances(external, published, opts.limits);

  RiskReport report;
  report.instance_count = instances.size();

  const bool exact =
      opts.mode == ProbabilityMode::kExact || algo_is_deterministic(algo.id);
  std::vector<Rat> exact_p(instances.size());
  std::vector<double> mc_p(instances.size());
  Rat exact_denom = 0;
  double mc_denom = 0, mc_denom_var = 0;

  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (exact) {
      exact_p[i] = exact_output_probability(algo, instances[i], published,
                                            opts.limits);
      exact_denom += exact_p[i];
    } else {
      std::uint64_t hits = 0;
      std::uint64_t instance_seed = Rng::derive(opts.seed, i);
      for (std::uint64_t t = 0; t < opts.trials; ++t) {
        auto out = run_once(algo, instances[i], published.function(),
                            Rng::derive(instance_seed, t), opts.limits);
        if (out && *out == published) ++hits;
      }
      mc_p[i] =
          static_cast<double>(hits) / static_cast<double>(opts.trials);
      mc_denom += mc_p[i];
      mc_denom_var +=
          mc_p[i] * (1.0 - mc_p[i]) / static_cast<double>(opts.trials);
    }
  }
  if ((exact && exact_denom == 0) || (!exact && mc_denom == 0))
    throw ConsistencyError(
        "published table is not producible from the external source");

  const std::vector<std::string>& universe =
      instances.front().schema().sensitive_values;

  for (const auto& [id, qi] : external.entries) {
    IndividualRisk ir;
    for (const auto& v : universe) {
      Probability post;
      if (exact) {
        Rat num = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
          if (exact_p[i] == 0) continue;
          for (const auto& r : instances[i].records()) {
            if (r.id == id && r.sensitive == v) {
              num += exact_p[i];
              break;
            }
          }
        }
        post.is_exact = true;
        post.exact = num / exact_denom;
      } else {
        double num = 0, num_var = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
          for (const auto& r : instances[i].records()) {
            if (r.id == id && r.sensitive == v) {
              num += mc_p[i];
              num_var +=
                  mc_p[i] * (1.0 - mc_p[i]) / static_cast<double>(opts.trials);
              break;
            }
          }
        }
        double ratio = num / mc_denom;
        // Delta method; the numerator terms are a subset of the denominator's.
        double var = ((1.0 - ratio) * (1.0 - ratio) * num_var +
                      ratio * ratio * (mc_denom_var - num_var)) /
                     (mc_denom * mc_denom);
        post.is_exact = false;
        post.estimate = ratio;
        post.half_width = kZ99 * std::sqrt(std::max(var, 0.0));
      }
      ir.posteriors[v] = post;
    }
    // max over the declared universe; first value wins ties
    bool first = true;
    for (const auto& [v, post] : ir.posteriors) {
      bool better = first;
      if (!first) {
        if (exact)
          better = post.exact > ir.risk.exact;
        else
          better = post.estimate > ir.risk.estimate;
      }
      if (better) {
        ir.risk = post;
        ir.witness_value = v;
      }
      first = false;
    }
    ir.breach = exact ? ir.risk.exact * Rat(algo.l) > Rat(1)
                      : ir.risk.estimate * algo.l > 1.0;
    report.any_breach = report.any_breach || ir.breach;
    report.individuals[id] = std::move(ir);
  }
  return report;
}

IndividualRisk disclosure_risk(const std::string& individual,
                               const AnonymizedTable& published,
                               const ExternalSource& external,
                               const AlgoSpec& algo,
                               const ProbeOptions& opts) {
  RiskReport all = disclosure_risk_all(published, external, algo, opts);
  auto it = all.individuals.find(individual);
  if (it == all.individuals.end())
    throw SchemaError("individual not in the external source: " + individual);
  return it->second;
}

CredibilityReport credibility(const std::string& individual,
                              const AnonymizedTable& published,
                              const ExternalSource& external, int l,
                              RecodingScheme scheme,
                              const EnumLimits& limits) {
  std::vector<MicrodataTable> instances =
      enumerate_possible_instances(external, published, limits);
  CredibilityReport report;
  report.consistent_instances = instances.size();

  std::vector<const MicrodataTable*> minimal;
  for (const auto& t : instances) {
    if (is_minimal_generalization(t, published, l, scheme))
      minimal.push_back(&t);
  }
  report.minimal_instances = minimal.size();
  if (minimal.empty())
    throw ConsistencyError("no instance has the published table as a minimal "
                           "l-diverse generalization");

  const std::vector<std::string>& universe =
      instances.front().schema().sensitive_values;
  for (const auto& v : universe) {
    std::uint64_t n = 0;
    for (const MicrodataTable* t : minimal) {
      for (const auto& r : t->records()) {
        if (r.id == individual && r.sensitive == v) {
          ++n;
          break;
        }
      }
    }
    report.posteriors[v] = Rat(n) / Rat(report.minimal_instances);
  }
  report.credibility = 0;
  for (const auto& [v, p] : report.posteriors) {
    if (p > report.credibility) {
      report.credibility = p;
      report.witness_value = v;
    }
  }
  return report;
}

std::vector<AnonymizedTable> output_support(const AlgoSpec& algo,
                                            const MicrodataTable& t,
                                            const EnumLimits& limits) {
  std::vector<AnonymizedTable> out;
  auto push_unique = [&](AnonymizedTable table) {
    for (const auto& o : out)
      if (o == table) return;
    if (out.size() >= limits.max_support)
      throw LimitError("output support exceeds the enumeration limit");
    out.push_back(std::move(table));
  };

  switch (algo.id) {
    case Algo::kTailor:
    case Algo::kOptGen:
    case Algo::kMondrianLite: {
      auto r = run_once(algo, t, algo.fn, 0, limits);
      if (r) out.push_back(std::move(*r));
      return out;
    }
    case Algo::kAce: {
      if (!is_l_eligible(t, algo.l)) return out;
      for (const auto& outcome :
           enumerate_assign_support(t, algo.l, limits.max_support)) {
        BucketPartition s = slice(outcome.partition, t.schema());
        push_unique(anonymize(s.as_partition(), algo.fn));
      }
      return out;
    }
    case Algo::kHybrid: {
      auto coarse = tailor(t, algo.l, algo.fn);
      if (!coarse) return out;
      std::vector<std::vector<Partition>> per_group;
      for (const auto& g : coarse->partition.groups()) {
        MicrodataTable sub = group_as_table(g, t.schema());
        std::vector<Partition> options;
        std::set<CanonicalIds> seen;
        for (const auto& outcome :
             enumerate_assign_support(sub, algo.l, limits.max_support)) {
          BucketPartition s = slice(outcome.partition, t.schema());
          Partition p = s.as_partition();
          CanonicalIds key;
          for (const auto& grp : p.groups()) key.push_back(grp.ids());
          std::sort(key.begin(), key.end());
          if (seen.insert(key).second) options.push_back(std::move(p));
        }
        per_group.push_back(std::move(options));
      }
      std::vector<QIGroup> groups;
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == per_group.size()) {
          push_unique(anonymize(Partition(groups), algo.fn));
          return;
        }
        for (const auto& option : per_group[i]) {
          const std::size_t base = groups.size();
          for (const auto& g : option.groups()) groups.push_back(g);
          rec(i + 1);
          groups.resize(base);
        }
      };
      rec(0);
      return out;
    }
    case Algo::kMask: {
      // Donor combinations; value-to-tuple assignments do not show in the
      // published table.
      Partition p = algo.mask_partitioner
                        ? algo.mask_partitioner(t, algo.mask.k)
                        : k_anon_partition(t, algo.mask.k);
      std::vector<std::size_t> violating;
      std::vector<std::size_t> donors;
      for (std::size_t i = 0; i < p.size(); ++i) {
        bool violates = false;
        for (const auto& [v, n] : p.groups()[i].sensitive_counts())
          if (algo.mask.protected_values.count(v) &&
              n * static_cast<std::size_t>(algo.mask.l) >
                  p.groups()[i].size())
            violates = true;
        (violates ? violating : donors).push_back(i);
      }
      if (!violating.empty() && donors.empty())
        throw InfeasibleError("unmaskable input");
      std::vector<std::vector<std::string>> replacement(p.size());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == violating.size()) {
          std::vector<QIGroup> groups;
          for (std::size_t g = 0; g < p.size(); ++g) {
            if (replacement[g].empty()) {
              groups.push_back(p.groups()[g]);
            } else {
              std::vector<Record> recs = p.groups()[g].records();
              for (std::size_t j = 0; j < recs.size(); ++j)
                recs[j].sensitive = replacement[g][j];
              groups.emplace_back(std::move(recs));
            }
          }
          push_unique(anonymize(Partition(std::move(groups)), algo.fn));
          return;
        }
        std::size_t vi = violating[i];
        std::map<std::string, std::uint64_t> donor_counts;
        for (std::size_t di : donors) {
          donor_counts.clear();
          for (const auto& [v, n] : p.groups()[di].sensitive_counts())
            donor_counts[v] = n;
          auto target =
              mask_transfer_counts(donor_counts, p.groups()[vi].size());
          bool valid = true;
          for (const auto& [v, n] : target)
            if (algo.mask.protected_values.count(v) &&
                n * static_cast<std::uint64_t>(algo.mask.l) >
                    p.groups()[vi].size())
              valid = false;
          if (!valid) continue;
          std::vector<std::string> values;
          for (const auto& [v, n] : target) values.insert(values.end(), n, v);
          replacement[vi] = std::move(values);
          rec(i + 1);
          replacement[vi].clear();
        }
      };
      rec(0);
      return out;
    }
  }
  return out;
}

TransparencyReport verify_transparency(
    const AlgoSpec& algo, const MicrodataTable& t, const ProbeOptions& opts,
    const std::optional<ExternalSource>& external) {
  ExternalSource e =
      external ? *external : ExternalSource::projection_of(t);
  TransparencyReport report;

  std::vector<AnonymizedTable> outputs = output_support(algo, t, opts.limits);
  for (const auto& output : outputs) {
    RiskReport risks = disclosure_risk_all(output, e, algo, opts);
    ++report.outputs_checked;
    report.instances_checked += risks.instance_count;
    for (const auto& [id, ir] : risks.individuals) {
      if (ir.breach) {
        report.pass = false;
        report.breach =
            TransparencyBreach{id, ir.witness_value, ir.risk, output};
        return report;
      }
    }
  }
  return report;
}

}  // namespace tldiv
