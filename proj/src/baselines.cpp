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

#include "tldiv/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "tldiv/tailor.hpp"

namespace tldiv {

namespace {

std::vector<Interval> group_box(const QIGroup& g) {
  std::vector<Interval> box;
  const std::size_t d = g.records().front().qi.size();
  for (std::size_t i = 0; i < d; ++i) box.push_back(mbr_interval(g, i));
  return box;
}

bool boxes_disjoint(const std::vector<Interval>& a,
                    const std::vector<Interval>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].disjoint(b[i])) return true;
  return false;
}

std::vector<Interval> merge_boxes(const std::vector<Interval>& a,
                                  const std::vector<Interval>& b) {
  std::vector<Interval> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = {std::min(a[i].lo, b[i].lo), std::max(a[i].hi, b[i].hi)};
  return out;
}

std::vector<Interval> record_box(const Record& r) {
  std::vector<Interval> out;
  out.reserve(r.qi.size());
  for (auto v : r.qi) out.push_back({v, v});
  return out;
}

bool multiset_diverse(const std::vector<Record>& records, int l) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) ++counts[r.sensitive];
  for (const auto& [v, n] : counts)
    if (n * static_cast<std::size_t>(l) > records.size()) return false;
  return true;
}

using IdList = std::vector<std::string>;
using CanonicalPartition = std::vector<IdList>;

CanonicalPartition canonical_form(const std::vector<std::vector<Record>>& gs) {
  CanonicalPartition out;
  for (const auto& g : gs) {
    IdList ids;
    for (const auto& r : g) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// QI-equality classes in min-id order: the atoms global recoding cannot split.
std::vector<std::vector<Record>> qi_atoms(const MicrodataTable& t) {
  std::map<std::vector<std::int64_t>, std::vector<Record>> by_qi;
  for (const auto& r : t.records()) by_qi[r.qi].push_back(r);
  std::vector<std::vector<Record>> atoms;
  for (auto& [qi, recs] : by_qi) atoms.push_back(std::move(recs));
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a[0].id < b[0].id; });
  return atoms;
}

void enumerate_partitions_rec(
    const std::vector<std::vector<Record>>& atoms, std::size_t i,
    std::vector<std::vector<Record>>& groups,
    std::vector<std::vector<Interval>>& boxes, int l,
    const std::function<void(const std::vector<std::vector<Record>>&)>& emit) {
  if (i == atoms.size()) {
    for (const auto& g : groups)
      if (!multiset_diverse(g, l)) return;
    emit(groups);
    return;
  }
  const auto& atom = atoms[i];
  const std::vector<Interval> atom_box = record_box(atom[0]);

  // Join an existing group (boxes only ever grow, so any overlap among
  // current groups is final and prunes the branch).
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<Interval> merged = merge_boxes(boxes[g], atom_box);
    bool ok = true;
    for (std::size_t h = 0; h < groups.size() && ok; ++h)
      if (h != g && !boxes_disjoint(merged, boxes[h])) ok = false;
    if (!ok) continue;
    std::vector<Interval> saved = std::move(boxes[g]);
    boxes[g] = std::move(merged);
    const std::size_t before = groups[g].size();
    groups[g].insert(groups[g].end(), atom.begin(), atom.end());
    enumerate_partitions_rec(atoms, i + 1, groups, boxes, l, emit);
    groups[g].resize(before);
    boxes[g] = std::move(saved);
  }
  // Open a new group.
  bool ok = true;
  for (const auto& b : boxes)
    if (!boxes_disjoint(atom_box, b)) ok = false;
  if (ok) {
    groups.push_back(atom);
    boxes.push_back(atom_box);
    enumerate_partitions_rec(atoms, i + 1, groups, boxes, l, emit);
    groups.pop_back();
    boxes.pop_back();
  }
}

void enumerate_global_rec(
    const MicrodataTable& t, int l, const EnumLimits& limits,
    const std::function<void(const std::vector<std::vector<Record>>&)>& emit) {
  if (t.size() > limits.max_partition_table)
    throw LimitError("table exceeds the exhaustive partition-search limit");
  if (t.size() == 0) {
    emit({});
    return;
  }
  auto atoms = qi_atoms(t);
  std::vector<std::vector<Record>> groups;
  std::vector<std::vector<Interval>> boxes;
  enumerate_partitions_rec(atoms, 0, groups, boxes, l, emit);
}

}  // namespace

std::vector<Partition> enumerate_global_partitions(const MicrodataTable& t,
                                                   int l,
                                                   const EnumLimits& limits) {
  std::vector<Partition> out;
  enumerate_global_rec(t, l, limits,
                       [&](const std::vector<std::vector<Record>>& gs) {
                         std::vector<QIGroup> groups;
                         groups.reserve(gs.size());
                         for (const auto& g : gs) groups.emplace_back(g);
                         out.emplace_back(std::move(groups));
                       });
  return out;
}

std::optional<AnonymizedTable> opt_gen(const MicrodataTable& t, int l,
                                       const EnumLimits& limits) {
  bool found = false;
  std::uint64_t best_disc = 0;
  CanonicalPartition best_form;
  std::vector<std::vector<Record>> best;
  enumerate_global_rec(
      t, l, limits, [&](const std::vector<std::vector<Record>>& gs) {
        std::uint64_t disc = 0;
        for (const auto& g : gs)
          disc += static_cast<std::uint64_t>(g.size()) * g.size();
        CanonicalPartition form = canonical_form(gs);
        if (!found || disc < best_disc ||
            (disc == best_disc && form < best_form)) {
          found = true;
          best_disc = disc;
          best_form = std::move(form);
          best = gs;
        }
      });
  if (!found) return std::nullopt;
  std::vector<QIGroup> groups;
  groups.reserve(best.size());
  for (const auto& g : best) groups.emplace_back(g);
  return anonymize(Partition(std::move(groups)), AnonFunction::kMbr);
}

namespace detail {

void for_each_exact_mbr_subset(
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>&
        candidates,
    const std::vector<Interval>& box, std::size_t size,
    const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> chosen;
  const std::size_t d = box.size();

  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (chosen.size() == size) {
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t lo = box[j].hi, hi = box[j].lo;
        for (std::size_t c : chosen) {
          lo = std::min(lo, candidates[c].second[j]);
          hi = std::max(hi, candidates[c].second[j]);
        }
        if (lo != box[j].lo || hi != box[j].hi) return;
      }
      fn(chosen);
      return;
    }
    if (start >= candidates.size()) return;
    if (candidates.size() - start < size - chosen.size()) return;
    chosen.push_back(start);
    rec(start + 1);
    chosen.pop_back();
    rec(start + 1);
  };
  rec(0);
}

}  // namespace detail

namespace {

// All partitions of source that decide `published` (canonical id form),
// via per-group exact-MBR and sensitive-multiset matching.
std::vector<std::vector<std::vector<Record>>> deciding_partitions(
    const MicrodataTable& source, const AnonymizedTable& published) {
  std::vector<std::vector<std::vector<Record>>> result;
  if (!published.is_generalization() || !published.has_boundaries())
    throw SchemaError(
        "minimality is defined for generalizations with group structure");
  const auto& groups = published.gen_groups();
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  if (total != source.size()) return result;

  std::vector<bool> used(source.size(), false);
  std::vector<std::vector<Record>> current;
  std::set<CanonicalPartition> seen;

  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      if (seen.insert(canonical_form(current)).second) result.push_back(current);
      return;
    }
    const GenGroup& g = groups[gi];
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> cands;
    std::vector<std::size_t> cand_index;
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (used[i]) continue;
      const Record& r = source.records()[i];
      bool inside = true;
      for (std::size_t j = 0; j < g.intervals.size(); ++j)
        if (!g.intervals[j].contains(r.qi[j])) inside = false;
      if (!inside) continue;
      cands.emplace_back(r.id, r.qi);
      cand_index.push_back(i);
    }
    detail::for_each_exact_mbr_subset(
        cands, g.intervals, g.size(), [&](const std::vector<std::size_t>& cs) {
          std::vector<Record> members;
          std::vector<std::string> values;
          for (std::size_t c : cs) {
            members.push_back(source.records()[cand_index[c]]);
            values.push_back(members.back().sensitive);
          }
          std::sort(values.begin(), values.end());
          if (values != g.sensitive) return;
          for (std::size_t c : cs) used[cand_index[c]] = true;
          current.push_back(std::move(members));
          rec(gi + 1);
          current.pop_back();
          for (std::size_t c : cs) used[cand_index[c]] = false;
        });
  };
  rec(0);
  return result;
}

bool partition_satisfies_global(const std::vector<std::vector<Record>>& gs) {
  // identical-QI records share a group
  std::map<std::vector<std::int64_t>, std::size_t> owner;
  for (std::size_t g = 0; g < gs.size(); ++g) {
    for (const auto& r : gs[g]) {
      auto [it, inserted] = owner.try_emplace(r.qi, g);
      if (!inserted && it->second != g) return false;
    }
  }
  // pairwise disjoint group MBRs
  std::vector<std::vector<Interval>> boxes;
  for (const auto& g : gs) boxes.push_back(group_box(QIGroup(g)));
  for (std::size_t a = 0; a < boxes.size(); ++a)
    for (std::size_t b = a + 1; b < boxes.size(); ++b)
      if (!boxes_disjoint(boxes[a], boxes[b])) return false;
  return true;
}

bool scheme_holds(const std::vector<std::vector<Record>>& gs,
                  RecodingScheme scheme) {
  return scheme == RecodingScheme::kLocal || partition_satisfies_global(gs);
}

// True iff splitting some group of gs in two yields an l-diverse partition
// under the scheme (Def.-6-style child).
bool has_l_diverse_child(const std::vector<std::vector<Record>>& gs, int l,
                         RecodingScheme scheme) {
  for (std::size_t gi = 0; gi < gs.size(); ++gi) {
    const auto& g = gs[gi];
    if (g.size() < 2) continue;
    const std::size_t n = g.size();
    // First record pinned to side A: each unordered split visited once.
    for (std::uint64_t mask_bits = 0; mask_bits < (1ull << (n - 1));
         ++mask_bits) {
      std::vector<Record> a{g[0]}, b;
      for (std::size_t i = 1; i < n; ++i)
        ((mask_bits >> (i - 1)) & 1 ? a : b).push_back(g[i]);
      if (b.empty()) continue;
      if (!multiset_diverse(a, l) || !multiset_diverse(b, l)) continue;
      std::vector<std::vector<Record>> child;
      for (std::size_t h = 0; h < gs.size(); ++h)
        if (h != gi) child.push_back(gs[h]);
      child.push_back(a);
      child.push_back(b);
      if (scheme_holds(child, scheme)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_minimal_generalization(const MicrodataTable& source,
                               const AnonymizedTable& published, int l,
                               RecodingScheme scheme) {
  auto partitions = deciding_partitions(source, published);
  if (partitions.empty())
    throw ConsistencyError("published table is not a generalization of source");
  // The algorithm used one of the deciding partitions; the table counts as
  // minimal when some scheme-conforming one admits no l-diverse child.
  for (const auto& gs : partitions) {
    if (!scheme_holds(gs, scheme)) continue;
    if (!has_l_diverse_child(gs, l, scheme)) return true;
  }
  return false;
}

KAnonPartitioner fixed_partitioner(std::vector<std::set<std::string>> groups) {
  return [groups = std::move(groups)](const MicrodataTable& t,
                                      int) -> Partition {
    std::map<std::string, const Record*> by_id;
    for (const auto& r : t.records()) by_id[r.id] = &r;
    std::vector<QIGroup> out;
    std::size_t assigned = 0;
    for (const auto& ids : groups) {
      std::vector<Record> members;
      for (const auto& id : ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
          throw SchemaError("fixed partition references unknown id " + id);
        members.push_back(*it->second);
        ++assigned;
      }
      out.emplace_back(std::move(members));
    }
    if (assigned != t.size())
      throw SchemaError("fixed partition does not cover the table");
    return Partition(std::move(out));
  };
}

std::map<std::string, std::uint64_t> mask_transfer_counts(
    const std::map<std::string, std::uint64_t>& donor_counts,
    std::uint64_t target_size) {
  std::uint64_t donor_size = 0;
  for (const auto& [v, n] : donor_counts) donor_size += n;

  bool exact = true;
  for (const auto& [v, n] : donor_counts)
    if ((n * target_size) % donor_size != 0) exact = false;

  std::map<std::string, std::uint64_t> out;
  if (exact) {
    for (const auto& [v, n] : donor_counts)
      if (n > 0) out[v] = n * target_size / donor_size;
    return out;
  }
  // Largest-remainder apportionment; ties by larger remainder then value.
  std::uint64_t assigned = 0;
  std::vector<std::pair<std::uint64_t, std::string>> remainders;
  for (const auto& [v, n] : donor_counts) {
    std::uint64_t base = n * target_size / donor_size;
    if (base > 0) out[v] = base;
    assigned += base;
    remainders.emplace_back(n * target_size % donor_size, v);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a,
                                                     const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < target_size; ++i, ++assigned)
    ++out[remainders[i % remainders.size()].second];
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

namespace {

struct MaskClassification {
  std::vector<std::size_t> violating;  // indices into partition groups
  std::vector<std::size_t> donors;
};

MaskClassification classify_groups(const Partition& p,
                                   const MaskParams& params) {
  MaskClassification c;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const QIGroup& g = p.groups()[i];
    bool violates = false;
    for (const auto& [v, n] : g.sensitive_counts()) {
      if (params.protected_values.count(v) &&
          n * static_cast<std::size_t>(params.l) > g.size())
        violates = true;
    }
    (violates ? c.violating : c.donors).push_back(i);
  }
  return c;
}

bool counts_respect_quota(const std::map<std::string, std::uint64_t>& counts,
                          std::uint64_t group_size, const MaskParams& params) {
  for (const auto& [v, n] : counts) {
    if (params.protected_values.count(v) &&
        n * static_cast<std::uint64_t>(params.l) > group_size)
      return false;
  }
  return true;
}

// Donors of P_2 whose transferred counts keep the V quota on a group of
// `size` tuples, with the counts they induce.
std::vector<std::pair<std::size_t, std::map<std::string, std::uint64_t>>>
valid_donors(const Partition& p, const MaskClassification& cls,
             std::uint64_t size, const MaskParams& params) {
  std::vector<std::pair<std::size_t, std::map<std::string, std::uint64_t>>> out;
  for (std::size_t di : cls.donors) {
    std::map<std::string, std::uint64_t> donor_counts;
    for (const auto& [v, n] : p.groups()[di].sensitive_counts())
      donor_counts[v] = n;
    auto target = mask_transfer_counts(donor_counts, size);
    if (counts_respect_quota(target, size, params))
      out.emplace_back(di, std::move(target));
  }
  return out;
}

std::vector<Record> with_values(const QIGroup& g,
                                const std::vector<std::string>& values) {
  std::vector<Record> out = g.records();
  for (std::size_t i = 0; i < out.size(); ++i) out[i].sensitive = values[i];
  return out;
}

Partition default_partition(const MicrodataTable& t, int k,
                            const KAnonPartitioner& partitioner) {
  return partitioner ? partitioner(t, k) : k_anon_partition(t, k);
}

}  // namespace

AnonymizedTable mask(const MicrodataTable& t, const MaskParams& params,
                     Rng& rng, const KAnonPartitioner& partitioner,
                     AnonFunction fn) {
  if (params.l < 1 || params.k < params.l)
    throw SchemaError("mask requires k >= l >= 1");
  Partition p = default_partition(t, params.k, partitioner);
  MaskClassification cls = classify_groups(p, params);
  if (!cls.violating.empty() && cls.donors.empty())
    throw InfeasibleError("unmaskable: every group violates the V quota");

  std::vector<QIGroup> final_groups;
  std::map<std::size_t, std::vector<std::string>> replacements;
  for (std::size_t vi : cls.violating) {
    const QIGroup& g = p.groups()[vi];
    auto donors = valid_donors(p, cls, g.size(), params);
    if (donors.empty())
      throw InfeasibleError("unmaskable: no valid donor for a group");
    const auto& pick = donors[rng.below(donors.size())];
    // Uniform distinct value-to-tuple assignment realizing the counts.
    std::vector<std::string> values;
    for (const auto& [v, n] : pick.second)
      values.insert(values.end(), n, v);
    for (std::size_t i = values.size(); i > 1; --i)
      std::swap(values[i - 1], values[rng.below(i)]);
    replacements[vi] = std::move(values);
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = replacements.find(i);
    if (it == replacements.end())
      final_groups.push_back(p.groups()[i]);
    else
      final_groups.emplace_back(with_values(p.groups()[i], it->second));
  }
  return anonymize(Partition(std::move(final_groups)), fn);
}

Rat mask_output_probability(const MicrodataTable& t, const MaskParams& params,
                            const AnonymizedTable& published,
                            const KAnonPartitioner& partitioner,
                            const EnumLimits& limits) {
  if (params.l < 1 || params.k < params.l)
    throw SchemaError("mask requires k >= l >= 1");
  if (t.size() < static_cast<std::size_t>(params.k)) return Rat(0);
  Partition p = default_partition(t, params.k, partitioner);
  MaskClassification cls = classify_groups(p, params);
  if (!cls.violating.empty() && cls.donors.empty()) return Rat(0);

  // The value-to-tuple assignment never shows in the published table, so only
  // donor choices carry probability.
  AnonFunction fn = published.function();
  Rat total = 0;
  std::vector<std::vector<std::string>> chosen(p.size());
  std::function<void(std::size_t, Rat)> rec = [&](std::size_t i, Rat prob) {
    if (i == cls.violating.size()) {
      std::vector<QIGroup> final_groups;
      for (std::size_t g = 0; g < p.size(); ++g) {
        if (chosen[g].empty())
          final_groups.push_back(p.groups()[g]);
        else
          final_groups.emplace_back(with_values(p.groups()[g], chosen[g]));
      }
      if (anonymize(Partition(std::move(final_groups)), fn) == published)
        total += prob;
      return;
    }
    std::size_t vi = cls.violating[i];
    auto donors = valid_donors(p, cls, p.groups()[vi].size(), params);
    if (donors.empty()) return;
    for (const auto& [di, counts] : donors) {
      std::vector<std::string> values;
      for (const auto& [v, n] : counts) values.insert(values.end(), n, v);
      chosen[vi] = std::move(values);
      rec(i + 1, prob / Rat(donors.size()));
      chosen[vi].clear();
    }
  };
  rec(0, Rat(1));
  return total;
}

Rat MaskAttackReport::posterior(const std::string& id,
                                const std::string& value) const {
  auto it = posteriors.find(id);
  if (it == posteriors.end()) return Rat(0);
  auto jt = it->second.find(value);
  return jt == it->second.end() ? Rat(0) : jt->second;
}

MaskAttackReport mask_consistency_attack(const AnonymizedTable& published,
                                         const ExternalSource& external,
                                         const MaskParams& params,
                                         const std::vector<std::string>& universe,
                                         const KAnonPartitioner& partitioner,
                                         const EnumLimits& limits) {
  external.validate();
  if (!published.is_generalization())
    throw SchemaError("mask attack expects a generalization");

  AttributeSchema schema;
  schema.id_name = external.id_name;
  schema.qi = external.qi;
  schema.sensitive_name = "sensitive";
  schema.sensitive_values = universe;
  std::sort(schema.sensitive_values.begin(), schema.sensitive_values.end());
  schema.validate();

  // Candidate individual structures that match the published group boxes.
  const auto& groups = published.gen_groups();
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  if (total > limits.max_published)
    throw LimitError("published table exceeds the instance-enumeration limit");

  std::set<std::vector<std::pair<std::string, std::vector<std::int64_t>>>>
      id_structures;  // flat sorted (id, qi) lists
  std::vector<bool> used(external.entries.size(), false);
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> current;

  std::function<void(std::size_t)> build = [&](std::size_t gi) {
    if (gi == groups.size()) {
      auto sorted = current;
      std::sort(sorted.begin(), sorted.end());
      id_structures.insert(std::move(sorted));
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
      if (inside) {
        cands.push_back(external.entries[i]);
        cand_index.push_back(i);
      }
    }
    detail::for_each_exact_mbr_subset(
        cands, g.intervals, g.size(), [&](const std::vector<std::size_t>& cs) {
          for (std::size_t c : cs) {
            used[cand_index[c]] = true;
            current.push_back(external.entries[cand_index[c]]);
          }
          build(gi + 1);
          for (std::size_t c : cs) used[cand_index[c]] = false;
          current.resize(current.size() - cs.size());
        });
  };
  build(0);

  // Enumerate value assignments per structure and keep instances for which
  // some mask execution publishes the observed table.
  std::set<std::vector<Record>> consistent;
  for (const auto& structure : id_structures) {
    const std::size_t n = structure.size();
    double space = std::pow(static_cast<double>(universe.size()),
                            static_cast<double>(n));
    if (space > static_cast<double>(limits.max_instances))
      throw LimitError("instance space exceeds the enumeration limit");
    std::vector<Record> records(n);
    std::function<void(std::size_t)> assign_values = [&](std::size_t i) {
      if (i == n) {
        MicrodataTable instance(schema, records);
        if (mask_output_probability(instance, params, published, partitioner,
                                    limits) > 0)
          consistent.insert(instance.records());
        return;
      }
      records[i].id = structure[i].first;
      records[i].qi = structure[i].second;
      for (const auto& v : schema.sensitive_values) {
        records[i].sensitive = v;
        assign_values(i + 1);
      }
    };
    assign_values(0);
  }

  MaskAttackReport report;
  report.consistent_instances = consistent.size();
  if (consistent.empty()) return report;
  std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
  for (const auto& records : consistent)
    for (const auto& r : records) ++counts[{r.id, r.sensitive}];
  for (const auto& [key, n] : counts)
    report.posteriors[key.first][key.second] =
        Rat(n) / Rat(report.consistent_instances);
  return report;
}

std::optional<AnonymizedTable> mondrian_lite(const MicrodataTable& t, int l,
                                             AnonFunction fn) {
  if (l < 1) throw SchemaError("l must be positive");
  if (!is_l_eligible(t, l)) return std::nullopt;
  if (t.size() == 0) return anonymize(Partition(), fn);
  const AttributeSchema& schema = t.schema();
  const std::size_t d = schema.dim();

  std::deque<std::vector<Record>> queue;
  std::vector<QIGroup> done;
  queue.push_back(t.records());
  while (!queue.empty()) {
    std::vector<Record> g = std::move(queue.front());
    queue.pop_front();

    // Dimensions by descending normalized extent (extent/width), ties by
    // index; zero-width domains rank last.
    std::vector<std::pair<std::size_t, std::pair<std::int64_t, std::int64_t>>>
        dims;
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t lo = g[0].qi[j], hi = g[0].qi[j];
      for (const auto& r : g) {
        lo = std::min(lo, r.qi[j]);
        hi = std::max(hi, r.qi[j]);
      }
      std::int64_t width = schema.width(j);
      dims.push_back({j, {hi - lo, width == 0 ? 1 : width}});
    }
    std::stable_sort(dims.begin(), dims.end(), [](const auto& a,
                                                  const auto& b) {
      return static_cast<__int128>(a.second.first) * b.second.second >
             static_cast<__int128>(b.second.first) * a.second.second;
    });

    bool split_done = false;
    if (g.size() >= 2) {
      for (const auto& [dim, ratio] : dims) {
        std::vector<Record> order = detail::sorted_by_dimension(g, dim);
        std::size_t mid = order.size() / 2;
        std::vector<Record> left(order.begin(), order.begin() + mid);
        std::vector<Record> right(order.begin() + mid, order.end());
        if (multiset_diverse(left, l) && multiset_diverse(right, l)) {
          queue.push_back(std::move(left));
          queue.push_back(std::move(right));
          split_done = true;
          break;
        }
      }
    }
    if (!split_done) done.emplace_back(std::move(g));
  }
  return anonymize(Partition(std::move(done)), fn);
}

}  // namespace tldiv
