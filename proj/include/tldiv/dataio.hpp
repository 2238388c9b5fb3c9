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

#ifndef TLDIV_DATAIO_HPP_
#define TLDIV_DATAIO_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tldiv/model.hpp"
#include "tldiv/recoding.hpp"

namespace tldiv {

// Flat key/value schema description for CSV ingestion. Keys:
//   id               identifier column name
//   qi               comma-separated QI column names, in attribute order
//   qi.<name>.lo/hi  optional declared domain bounds
//   sensitive        sensitive column name
//   sensitive.values optional declared value universe, comma-separated
// Missing bounds/universe are filled from the data at load time.
struct SchemaConfig {
  std::string id_column;
  std::vector<std::string> qi_columns;
  std::vector<std::pair<std::optional<std::int64_t>,
                        std::optional<std::int64_t>>> qi_bounds;
  std::string sensitive_column;
  std::vector<std::string> sensitive_values;  // empty = observed
};

SchemaConfig parse_schema_config(const std::string& text);
SchemaConfig load_schema_config(const std::string& path);
std::string render_schema_config(const SchemaConfig& cfg);

MicrodataTable load_table(const std::string& csv_path,
                          const SchemaConfig& cfg);
// Identifier + QI only; a sensitive column, if present, is ignored.
ExternalSource load_external(const std::string& csv_path,
                             const SchemaConfig& cfg);

void write_table(const MicrodataTable& t, const std::string& csv_path);

// Generalization: one CSV with <attr>_lo/<attr>_hi per QI attribute, a
// group_id column and the sensitive column. Anatomy: <base>_qi.csv and
// <base>_sens.csv linked by group_id. Returns the written file paths.
std::vector<std::string> write_published(const AnonymizedTable& published,
                                         const AttributeSchema& schema,
                                         const std::string& path);

// Reads back a table written by write_published; `path` is the
// generalization CSV or either file of an anatomy pair.
AnonymizedTable load_published(const std::string& path);

// Uniform QI values; the sensitive value follows a monotone bucketing of the
// first QI attribute with probability correlation, else uniform.
MicrodataTable synthesize(std::size_t n, const AttributeSchema& schema,
                          double correlation, std::uint64_t seed);

// Worked-example tables used by the demo pipelines and the test fixtures
// (small clinical-style datasets plus their expected published forms).
namespace fixtures {

AttributeSchema patient_schema();

MicrodataTable patients_a();          // hosts the optimal-recoding demos
MicrodataTable patients_b();          // isomorphic rewrite of patients_c
MicrodataTable patients_c();          // hosts the top-down-split demos
MicrodataTable patients_c_swapped();  // column-swapped twin of patients_c
ExternalSource voter_list();          // patients_a plus one absent individual

AnonymizedTable patients_a_optimal();        // optimal global recoding
AnonymizedTable patients_a_coarse();         // non-minimal coarse recoding
AnonymizedTable patients_a_anatomy();        // anatomy pair of patients_a
AnonymizedTable patients_c_tailored();       // top-down split output
AnonymizedTable patients_c_bucketized();     // assign/slice output

MicrodataTable clinic_small();               // single-QI masking demo
std::vector<std::set<std::string>> clinic_small_grouping();
AnonymizedTable clinic_small_masked();

}  // namespace fixtures

}  // namespace tldiv

#endif  // TLDIV_DATAIO_HPP_
