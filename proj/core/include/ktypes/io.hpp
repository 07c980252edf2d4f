#pragma once

// Run configuration, batch tables over a K-type box and their serialized
// forms (versioned structured text, flat CSV, moment-image samples).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ktypes/oracle.hpp"
#include "ktypes/reduction.hpp"

namespace ktypes {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Csv, Structured };
OutputFormat parse_format(const std::string& s);
const char* to_string(OutputFormat f) noexcept;

struct RunConfig {
  std::string group = "SL2R";
  Series series = Series::Discrete;
  QVec lambda;
  std::optional<QVec> chamber;
  std::vector<Rational> chi;     // turns
  QVec nu;                       // real part of nu, labeling only
  std::optional<QVec> zeta;
  std::vector<long> eta_lo, eta_hi;  // inclusive box on T-weight coordinates
  std::uint64_t seed = 1;
  std::string out;               // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  std::string image_out;         // empty: no image samples
};

// Canonical JSON text; parse_config(serialize_config(c)) reproduces c and
// serialize_config(parse_config(t)) == t for canonical t.
std::string serialize_config(const RunConfig& c);
RunConfig parse_config(const std::string& text);

// "-6:6" (every coordinate), "-6:6,0:4" (per coordinate) or "10" (same as -10:10).
void parse_eta_box(const std::string& text, std::size_t dim, RunConfig& c);

StandardRepParams params_from_config(const RunConfig& c);

// Dominant weights of the box in lexicographic order.
std::vector<QVec> k_types_in_box(const StandardRepParams& p, const DerivedWeights& w, const RunConfig& c);

// Seed for one cell, a function of the run seed and eta only.
std::uint64_t cell_seed(std::uint64_t run_seed, const QVec& eta);

struct Table {
  RunConfig config;
  std::vector<MultiplicityRecord> records;
  std::size_t mismatches = 0;
  bool oracle_available = false;
};

struct TableOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  bool with_oracle = true;
  int restarts = 8;
};

// Cells run on a bounded pool; any failure is rethrown naming its cell and stage.
Table compute_table(const RunConfig& c, const TableOptions& opt = {});

void write_csv(std::ostream& os, const Table& t);
void write_structured(std::ostream& os, const Table& t);
// Reads a structured results file; unknown fields are ignored.
Table read_structured(const std::string& text);

void write_image_csv(std::ostream& os, const MomentSetup& s, const ImageModel& m, const std::vector<double>& ts);

// Writes the configured outputs; IoError names the path.
void emit_outputs(const Table& t);

// Locale-independent shortest round-trip form.
std::string format_double(double x);

}  // namespace ktypes
