#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genus4/records.hpp"

namespace genus4 {

// Exhaustive or sampled sweeps over the standard-form coefficient sets:
// unrank -> Hasse-Witt -> optional a-number filter -> smoothness verdict ->
// Cartier reports -> JSONL records plus cross-tabulated summaries.  Work is
// split into contiguous index chunks; each finished chunk becomes one shard
// file (written atomically), so a killed run resumes from the completed
// shards and the merged output is byte-identical to an uninterrupted run.

struct CensusConfig {
  uint32_t p = 3;
  std::vector<CurveCase> cases = {CurveCase::D, CurveCase::N1i, CurveCase::N1ii, CurveCase::N2};
  enum class Mode { Exhaustive, Sample } mode = Mode::Exhaustive;
  uint64_t sample_n = 0;
  uint64_t seed = 0;                    // required for sample mode
  std::optional<uint64_t> from, to;     // index range restriction, exhaustive mode
  std::optional<int> filter_a;          // keep only curves with this a-number
  bool smooth_only = false;             // drop records whose verdict is not ok
  bool with_cartier = true;             // reports for smooth curves with 1 <= a <= 3
  int workers = 0;                      // 0: GENUS4_WORKERS env or hardware
  std::string out_dir = ".";
  uint64_t checkpoint_interval = 65536;  // chunk length in tuples
  uint64_t abort_after_chunks = 0;       // test hook: stop after N fresh chunks
};

CensusConfig census_config_from_json(const std::string& text);
std::string census_config_to_json(const CensusConfig& cfg);

struct CensusSummary {
  bool completed = false;
  uint64_t scanned = 0;
  uint64_t filtered_out = 0;  // dropped by the early a-number filter
  uint64_t records_written = 0;
  std::map<std::string, uint64_t> verdicts;             // verdict -> tuples
  std::map<std::pair<int, int>, uint64_t> af;           // (a, f) over smooth curves
  std::map<std::pair<int, int>, uint64_t> t1_by_a;      // (a, #distinct type-1 points)
  std::map<std::pair<int, int>, uint64_t> t2_by_f;      // (f, #type-2 points)
  std::string records_path;

  Json to_json() const;
};

/// Runs the sweep, writes <out_dir>/records.jsonl, summary CSV tables and a
/// checkpoint; returns the aggregate counts.
CensusSummary run_census(const CensusConfig& cfg);

/// Aggregation alone (order-independent) over an in-memory record list.
CensusSummary survey_records(const std::vector<CurveRecord>& records);

void write_survey_csv(const CensusSummary& s, const std::string& out_dir);

struct ClassifySummary {
  size_t curves = 0;
  size_t classes = 0;
  std::map<std::string, size_t> classes_by_case;
  std::map<std::string, size_t> classes_by_case_f1, classes_by_case_f0;
  size_t mixed_case_classes = 0;
  size_t invariant_violations = 0;  // members disagreeing on (a, f, point tallies)
  Json to_json() const;
};

/// Partitions the records into F_p-isomorphism classes, writes annotated
/// records (class_id filled) and a classes.csv table.
ClassifySummary classify_records(std::vector<CurveRecord>& records, const std::string& out_dir,
                                 int workers = 0);

int census_worker_count(int requested);

}  // namespace genus4
