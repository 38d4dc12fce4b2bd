#include "genus4/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace genus4 {

namespace fs = std::filesystem;

int census_worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GENUS4_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

CensusConfig census_config_from_json(const std::string& text) {
  Json j = Json::parse(text);
  CensusConfig cfg;
  cfg.p = j.at("p").get<uint32_t>();
  if (j.contains("cases")) {
    cfg.cases.clear();
    for (const auto& cj : j.at("cases")) {
      auto c = case_from_name(cj.get<std::string>());
      if (!c) throw std::invalid_argument("config: unknown case tag");
      cfg.cases.push_back(*c);
    }
  }
  std::string mode = j.value("mode", std::string("exhaustive"));
  if (mode == "exhaustive") {
    cfg.mode = CensusConfig::Mode::Exhaustive;
  } else if (mode == "sample") {
    cfg.mode = CensusConfig::Mode::Sample;
    cfg.sample_n = j.at("n").get<uint64_t>();
    cfg.seed = j.at("seed").get<uint64_t>();  // sample mode requires a seed
  } else {
    throw std::invalid_argument("config: mode must be exhaustive or sample");
  }
  if (j.contains("from")) cfg.from = j.at("from").get<uint64_t>();
  if (j.contains("to")) cfg.to = j.at("to").get<uint64_t>();
  if (j.contains("filter_a")) cfg.filter_a = j.at("filter_a").get<int>();
  cfg.smooth_only = j.value("smooth_only", false);
  cfg.with_cartier = j.value("cartier", true);
  cfg.workers = j.value("workers", 0);
  cfg.out_dir = j.value("out_dir", std::string("."));
  cfg.checkpoint_interval = j.value("checkpoint_interval", uint64_t{65536});
  return cfg;
}

std::string census_config_to_json(const CensusConfig& cfg) {
  Json j;
  j["p"] = cfg.p;
  Json cases = Json::array();
  for (CurveCase c : cfg.cases) cases.push_back(case_name(c));
  j["cases"] = cases;
  j["mode"] = cfg.mode == CensusConfig::Mode::Exhaustive ? "exhaustive" : "sample";
  if (cfg.mode == CensusConfig::Mode::Sample) {
    j["n"] = cfg.sample_n;
    j["seed"] = cfg.seed;
  }
  if (cfg.from) j["from"] = *cfg.from;
  if (cfg.to) j["to"] = *cfg.to;
  if (cfg.filter_a) j["filter_a"] = *cfg.filter_a;
  j["smooth_only"] = cfg.smooth_only;
  j["cartier"] = cfg.with_cartier;
  j["out_dir"] = cfg.out_dir;
  j["checkpoint_interval"] = cfg.checkpoint_interval;
  return j.dump();
}

Json CensusSummary::to_json() const {
  Json j;
  j["completed"] = completed;
  j["scanned"] = scanned;
  j["filtered_out"] = filtered_out;
  j["records"] = records_written;
  j["verdicts"] = verdicts;
  auto tab = [](const std::map<std::pair<int, int>, uint64_t>& m, const char* k1,
                const char* k2) {
    Json arr = Json::array();
    for (const auto& [key, n] : m) {
      Json row;
      row[k1] = key.first;
      row[k2] = key.second;
      row["count"] = n;
      arr.push_back(row);
    }
    return arr;
  };
  j["af"] = tab(af, "a", "f");
  j["type1_by_a"] = tab(t1_by_a, "a", "n");
  j["type2_by_f"] = tab(t2_by_f, "f", "n");
  if (!records_path.empty()) j["records_path"] = records_path;
  return j;
}

namespace {

struct ChunkTally {
  uint64_t scanned = 0, filtered_out = 0, records = 0;
  std::map<std::string, uint64_t> verdicts;
  std::map<std::pair<int, int>, uint64_t> af, t1_by_a, t2_by_f;

  Json to_json() const {
    Json j;
    j["scanned"] = scanned;
    j["filtered_out"] = filtered_out;
    j["records"] = records;
    j["verdicts"] = verdicts;
    auto enc = [](const std::map<std::pair<int, int>, uint64_t>& m) {
      Json arr = Json::array();
      for (const auto& [key, n] : m) arr.push_back({key.first, key.second, n});
      return arr;
    };
    j["af"] = enc(af);
    j["t1"] = enc(t1_by_a);
    j["t2"] = enc(t2_by_f);
    return j;
  }
  static ChunkTally from_json(const Json& j) {
    ChunkTally t;
    t.scanned = j.at("scanned").get<uint64_t>();
    t.filtered_out = j.at("filtered_out").get<uint64_t>();
    t.records = j.at("records").get<uint64_t>();
    for (auto& [k, v] : j.at("verdicts").items()) t.verdicts[k] = v.get<uint64_t>();
    auto dec = [](const Json& arr, std::map<std::pair<int, int>, uint64_t>& m) {
      for (const auto& row : arr)
        m[{row.at(0).get<int>(), row.at(1).get<int>()}] = row.at(2).get<uint64_t>();
    };
    dec(j.at("af"), t.af);
    dec(j.at("t1"), t.t1_by_a);
    dec(j.at("t2"), t.t2_by_f);
    return t;
  }
  void merge_into(CensusSummary& s) const {
    s.scanned += scanned;
    s.filtered_out += filtered_out;
    s.records_written += records;
    for (auto& [k, v] : verdicts) s.verdicts[k] += v;
    for (auto& [k, v] : af) s.af[k] += v;
    for (auto& [k, v] : t1_by_a) s.t1_by_a[k] += v;
    for (auto& [k, v] : t2_by_f) s.t2_by_f[k] += v;
  }
};

struct WorkUnit {
  CurveCase cse;
  uint64_t lo, hi;   // tuple indices (exhaustive) or draw numbers (sample)
  size_t ordinal;    // global merge position
};

void tally_record(ChunkTally& tally, const CurveRecord& rec) {
  if (rec.reason) tally.verdicts[reason_name(*rec.reason)]++;
  if (rec.reason == CurveReason::ok && rec.a && rec.f) {
    tally.af[{*rec.a, *rec.f}]++;
    if (rec.type1) tally.t1_by_a[{*rec.a, [&] {
                     int n = 0;
                     for (const auto& cp : *rec.type1) n += cp.degree;
                     return n;
                   }()}]++;
    if (rec.type2) tally.t2_by_f[{*rec.f, [&] {
                     int n = 0;
                     for (const auto& cp : *rec.type2) n += cp.degree;
                     return n;
                   }()}]++;
  }
}

std::string config_fingerprint(const CensusConfig& cfg) {
  // workers and the abort hook do not affect the output
  CensusConfig c = cfg;
  c.workers = 0;
  c.abort_after_chunks = 0;
  return census_config_to_json(c);
}

}  // namespace

CensusSummary run_census(const CensusConfig& cfg) {
  if (cfg.mode == CensusConfig::Mode::Sample && cfg.from)
    throw std::invalid_argument("census: index ranges apply to exhaustive mode only");
  const int workers = census_worker_count(cfg.workers);
  fs::create_directories(cfg.out_dir);
  fs::path shard_dir = fs::path(cfg.out_dir) / "shards";
  fs::create_directories(shard_dir);

  // checkpoint guards against resuming with a different configuration
  const std::string fp = config_fingerprint(cfg);
  fs::path ckpt = fs::path(cfg.out_dir) / "checkpoint.json";
  if (fs::exists(ckpt)) {
    std::ifstream in(ckpt);
    Json j = Json::parse(in);
    if (j.at("config").get<std::string>() != fp)
      throw std::invalid_argument("census: checkpoint belongs to a different configuration");
  } else {
    std::ofstream out(ckpt);
    Json j;
    j["config"] = fp;
    out << j.dump() << "\n";
  }

  // work units
  std::vector<WorkUnit> units;
  for (CurveCase c : cfg.cases) {
    uint64_t lo = 0, hi;
    if (cfg.mode == CensusConfig::Mode::Exhaustive) {
      hi = case_cardinality(c, cfg.p);
      if (cfg.from) lo = std::min(*cfg.from, hi);
      if (cfg.to) hi = std::min(*cfg.to, hi);
    } else {
      hi = cfg.sample_n;
    }
    for (uint64_t start = lo; start < hi; start += cfg.checkpoint_interval)
      units.push_back(
          {c, start, std::min(hi, start + cfg.checkpoint_interval), units.size()});
  }

  std::atomic<size_t> next{0};
  std::atomic<uint64_t> fresh_chunks{0};
  std::atomic<bool> aborted{false};

  auto shard_path = [&](const WorkUnit& u) {
    std::ostringstream os;
    os << "shard_" << std::setw(6) << std::setfill('0') << u.ordinal << ".jsonl";
    return shard_dir / os.str();
  };

  auto worker = [&]() {
    HWWorkspace ws;
    for (;;) {
      if (aborted.load()) return;
      size_t k = next.fetch_add(1);
      if (k >= units.size()) return;
      const WorkUnit& u = units[k];
      fs::path done_path = shard_path(u);
      if (fs::exists(done_path)) continue;  // resumed: chunk already complete
      if (cfg.abort_after_chunks &&
          fresh_chunks.fetch_add(1) >= cfg.abort_after_chunks) {
        aborted.store(true);
        return;
      }

      ChunkTally tally;
      std::vector<CurveRecord> recs;
      QuadricTerms qt = quadric_terms(quadric_of(u.cse, cfg.p));
      FieldTable fields;
      CartierAnalyzer analyzer(fields);
      CubicVector v;
      for (uint64_t i = u.lo; i < u.hi; ++i) {
        uint64_t index =
            cfg.mode == CensusConfig::Mode::Sample ? sample_index(u.cse, cfg.p, cfg.seed, i) : i;
        ++tally.scanned;
        cubic_vec_from_index(u.cse, cfg.p, index, v);
        HWMatrix h = hasse_witt_vec(qt, v, ws);
        int a = 4 - mat_rank(cfg.p, h.m);
        if (cfg.filter_a && a != *cfg.filter_a) {
          ++tally.filtered_out;
          continue;
        }
        CurveSpec spec = curve_from_index(u.cse, cfg.p, index);
        CurveVerdict verdict = is_standard_curve(spec.F, spec.G);
        if (cfg.smooth_only && !verdict.is_curve) {
          tally.verdicts[reason_name(verdict.reason)]++;
          continue;
        }
        CurveRecord rec;
        rec.cse = u.cse;
        rec.p = cfg.p;
        rec.index = index;
        if (cfg.mode == CensusConfig::Mode::Sample) rec.draw = i;
        rec.vec = v;
        rec.reason = verdict.reason;
        rec.H = h;
        if (verdict.is_curve) {
          rec.a = a;
          rec.f = p_rank(h);
          if (cfg.with_cartier && a >= 1 && a <= 3) {
            CartierReport rep = analyzer.analyze(spec, h);
            rec.type1 = rep.type1;
            rec.type2 = rep.type2;
          }
        }
        tally_record(tally, rec);
        ++tally.records;
        recs.push_back(std::move(rec));
      }

      // shard = one meta line + records, renamed into place on completion
      fs::path tmp = done_path;
      tmp += ".tmp";
      {
        std::ofstream out(tmp);
        Json meta;
        meta["chunk"] = tally.to_json();
        out << meta.dump() << "\n";
        FieldTable fields_out;
        for (const auto& r : recs) out << record_to_json(r, fields_out).dump() << "\n";
      }
      fs::rename(tmp, done_path);
    }
  };

  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CensusSummary summary;
  summary.completed = true;
  for (const auto& u : units)
    if (!fs::exists(shard_path(u))) summary.completed = false;
  if (!summary.completed) {
    for (const auto& u : units) {
      fs::path sp = shard_path(u);
      if (!fs::exists(sp)) continue;
      std::ifstream in(sp);
      std::string line;
      std::getline(in, line);
      ChunkTally::from_json(Json::parse(line).at("chunk")).merge_into(summary);
    }
    return summary;
  }

  // deterministic merge in unit order
  FieldTable header_fields;
  for (uint32_t e = 1; e <= 6; ++e) header_fields.get(cfg.p, e);
  Json run_info;
  run_info["tool"] = "genus4 census";
  run_info["config"] = Json::parse(fp);
  fs::path records_path = fs::path(cfg.out_dir) / "records.jsonl";
  {
    std::ofstream out(records_path);
    out << records_header(header_fields, run_info).dump() << "\n";
    for (const auto& u : units) {
      std::ifstream in(shard_path(u));
      std::string line;
      std::getline(in, line);  // meta
      ChunkTally::from_json(Json::parse(line).at("chunk")).merge_into(summary);
      while (std::getline(in, line))
        if (!line.empty()) out << line << "\n";
    }
  }
  summary.records_path = records_path.string();
  write_survey_csv(summary, cfg.out_dir);
  {
    std::ofstream out(fs::path(cfg.out_dir) / "summary.json");
    out << summary.to_json().dump(2) << "\n";
  }
  return summary;
}

CensusSummary survey_records(const std::vector<CurveRecord>& records) {
  ChunkTally tally;
  for (const auto& r : records) {
    ++tally.scanned;
    tally_record(tally, r);
    ++tally.records;
  }
  CensusSummary s;
  s.completed = true;
  tally.merge_into(s);
  return s;
}

void write_survey_csv(const CensusSummary& s, const std::string& out_dir) {
  {
    std::ofstream out(fs::path(out_dir) / "summary_af.csv");
    out << "a,f,count\n";
    for (const auto& [k, n] : s.af) out << k.first << "," << k.second << "," << n << "\n";
  }
  {
    std::ofstream out(fs::path(out_dir) / "type1_by_a.csv");
    out << "a,n_type1,count,attains_bound\n";
    for (const auto& [k, n] : s.t1_by_a) {
      int bound = k.first == 1 ? 1 : 6;
      out << k.first << "," << k.second << "," << n << "," << (k.second == bound ? 1 : 0)
          << "\n";
    }
  }
  {
    std::ofstream out(fs::path(out_dir) / "type2_by_f.csv");
    out << "f,n_type2,count\n";
    for (const auto& [k, n] : s.t2_by_f) out << k.first << "," << k.second << "," << n << "\n";
  }
}

Json ClassifySummary::to_json() const {
  Json j;
  j["curves"] = curves;
  j["classes"] = classes;
  j["classes_by_case"] = classes_by_case;
  j["classes_by_case_f1"] = classes_by_case_f1;
  j["classes_by_case_f0"] = classes_by_case_f0;
  j["mixed_case_classes"] = mixed_case_classes;
  j["invariant_violations"] = invariant_violations;
  return j;
}

ClassifySummary classify_records(std::vector<CurveRecord>& records, const std::string& out_dir,
                                 int workers) {
  ClassifySummary summary;
  summary.curves = records.size();
  if (records.empty()) return summary;
  const uint32_t p = records.front().p;
  for (const auto& r : records)
    if (r.p != p) throw std::invalid_argument("classify: mixed primes");

  std::vector<std::pair<CurveCase, CubicVector>> curves;
  curves.reserve(records.size());
  for (const auto& r : records) curves.push_back({r.cse, r.vec});
  ClassPartition part = classify(curves, p, workers);

  summary.classes = part.classes.size();
  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "classes.csv");
  csv << "class,case,size,a,f,n_type1,n_type2,representative_index\n";
  size_t cls_no = 0;
  for (auto& cls : part.classes) {
    summary.classes_by_case[case_name(cls.cse)]++;
    if (cls.mixed_cases) ++summary.mixed_case_classes;
    for (size_t m : cls.members) records[m].class_id = cls.class_id;

    // class invariants: every member agrees on (a, f) and the point tallies
    const CurveRecord& rep = records[cls.representative];
    auto tally = [](const std::optional<std::vector<CartierPoint>>& pts) {
      std::multiset<std::tuple<int, int, int>> t;  // (degree, mult, type)
      if (pts)
        for (const auto& cp : *pts) t.insert({cp.degree, cp.multiplicity, cp.type});
      return t;
    };
    auto rep_t1 = tally(rep.type1), rep_t2 = tally(rep.type2);
    for (size_t m : cls.members) {
      const CurveRecord& r = records[m];
      if (r.a != rep.a || r.f != rep.f || tally(r.type1) != rep_t1 || tally(r.type2) != rep_t2)
        ++summary.invariant_violations;
    }
    if (rep.f.has_value()) {
      auto& byf = (*rep.f >= 1) ? summary.classes_by_case_f1 : summary.classes_by_case_f0;
      byf[case_name(cls.cse)]++;
    }

    int n1 = 0, n2 = 0;
    if (rep.type1)
      for (const auto& cp : *rep.type1) n1 += cp.degree;
    if (rep.type2)
      for (const auto& cp : *rep.type2) n2 += cp.degree;
    std::ostringstream cid;
    for (int i = 0; i < 20; ++i) cid << (i ? ":" : "") << cls.class_id[i];
    csv << cid.str() << "," << case_name(cls.cse) << "," << cls.members.size() << ","
        << (rep.a ? *rep.a : -1) << "," << (rep.f ? *rep.f : -1) << "," << n1 << "," << n2
        << "," << rep.index << "\n";
    ++cls_no;
  }
  (void)cls_no;
  return summary;
}

}  // namespace genus4
