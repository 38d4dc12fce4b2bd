#include "genus4/records.hpp"

#include <fstream>

namespace genus4 {

namespace {

Json point_to_json(const CartierPoint& cp, FieldTable& fields) {
  const Fq& K = fields.get(cp.pt.p, cp.pt.e);
  Json j;
  j["e"] = cp.pt.e;
  Json coords = Json::array();
  for (const auto& c : cp.pt.x) coords.push_back(K.to_string(c));
  j["coords"] = coords;
  j["degree"] = cp.degree;
  if (cp.type == 2) j["c"] = K.to_string(cp.eigenvalue);
  if (cp.mult_defined) j["mult"] = cp.multiplicity;
  return j;
}

Elem elem_from_string(const Fq& K, const std::string& s) {
  Elem v{};
  if (!s.empty() && s.front() == '[') {
    size_t pos = 1;
    for (uint32_t i = 0; i < K.e(); ++i) {
      size_t next = s.find_first_of(",]", pos);
      v[i] = static_cast<uint32_t>(std::stoul(s.substr(pos, next - pos)));
      pos = next + 1;
    }
  } else {
    v[0] = static_cast<uint32_t>(std::stoul(s));
  }
  return v;
}

CartierPoint point_from_json(const Json& j, uint32_t p, int type) {
  CartierPoint cp;
  cp.type = type;
  cp.pt.p = p;
  cp.pt.e = j.at("e").get<uint32_t>();
  const Fq& K = Fq::get(p, cp.pt.e);
  const auto& coords = j.at("coords");
  for (int i = 0; i < 4; ++i) cp.pt.x[i] = elem_from_string(K, coords.at(i).get<std::string>());
  cp.degree = j.at("degree").get<int>();
  if (j.contains("c")) cp.eigenvalue = elem_from_string(K, j.at("c").get<std::string>());
  if (j.contains("mult")) {
    cp.multiplicity = j.at("mult").get<int>();
    cp.mult_defined = true;
  }
  return cp;
}

}  // namespace

std::string cartier_point_coord_string(const CartierPoint& cp, FieldTable& fields) {
  const Fq& K = fields.get(cp.pt.p, cp.pt.e);
  std::string s = "[";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ":";
    s += K.to_string(cp.pt.x[i]);
  }
  return s + "]";
}

Json record_to_json(const CurveRecord& r, FieldTable& fields) {
  Json j;
  j["case"] = case_name(r.cse);
  j["p"] = r.p;
  j["index"] = r.index;
  if (r.draw) j["draw"] = *r.draw;
  j["vec"] = r.vec;
  if (r.reason) j["verdict"] = reason_name(*r.reason);
  if (r.H) j["H"] = r.H->m;
  if (r.a) j["a"] = *r.a;
  if (r.f) j["f"] = *r.f;
  if (r.type1) {
    Json t1 = Json::array();
    for (const auto& cp : *r.type1) t1.push_back(point_to_json(cp, fields));
    j["type1"] = t1;
  }
  if (r.type2) {
    Json t2 = Json::array();
    for (const auto& cp : *r.type2) t2.push_back(point_to_json(cp, fields));
    j["type2"] = t2;
  }
  if (r.class_id) j["class_id"] = *r.class_id;
  return j;
}

CurveRecord record_from_json(const Json& j) {
  CurveRecord r;
  auto c = case_from_name(j.at("case").get<std::string>());
  if (!c) throw std::invalid_argument("record: unknown case tag");
  r.cse = *c;
  r.p = j.at("p").get<uint32_t>();
  r.index = j.at("index").get<uint64_t>();
  if (j.contains("draw")) r.draw = j.at("draw").get<uint64_t>();
  const auto& v = j.at("vec");
  for (int i = 0; i < 20; ++i) r.vec[i] = v.at(i).get<uint32_t>();
  if (j.contains("verdict")) {
    std::string s = j.at("verdict").get<std::string>();
    for (CurveReason reason : {CurveReason::ok, CurveReason::wrong_dimension,
                               CurveReason::singular, CurveReason::degenerate_input})
      if (s == reason_name(reason)) r.reason = reason;
    if (!r.reason) throw std::invalid_argument("record: unknown verdict");
  }
  if (j.contains("H")) {
    HWMatrix h;
    h.p = r.p;
    for (int i = 0; i < 16; ++i) h.m[i] = j.at("H").at(i).get<uint32_t>();
    r.H = h;
  }
  if (j.contains("a")) r.a = j.at("a").get<int>();
  if (j.contains("f")) r.f = j.at("f").get<int>();
  if (j.contains("type1")) {
    std::vector<CartierPoint> t1;
    for (const auto& pj : j.at("type1")) t1.push_back(point_from_json(pj, r.p, 1));
    r.type1 = t1;
  }
  if (j.contains("type2")) {
    std::vector<CartierPoint> t2;
    for (const auto& pj : j.at("type2")) t2.push_back(point_from_json(pj, r.p, 2));
    r.type2 = t2;
  }
  if (j.contains("class_id")) {
    CubicVector cid{};
    for (int i = 0; i < 20; ++i) cid[i] = j.at("class_id").at(i).get<uint32_t>();
    r.class_id = cid;
  }
  return r;
}

Json records_header(FieldTable& fields, Json run_info) {
  Json fields_json = Json::array();
  for (const auto& [key, modulus] : fields.used()) {
    Json fj;
    fj["p"] = key.first;
    fj["e"] = key.second;
    Json mod = Json::array();
    for (uint32_t c : modulus) mod.push_back(c);
    mod.push_back(1);  // monic leading coefficient
    fj["modulus"] = mod;
    fields_json.push_back(fj);
  }
  Json h;
  h["header"] = std::move(run_info);
  h["header"]["fields"] = fields_json;
  return h;
}

void write_records_file(const std::string& path, const Json& header,
                        const std::vector<CurveRecord>& records, FieldTable& fields) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << header.dump() << "\n";
  for (const auto& r : records) out << record_to_json(r, fields).dump() << "\n";
}

std::vector<CurveRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CurveRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j = Json::parse(line);
    if (j.contains("header")) continue;
    out.push_back(record_from_json(j));
  }
  return out;
}

}  // namespace genus4
