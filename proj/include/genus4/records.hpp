#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "genus4/cartier.hpp"
#include "genus4/isoclass.hpp"
#include "genus4/smoothness.hpp"
#include "genus4/standard_forms.hpp"

namespace genus4 {

using Json = nlohmann::ordered_json;

// One curve per JSON line.  Field-element text encoding: prime-field values
// as decimal strings, extension values as "[c0,c1,...]" against the power
// basis of the modulus recorded in the file header.
struct CurveRecord {
  CurveCase cse = CurveCase::D;
  uint32_t p = 0;
  uint64_t index = 0;
  std::optional<uint64_t> draw;  // sample mode: position in the seed stream
  CubicVector vec{};
  std::optional<CurveReason> reason;
  std::optional<HWMatrix> H;
  std::optional<int> a, f;
  std::optional<std::vector<CartierPoint>> type1, type2;
  std::optional<CubicVector> class_id;
};

Json record_to_json(const CurveRecord& r, FieldTable& fields);
CurveRecord record_from_json(const Json& j);

/// Header object carrying the moduli of every field that appears in a file.
Json records_header(FieldTable& fields, Json run_info);

void write_records_file(const std::string& path, const Json& header,
                        const std::vector<CurveRecord>& records, FieldTable& fields);
std::vector<CurveRecord> read_records_file(const std::string& path);

std::string cartier_point_coord_string(const CartierPoint& cp, FieldTable& fields);

}  // namespace genus4
