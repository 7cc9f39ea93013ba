#pragma once
// Tabular results and their CSV / JSON serializations. CSV carries the data
// only; JSON additionally embeds the provenance needed to re-create the run.
// Identical inputs produce identical bytes: '.' decimals, LF endings, no
// timestamps.

#include "zenoqed/config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace zenoqed {

using OrderedJson = nlohmann::ordered_json;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> status;  // per-row status column; empty when unused
  OrderedJson provenance;
};

// precision = significant digits for CSV cells. JSON always serializes at
// full (round-trip exact) precision.
std::string to_csv(const ResultTable& table, int precision);
std::string to_json(const ResultTable& table);
ResultTable table_from_json(const std::string& text);
bool table_equal(const ResultTable& a, const ResultTable& b);  // NaN == NaN here

// Sweep specs embed into / rebuild from provenance JSON.
OrderedJson sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const OrderedJson& j);

OrderedJson params_to_json(const SystemParams& p);
SystemParams params_from_json(const OrderedJson& j);

}  // namespace zenoqed
