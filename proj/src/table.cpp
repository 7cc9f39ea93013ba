#include "zenoqed/table.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace zenoqed {

namespace {
std::string format_cell(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}
}  // namespace

std::string to_csv(const ResultTable& table, int precision) {
  std::string out;
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  if (!table.status.empty()) {
    if (!table.columns.empty()) out += ',';
    out += "status";
  }
  out += '\n';
  for (size_t r = 0; r < table.rows.size(); ++r) {
    for (size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c) out += ',';
      out += format_cell(table.rows[r][c], precision);
    }
    if (!table.status.empty()) {
      if (!table.rows[r].empty()) out += ',';
      out += table.status[r];
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultTable& table) {
  OrderedJson j;
  j["provenance"] = table.provenance;
  j["columns"] = table.columns;
  OrderedJson rows = OrderedJson::array();
  for (const auto& row : table.rows) {
    OrderedJson r = OrderedJson::array();
    for (double v : row) {
      if (std::isnan(v)) {
        r.push_back(nullptr);
      } else {
        r.push_back(v);
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  if (!table.status.empty()) j["status"] = table.status;
  return j.dump(2) + "\n";
}

ResultTable table_from_json(const std::string& text) {
  const OrderedJson j = OrderedJson::parse(text);
  ResultTable table;
  table.provenance = j.value("provenance", OrderedJson::object());
  table.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) {
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& cell : row) {
      r.push_back(cell.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                 : cell.get<double>());
    }
    table.rows.push_back(std::move(r));
  }
  if (j.contains("status")) table.status = j.at("status").get<std::vector<std::string>>();
  return table;
}

bool table_equal(const ResultTable& a, const ResultTable& b) {
  if (a.columns != b.columns || a.status != b.status) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (size_t c = 0; c < a.rows[r].size(); ++c) {
      const double x = a.rows[r][c], y = b.rows[r][c];
      if (std::isnan(x) != std::isnan(y)) return false;
      if (!std::isnan(x) && x != y) return false;
    }
  }
  return a.provenance == b.provenance;
}

OrderedJson params_to_json(const SystemParams& p) {
  OrderedJson j;
  j["g1"] = p.g1;
  j["g2"] = p.g2;
  j["omega1"] = p.omega1;
  j["omega2"] = p.omega2;
  j["phi1"] = p.phi1;
  j["phi2"] = p.phi2;
  j["delta"] = p.delta;
  j["kappa"] = p.kappa;
  j["gamma"] = p.gamma;
  j["n_max"] = p.n_max;
  return j;
}

SystemParams params_from_json(const OrderedJson& j) {
  SystemParams p;
  p.g1 = j.at("g1").get<double>();
  p.g2 = j.at("g2").get<double>();
  p.omega1 = j.at("omega1").get<double>();
  p.omega2 = j.at("omega2").get<double>();
  p.phi1 = j.at("phi1").get<double>();
  p.phi2 = j.at("phi2").get<double>();
  p.delta = j.at("delta").get<double>();
  p.kappa = j.at("kappa").get<double>();
  p.gamma = j.at("gamma").get<double>();
  p.n_max = j.at("n_max").get<int>();
  return p;
}

OrderedJson sweep_spec_to_json(const SweepSpec& spec) {
  OrderedJson j;
  j["base"] = params_to_json(spec.base);
  OrderedJson axes = OrderedJson::array();
  for (const AxisSpec& axis : spec.axes) {
    OrderedJson a;
    a["name"] = axis.name;
    a["min"] = axis.min;
    a["max"] = axis.max;
    a["count"] = axis.count;
    a["scale"] = axis.log_scale ? "log" : "linear";
    axes.push_back(std::move(a));
  }
  j["axes"] = std::move(axes);
  OrderedJson pr;
  pr["name"] = spec.protocol.name;
  pr["model"] = model_name(spec.protocol.model);
  pr["alpha_re"] = spec.protocol.alpha.real();
  pr["alpha_im"] = spec.protocol.alpha.imag();
  pr["beta_re"] = spec.protocol.beta.real();
  pr["beta_im"] = spec.protocol.beta.imag();
  pr["r"] = spec.protocol.r;
  pr["t"] = spec.protocol.t;
  pr["delta_t_frac"] = spec.protocol.delta_t_frac;
  pr["compensate"] = spec.protocol.compensate;
  pr["window_lo"] = spec.protocol.window_lo;
  pr["window_hi"] = spec.protocol.window_hi;
  pr["t_end"] = spec.protocol.t_end;
  j["protocol"] = std::move(pr);
  j["metrics"] = spec.metrics;
  return j;
}

SweepSpec sweep_spec_from_json(const OrderedJson& j) {
  SweepSpec spec;
  spec.base = params_from_json(j.at("base"));
  for (const auto& a : j.at("axes")) {
    AxisSpec axis;
    axis.name = a.at("name").get<std::string>();
    axis.min = a.at("min").get<double>();
    axis.max = a.at("max").get<double>();
    axis.count = a.at("count").get<int>();
    axis.log_scale = a.at("scale").get<std::string>() == "log";
    spec.axes.push_back(std::move(axis));
  }
  const auto& pr = j.at("protocol");
  spec.protocol.name = pr.at("name").get<std::string>();
  spec.protocol.model = parse_model(pr.at("model").get<std::string>());
  spec.protocol.alpha = Complex(pr.at("alpha_re").get<double>(), pr.at("alpha_im").get<double>());
  spec.protocol.beta = Complex(pr.at("beta_re").get<double>(), pr.at("beta_im").get<double>());
  spec.protocol.r = pr.at("r").get<double>();
  spec.protocol.t = pr.at("t").get<double>();
  spec.protocol.delta_t_frac = pr.at("delta_t_frac").get<double>();
  spec.protocol.compensate = pr.at("compensate").get<bool>();
  spec.protocol.window_lo = pr.at("window_lo").get<double>();
  spec.protocol.window_hi = pr.at("window_hi").get<double>();
  spec.protocol.t_end = pr.at("t_end").get<double>();
  spec.metrics = j.at("metrics").get<std::vector<std::string>>();
  return spec;
}

}  // namespace zenoqed
