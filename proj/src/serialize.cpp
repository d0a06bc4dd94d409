#include "lohe/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lohe {

namespace {

nlohmann::json complex_to_json(const Complex& v) { return nlohmann::json::array({v.real(), v.imag()}); }

Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("complex values must be [re, im] pairs");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

// full-precision, locale-independent float formatting for CSV
void append_double(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

nlohmann::json symbol_to_json(const CharacteristicSymbol& c) {
  nlohmann::json j;
  j["size"] = c.size.dims();
  j["coupling"] = c.coupling.values();
  nlohmann::json freqs = nlohmann::json::array();
  for (const auto& a : c.freqs) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < a.dim(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t col = 0; col < a.dim(); ++col) row.push_back(complex_to_json(a.at(r, col)));
      rows.push_back(std::move(row));
    }
    freqs.push_back(std::move(rows));
  }
  j["frequencies"] = std::move(freqs);
  nlohmann::json initial = nlohmann::json::array();
  for (const auto& t : c.initial) {
    nlohmann::json entries = nlohmann::json::array();
    for (const Complex& v : t.entries()) entries.push_back(complex_to_json(v));
    initial.push_back(std::move(entries));
  }
  j["initial"] = std::move(initial);
  return j;
}

CharacteristicSymbol symbol_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("symbol: expected an object");
  for (const char* key : {"size", "coupling", "frequencies", "initial"}) {
    if (!j.contains(key)) throw ConfigError(std::string("symbol: missing field '") + key + "'");
  }
  CharacteristicSymbol c;
  try {
    c.size = SizeVector{j.at("size").get<std::vector<int>>()};
  } catch (const ShapeError& e) {
    throw ConfigError(std::string("symbol: ") + e.what());
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("symbol: 'size' must be an array of integers");
  }
  const auto strengths = j.at("coupling");
  if (!strengths.is_array() || strengths.size() != (std::size_t{1} << c.rank())) {
    throw ConfigError("symbol: 'coupling' must hold exactly 2^rank strengths");
  }
  c.coupling = CouplingTensor(c.rank(), strengths.get<std::vector<double>>());

  const std::size_t dim = c.size.total();
  for (const auto& rows : j.at("frequencies")) {
    if (!rows.is_array() || rows.size() != dim) {
      throw ConfigError("symbol: each frequency tensor must be a DxD matrix");
    }
    std::vector<Complex> m;
    m.reserve(dim * dim);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != dim) {
        throw ConfigError("symbol: each frequency tensor must be a DxD matrix");
      }
      for (const auto& v : row) m.push_back(complex_from_json(v));
    }
    c.freqs.emplace_back(c.size, std::move(m));
  }
  for (const auto& entries : j.at("initial")) {
    if (!entries.is_array() || entries.size() != dim) {
      throw ConfigError("symbol: each initial tensor must hold D entries");
    }
    std::vector<Complex> t;
    t.reserve(dim);
    for (const auto& v : entries) t.push_back(complex_from_json(v));
    c.initial.emplace_back(c.size, std::move(t));
  }
  if (c.freqs.size() != c.initial.size() || c.initial.empty()) {
    throw ConfigError("symbol: frequency and initial counts must match and be nonempty");
  }
  return c;
}

CharacteristicSymbol load_symbol(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("symbol file " + path + ": " + e.what());
  }
  return symbol_from_json(j);
}

void save_symbol(const CharacteristicSymbol& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write symbol file: " + path);
  out << symbol_to_json(c).dump(2) << "\n";
}

namespace {

struct Column {
  const char* name;
  const std::optional<double> DiagnosticsRecord::*field;
};

constexpr Column kColumns[] = {
    {"diameter_x", &DiagnosticsRecord::diameter_x},
    {"alignment_x", &DiagnosticsRecord::alignment_x},
    {"diameter_u", &DiagnosticsRecord::diameter_u},
    {"s_u", &DiagnosticsRecord::s_u},
    {"diameter_v", &DiagnosticsRecord::diameter_v},
    {"s_v", &DiagnosticsRecord::s_v},
    {"l_total", &DiagnosticsRecord::l_total},
    {"potential", &DiagnosticsRecord::potential},
    {"residual", &DiagnosticsRecord::residual},
    {"norm_drift", &DiagnosticsRecord::norm_drift},
};

}  // namespace

std::string record_summary(const DiagnosticsRecord& record) {
  std::string out = "t=";
  append_double(out, record.t);
  for (const auto& col : kColumns) {
    if ((record.*col.field).has_value()) {
      out += " ";
      out += col.name;
      out += "=";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", *(record.*col.field));
      out += buf;
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string out = "t";
  if (records.empty()) return out + "\n";
  const DiagnosticsRecord& head = records.front();
  for (const auto& col : kColumns) {
    if ((head.*col.field).has_value()) {
      out += ",";
      out += col.name;
    }
  }
  out += "\n";
  for (const auto& rec : records) {
    append_double(out, rec.t);
    for (const auto& col : kColumns) {
      if ((head.*col.field).has_value()) {
        out += ",";
        append_double(out, (rec.*col.field).value_or(0.0));
      }
    }
    out += "\n";
  }
  return out;
}

std::string state_csv(const std::vector<DenseTensor>& state) {
  std::string out;
  for (const auto& t : state) {
    bool first = true;
    for (const Complex& v : t.entries()) {
      if (!first) out += ",";
      first = false;
      append_double(out, v.real());
      out += ",";
      append_double(out, v.imag());
    }
    out += "\n";
  }
  return out;
}

}  // namespace lohe
