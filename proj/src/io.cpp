#include "bds/io.hpp"

#include <fstream>

namespace bds::io {

namespace {

const char* const kOutcomeKeys[4] = {"pp", "pm", "mp", "mm"};

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParse, what); }

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < m.dim()) ++n;
  return Json{{"n_qubits", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.matrix()); }

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object()) parse_error("density matrix must be a JSON object");
  for (const char* key : {"n_qubits", "re", "im"}) {
    if (!j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  }
  if (!j["n_qubits"].is_number_unsigned()) parse_error("n_qubits must be a positive integer");
  const auto n = j["n_qubits"].get<std::size_t>();
  if (n == 0 || n > 4) parse_error("n_qubits must be between 1 and 4");
  const std::size_t dim = std::size_t{1} << n;

  ComplexMatrix m(dim);
  auto read_part = [&](const Json& rows, const char* name, bool imaginary) {
    if (!rows.is_array() || rows.size() != dim) {
      parse_error(std::string(name) + " must have " + std::to_string(dim) + " rows");
    }
    for (std::size_t r = 0; r < dim; ++r) {
      const Json& row = rows[r];
      if (!row.is_array() || row.size() != dim) {
        parse_error(std::string(name) + " row " + std::to_string(r) + " has the wrong length");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        if (!row[c].is_number()) parse_error(std::string(name) + " entries must be numbers");
        const double v = row[c].get<double>();
        if (imaginary) {
          m(r, c).imag(v);
        } else {
          m(r, c).real(v);
        }
      }
    }
  };
  read_part(j["re"], "re", false);
  read_part(j["im"], "im", true);
  return m;
}

DensityMatrix state_from_json(const Json& j) { return DensityMatrix(matrix_from_json(j)); }

Json counts_to_json(const TomographyCounts& counts) {
  Json settings = Json::object();
  for (int i = 0; i < kNumSettings; ++i) {
    Json entry = Json::object();
    for (int o = 0; o < 4; ++o) entry[kOutcomeKeys[o]] = counts.counts[i][o];
    settings[MeasurementSetting::from_index(i).label()] = std::move(entry);
  }
  return Json{{"shots", counts.shots_per_setting}, {"settings", std::move(settings)}};
}

TomographyCounts counts_from_json(const Json& j) {
  if (!j.is_object()) parse_error("counts must be a JSON object");
  if (!j.contains("shots") || !j["shots"].is_number_unsigned()) {
    parse_error("'shots' must be a positive integer");
  }
  if (!j.contains("settings") || !j["settings"].is_object()) parse_error("missing 'settings'");
  TomographyCounts out;
  out.shots_per_setting = j["shots"].get<std::uint64_t>();
  const Json& settings = j["settings"];
  for (int i = 0; i < kNumSettings; ++i) {
    const std::string label = MeasurementSetting::from_index(i).label();
    if (!settings.contains(label)) parse_error("setting " + label + " is missing");
    const Json& entry = settings[label];
    for (int o = 0; o < 4; ++o) {
      if (!entry.contains(kOutcomeKeys[o]) || !entry[kOutcomeKeys[o]].is_number_unsigned()) {
        parse_error("setting " + label + " needs a nonnegative integer '" + kOutcomeKeys[o] + "'");
      }
      out.counts[i][o] = entry[kOutcomeKeys[o]].get<std::uint64_t>();
    }
  }
  for (const auto& [key, value] : settings.items()) {
    MeasurementSetting::from_label(key);  // rejects unknown keys
  }
  out.validate();
  return out;
}

Json circuit_to_json(const Circuit& circuit) {
  Json gates = Json::array();
  for (const Gate& g : circuit.gates()) {
    gates.push_back({{"kind", gate_name(g.kind)}, {"params", g.params}, {"targets", g.targets}});
  }
  return Json{{"n_qubits", circuit.n_qubits()}, {"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    Circuit circuit(j.at("n_qubits").get<std::size_t>());
    for (const Json& g : j.at("gates")) {
      circuit.add({gate_kind_from_name(g.at("kind").get<std::string>()),
                   g.at("params").get<std::vector<double>>(),
                   g.at("targets").get<std::vector<std::size_t>>()});
    }
    return circuit;
  } catch (const Json::exception& e) {
    parse_error(e.what());
  }
}

Json report_to_json(const ResourceReport& r) {
  return Json{{"coherence_l1", r.coherence_l1}, {"nonlocal_coherence", r.nonlocal_coherence},
              {"discord", r.discord},           {"negativity", r.negativity},
              {"steering", r.steering},         {"nonlocality", r.nonlocality}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

}  // namespace bds::io
