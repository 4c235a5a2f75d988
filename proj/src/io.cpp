#include "diamag/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace diamag {

namespace {

using nlohmann::json;

const char* kTransitionKeys[] = {"omega_eg",  "gamma_e",    "delta_edip", "delta_mdip",
                                 "delta_dia", "delta_quad", "delta_oct"};

double number_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("model key '") + key +
                                                  "' must be a number");
  return v.get<double>();
}

}  // namespace

MediumModel parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("model file must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "eta" && key != "transitions")
      throw std::invalid_argument("unknown model key '" + key + "'");
  }
  MediumModel model;
  model.hierarchy_ratio = number_or(doc, "eta", 0.5);
  if (doc.contains("transitions")) {
    const auto& arr = doc.at("transitions");
    if (!arr.is_array()) throw std::invalid_argument("'transitions' must be an array");
    for (const auto& entry : arr) {
      if (!entry.is_object()) throw std::invalid_argument("each transition must be an object");
      for (const auto& [key, _] : entry.items()) {
        bool known = false;
        for (const char* k : kTransitionKeys) known = known || key == k;
        if (!known) throw std::invalid_argument("unknown transition key '" + key + "'");
      }
      MultipoleTransition t;
      t.omega_eg = number_or(entry, "omega_eg", 0.0);
      t.gamma_e = number_or(entry, "gamma_e", 0.0);
      t.delta_edip = number_or(entry, "delta_edip", 0.0);
      t.delta_mdip = number_or(entry, "delta_mdip", 0.0);
      t.delta_dia = number_or(entry, "delta_dia", 0.0);
      t.delta_quad = number_or(entry, "delta_quad", 0.0);
      t.delta_oct = number_or(entry, "delta_oct", 0.0);
      model.transitions.push_back(t);
    }
  }
  validate_model(model);
  return model;
}

MediumModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string model_to_json(const MediumModel& model) {
  json doc;
  doc["eta"] = model.hierarchy_ratio;
  doc["transitions"] = json::array();
  for (const auto& t : model.transitions) {
    json entry;
    entry["omega_eg"] = t.omega_eg;
    entry["gamma_e"] = t.gamma_e;
    entry["delta_edip"] = t.delta_edip;
    entry["delta_mdip"] = t.delta_mdip;
    entry["delta_dia"] = t.delta_dia;
    entry["delta_quad"] = t.delta_quad;
    entry["delta_oct"] = t.delta_oct;
    doc["transitions"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // collapse negative zero
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<SpectrumRow> tabulate_spectrum(const MediumModel& model,
                                           const FrequencyGrid& grid) {
  validate_grid(grid);
  std::vector<SpectrumRow> rows;
  rows.reserve(grid.samples.size());
  for (double w : grid.samples) {
    const complex eps = permittivity(model, w);
    const complex mu = permeability(model, w);
    const complex chi = susceptibility(model, w);
    const complex em = eps * mu;
    rows.push_back({w, eps.real(), eps.imag(), mu.real(), mu.imag(), chi.real(), chi.imag(),
                    em.imag()});
  }
  return rows;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRow>& rows) {
  out << kSpectrumCsvHeader << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

std::vector<SpectrumRow> read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty spectrum CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSpectrumCsvHeader)
    throw std::invalid_argument("unexpected spectrum CSV header: " + line);
  std::vector<SpectrumRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    SpectrumRow row{};
    std::size_t pos = 0;
    for (std::size_t col = 0; col < row.size(); ++col) {
      const std::size_t next = line.find(',', pos);
      const std::string field = line.substr(pos, next == std::string::npos
                                                     ? std::string::npos
                                                     : next - pos);
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), row[col]);
      if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::invalid_argument("bad CSV number: '" + field + "'");
      if (col + 1 < row.size()) {
        if (next == std::string::npos)
          throw std::invalid_argument("spectrum CSV row has fewer than 8 columns");
        pos = next + 1;
      } else if (next != std::string::npos) {
        throw std::invalid_argument("spectrum CSV row has more than 8 columns");
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_kernel_csv(std::ostream& out, const CausalKernel& kernel) {
  out << "t,g\n";
  if (kernel.form == KernelForm::sampled) {
    for (std::size_t i = 0; i < kernel.times.size(); ++i)
      out << format_double(kernel.times[i]) << "," << format_double(kernel.values[i]) << "\n";
  } else {
    throw std::invalid_argument("write_kernel_csv expects a sampled kernel");
  }
}

void write_poles_csv(std::ostream& out, const std::vector<Pole>& poles) {
  out << "re_omega,im_omega,re_residue,im_residue\n";
  for (const auto& p : poles) {
    out << format_double(p.location.real()) << "," << format_double(p.location.imag()) << ","
        << format_double(p.residue.real()) << "," << format_double(p.residue.imag()) << "\n";
  }
}

}  // namespace diamag
