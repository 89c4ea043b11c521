#include "nevlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace nevlab {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_to_json(Complex z) {
  return ordered_json{{"sigma", z.real()}, {"t", z.imag()}};
}

Complex complex_from_json(const ordered_json& j) {
  return Complex(j.at("sigma").get<double>(), j.at("t").get<double>());
}

ordered_json fit_to_json(const BoundFit& f) {
  ordered_json j;
  j["slope"] = f.slope;
  j["offset"] = f.offset;
  j["max_residual"] = f.max_residual;
  j["witness"] = complex_to_json(f.argmax_witness);
  j["n_samples"] = f.n_samples;
  return j;
}

BoundFit fit_from_json(const ordered_json& j) {
  BoundFit f;
  f.slope = j.at("slope").get<double>();
  f.offset = j.at("offset").get<double>();
  f.max_residual = j.at("max_residual").get<double>();
  f.argmax_witness = complex_from_json(j.at("witness"));
  f.n_samples = j.at("n_samples").get<long>();
  return f;
}

ordered_json divisors_to_json(const DivisorList& d) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : d.entries) {
    arr.push_back(ordered_json{{"re", e.location.real()},
                               {"im", e.location.imag()},
                               {"multiplicity", e.multiplicity},
                               {"kind", to_string(e.kind)}});
  }
  return arr;
}

DivisorList divisors_from_json(const ordered_json& arr) {
  DivisorList d;
  for (const auto& e : arr) {
    DivisorEntry entry;
    entry.location = Complex(e.at("re").get<double>(), e.at("im").get<double>());
    entry.multiplicity = e.at("multiplicity").get<int>();
    entry.kind =
        e.at("kind").get<std::string>() == "pole" ? DivisorKind::Pole : DivisorKind::Zero;
    d.entries.push_back(entry);
  }
  return d;
}

}  // namespace

std::string report_to_json(const LemmaReport& report, const std::string& timestamp) {
  ordered_json j;
  j["lemma_id"] = to_string(report.lemma_id);
  ordered_json params;
  params["delta"] = report.params.delta;
  params["sigma_values"] = report.params.sigma_values;
  params["t_values"] = report.params.t_values;
  j["params"] = params;
  j["pass"] = report.pass;
  if (report.fit) {
    j["fit"] = fit_to_json(*report.fit);
  } else {
    j["fit"] = nullptr;
  }
  ordered_json wits = ordered_json::array();
  for (const auto& w : report.witnesses) {
    wits.push_back(ordered_json{
        {"input", complex_to_json(w.input)}, {"value", w.value}, {"label", w.label}});
  }
  j["witnesses"] = wits;
  if (!report.lemma9.empty()) {
    ordered_json det = ordered_json::array();
    for (const auto& d : report.lemma9) {
      det.push_back(ordered_json{{"t", d.t},
                                 {"rho", d.rho},
                                 {"h", d.h},
                                 {"N", d.N_value},
                                 {"jensen_sum", d.jensen_sum},
                                 {"bound", d.bound},
                                 {"ok", d.ok},
                                 {"zeta_zero_count", d.zeta_zero_count},
                                 {"nudge_count", d.nudge_count},
                                 {"divisors", divisors_to_json(d.divisors)}});
    }
    j["lemma9_details"] = det;
  }
  j["notes"] = report.notes;
  ordered_json rows = ordered_json::array();
  for (const auto& s : report.samples) {
    rows.push_back(ordered_json::array({s.sigma, s.t, s.value, s.bound, s.margin}));
  }
  j["samples"] = rows;
  j["runtime_ms"] = report.runtime_ms;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

LemmaReport report_from_json(const std::string& json_text) {
  const ordered_json j = ordered_json::parse(json_text);
  LemmaReport rep;
  rep.lemma_id = lemma_id_from_string(j.at("lemma_id").get<std::string>());
  const auto& params = j.at("params");
  rep.params.delta = params.at("delta").get<double>();
  rep.params.sigma_values = params.at("sigma_values").get<std::vector<double>>();
  rep.params.t_values = params.at("t_values").get<std::vector<double>>();
  rep.pass = j.at("pass").get<bool>();
  if (!j.at("fit").is_null()) rep.fit = fit_from_json(j.at("fit"));
  for (const auto& w : j.at("witnesses")) {
    rep.witnesses.push_back({complex_from_json(w.at("input")),
                             w.at("value").get<double>(),
                             w.at("label").get<std::string>()});
  }
  if (j.contains("lemma9_details")) {
    for (const auto& d : j.at("lemma9_details")) {
      Lemma9Detail det;
      det.t = d.at("t").get<double>();
      det.rho = d.at("rho").get<double>();
      det.h = d.at("h").get<int>();
      det.N_value = d.at("N").get<double>();
      det.jensen_sum = d.at("jensen_sum").get<double>();
      det.bound = d.at("bound").get<double>();
      det.ok = d.at("ok").get<bool>();
      det.zeta_zero_count = d.at("zeta_zero_count").get<int>();
      det.nudge_count = d.at("nudge_count").get<long>();
      det.divisors = divisors_from_json(d.at("divisors"));
      rep.lemma9.push_back(std::move(det));
    }
  }
  rep.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& row : j.at("samples")) {
    rep.samples.push_back({row.at(0).get<double>(), row.at(1).get<double>(),
                           row.at(2).get<double>(), row.at(3).get<double>(),
                           row.at(4).get<double>()});
  }
  rep.runtime_ms = j.value("runtime_ms", 0.0);
  return rep;
}

bool report_equal(const LemmaReport& a, const LemmaReport& b) {
  // compare through the canonical serialization, volatile fields stripped
  return strip_volatile_fields(report_to_json(a, "")) ==
         strip_volatile_fields(report_to_json(b, ""));
}

std::string report_to_csv(const LemmaReport& report) {
  std::string out = "sigma,t,value,bound,margin\n";
  char buf[160];
  for (const auto& s : report.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.sigma, s.t,
                  s.value, s.bound, s.margin);
    out += buf;
  }
  return out;
}

std::string strip_volatile_fields(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  j.erase("timestamp");
  j.erase("runtime_ms");
  return j.dump(2) + "\n";
}

std::string current_stamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoError, "cannot open " + tmp.string());
    out << content;
    out.flush();
    if (!out) raise(ErrorCode::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) raise(ErrorCode::IoError, "rename to " + path.string() + ": " + ec.message());
}

}  // namespace

std::vector<std::string> emit_report(const LemmaReport& report, const EmitConfig& cfg) {
  namespace fs = std::filesystem;
  const std::string stamp = cfg.stamp.empty() ? current_stamp() : cfg.stamp;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  if (!fs::exists(dir, ec)) {
    raise(ErrorCode::IoError, "out_dir does not exist: " + dir.string());
  }
  const std::string base = std::string(to_string(report.lemma_id)) + "-" + stamp;
  std::vector<std::string> written;
  if (cfg.format == ReportFormat::Json || cfg.format == ReportFormat::Both) {
    const fs::path p = dir / (base + ".json");
    write_atomic(p, report_to_json(report, stamp));
    written.push_back(p.string());
  }
  if (cfg.format == ReportFormat::Csv || cfg.format == ReportFormat::Both) {
    const fs::path p = dir / (base + ".csv");
    write_atomic(p, report_to_csv(report));
    written.push_back(p.string());
  }
  return written;
}

}  // namespace nevlab
