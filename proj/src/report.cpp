#include "cosieve/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cosieve {

std::string format_sig(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  // %g never emits locale separators when given the C locale format; snprintf
  // with %.*g is enough because the project never calls setlocale
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

Csv::Csv(std::vector<std::string> header) : columns_(header.size()) {
  row(header);
}

void Csv::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::invalid_argument("csv row width mismatch");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) data_ += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      data_ += '"';
      for (char ch : c) {
        if (ch == '"') data_ += '"';
        data_ += ch;
      }
      data_ += '"';
    } else {
      data_ += c;
    }
  }
  data_ += '\n';
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

namespace {

std::string event_name(EventKind k) {
  switch (k) {
    case EventKind::Reducible: return "reducible";
    case EventKind::NotMaxGalois: return "not_max_galois";
    case EventKind::SquareEntry: return "square_entry";
  }
  return "?";
}

}  // namespace

Csv experiment_csv(const ExperimentReport& report) {
  Csv csv({"k", "trials", "count", "undetermined", "freq", "wilson_lo",
           "wilson_hi"});
  for (const auto& s : report.stats)
    csv.row({std::to_string(s.k), std::to_string(s.trials),
             std::to_string(s.count), std::to_string(s.undetermined),
             format_sig(s.freq), format_sig(s.wilson_lo),
             format_sig(s.wilson_hi)});
  return csv;
}

Json experiment_json(const ExperimentReport& report) {
  Json j;
  j["event"] = event_name(report.event.kind);
  if (report.event.kind == EventKind::NotMaxGalois)
    j["galois_budget"] = report.event.galois_budget;
  j["checkpoints"] = Json::array();
  for (const auto& s : report.stats) {
    Json c;
    c["k"] = s.k;
    c["trials"] = s.trials;
    c["count"] = s.count;
    c["undetermined"] = s.undetermined;
    c["freq"] = format_sig(s.freq);
    c["wilson_lo"] = format_sig(s.wilson_lo);
    c["wilson_hi"] = format_sig(s.wilson_hi);
    j["checkpoints"].push_back(std::move(c));
  }
  Json f;
  f["valid"] = report.fit.valid;
  f["points"] = report.fit.points;
  if (report.fit.valid) {
    f["slope"] = format_sig(report.fit.slope);
    f["intercept"] = format_sig(report.fit.intercept);
    f["r2"] = format_sig(report.fit.r2);
    f["slope_stderr"] = format_sig(report.fit.slope_stderr);
    f["slope_negative_95"] = report.fit.slope_negative_95;
  }
  j["fit"] = std::move(f);
  return j;
}

Csv density_csv(const std::vector<DensityRecord>& records) {
  Csv csv({"lemma", "N", "ell", "model", "label", "lhs", "rhs", "in_regime",
           "pass", "note"});
  for (const auto& r : records)
    csv.row({r.lemma, std::to_string(r.N), std::to_string(r.ell), r.model,
             r.label, r.lhs.get_str(), bound_str(r.rhs),
             r.in_regime ? "1" : "0", r.pass ? "1" : "0", r.note});
  return csv;
}

Json density_json(const std::vector<DensityRecord>& records) {
  Json j = Json::array();
  for (const auto& r : records) {
    Json e;
    e["lemma"] = r.lemma;
    e["N"] = r.N;
    e["ell"] = r.ell;
    e["model"] = r.model;
    e["label"] = r.label;
    e["lhs"] = r.lhs.get_str();
    e["rhs"] = bound_str(r.rhs);
    e["in_regime"] = r.in_regime;
    e["pass"] = r.pass;
    e["note"] = r.note;
    j.push_back(std::move(e));
  }
  return j;
}

}  // namespace cosieve
