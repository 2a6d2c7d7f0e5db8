#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "apsp/bench.hpp"
#include "apsp/error.hpp"

namespace apsp {

namespace {

std::string fmt(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return {buf.data(), end};
}

void sort_records(std::vector<BenchRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) {
                     return std::tuple(a.n, a.tb, a.threads, a.elem_type) <
                            std::tuple(b.n, b.tb, b.threads, b.elem_type);
                   });
}

std::string render_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "n,tb,threads,dtype,reps,mean_s,min_s,stddev_s,gflops_mean,gflops_peak\n";
  for (const BenchRecord& r : records) {
    if (!r.ok) continue;
    out << r.n << ',' << r.tb << ',' << r.threads << ',' << to_string(r.elem_type)
        << ',' << r.reps << ',' << fmt(r.mean_s) << ',' << fmt(r.min_s) << ','
        << fmt(r.stddev_s) << ',' << fmt(r.gflops_mean) << ',' << fmt(r.gflops_peak)
        << '\n';
  }
  return out.str();
}

nlohmann::json record_json(const BenchRecord& r) {
  nlohmann::json obj{{"n", r.n},
                     {"tb", r.tb},
                     {"threads", r.threads},
                     {"dtype", to_string(r.elem_type)},
                     {"reps", r.reps},
                     {"mean_s", r.mean_s},
                     {"min_s", r.min_s},
                     {"stddev_s", r.stddev_s},
                     {"gflops_mean", r.gflops_mean},
                     {"gflops_peak", r.gflops_peak}};
  if (!r.ok) obj["error"] = r.error;
  return obj;
}

std::string render_json(const std::vector<BenchRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const BenchRecord& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

std::string render_markdown(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  for (const ElemType type : {ElemType::F32, ElemType::F64}) {
    bool any = false;
    for (const BenchRecord& r : records) {
      if (r.elem_type != type || !r.ok) continue;
      if (!any) {
        out << "## " << to_string(type) << "\n\n"
            << "| n | tb | threads | reps | mean_s | min_s | stddev_s | gflops_mean "
               "| gflops_peak |\n"
            << "|---|----|---------|------|--------|-------|----------|-------------"
               "|-------------|\n";
        any = true;
      }
      out << "| " << r.n << " | " << r.tb << " | " << r.threads << " | " << r.reps
          << " | " << fmt(r.mean_s) << " | " << fmt(r.min_s) << " | "
          << fmt(r.stddev_s) << " | " << fmt(r.gflops_mean) << " | "
          << fmt(r.gflops_peak) << " |\n";
    }
    if (any) out << "\n";
  }
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view token) {
  if (token == "csv") return ReportFormat::Csv;
  if (token == "json") return ReportFormat::Json;
  if (token == "markdown") return ReportFormat::Markdown;
  throw DomainError("unknown report format '" + std::string(token) +
                    "' (expected csv, json, or markdown)");
}

std::string render_report(std::vector<BenchRecord> records, ReportFormat format) {
  if (records.empty()) throw DomainError("render_report: no records");
  sort_records(records);
  switch (format) {
    case ReportFormat::Csv:
      return render_csv(records);
    case ReportFormat::Json:
      return render_json(records);
    case ReportFormat::Markdown:
      return render_markdown(records);
  }
  throw DomainError("unknown report format");
}

std::vector<BenchRecord> parse_records_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("bad records JSON: ") + e.what());
  }
  if (!doc.is_array()) throw FormatError("records JSON must be an array");
  std::vector<BenchRecord> records;
  for (const auto& obj : doc) {
    BenchRecord r;
    try {
      r.n = obj.at("n").get<std::size_t>();
      r.tb = obj.at("tb").get<std::size_t>();
      r.threads = obj.at("threads").get<unsigned>();
      const auto dtype = obj.at("dtype").get<std::string>();
      if (dtype == "f32") {
        r.elem_type = ElemType::F32;
      } else if (dtype == "f64") {
        r.elem_type = ElemType::F64;
      } else {
        throw FormatError("unknown dtype '" + dtype + "'");
      }
      r.reps = obj.at("reps").get<int>();
      r.mean_s = obj.at("mean_s").get<double>();
      r.min_s = obj.at("min_s").get<double>();
      r.stddev_s = obj.at("stddev_s").get<double>();
      r.gflops_mean = obj.at("gflops_mean").get<double>();
      r.gflops_peak = obj.at("gflops_peak").get<double>();
      if (obj.contains("error")) {
        r.ok = false;
        r.error = obj.at("error").get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad record field: ") + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace apsp
