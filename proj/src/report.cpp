// Copyright 2026 The evacshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "evacshare/experiment.hpp"
#include "evacshare/lp_format.hpp"

namespace evacshare {

namespace {

constexpr const char* kHeader = "r_ratio,t_max,method,objective,EP,ATD,status,seconds";

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c != '"') {
        field += c;
      } else if (i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else {
        quoted = false;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      record.clear();
      field.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  return records;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad number '" + text + "'");
  return v;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string label;
  std::vector<const SweepRow*> rows;
};

}  // namespace

std::string report_csv(const SweepReport& report) {
  if (report.rows.empty()) throw EmptyReport("report has no rows");
  std::string out = std::string(kHeader) + "\r\n";
  for (const auto& row : report.rows) {
    out += format_number(row.r_ratio) + ',' + format_number(row.t_max) + ',' + csv_field(row.method) + ',';
    out += (row.objective ? std::to_string(*row.objective) : std::string()) + ',';
    out += (row.ep ? format_number(*row.ep) : std::string()) + ',';
    out += (row.atd ? format_number(*row.atd) : std::string()) + ',';
    out += csv_field(row.status) + ',' + format_number(row.seconds) + "\r\n";
  }
  return out;
}

SweepReport parse_report_csv(const std::string& text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw std::invalid_argument("empty CSV");
  std::string header;
  for (std::size_t i = 0; i < records[0].size(); ++i) header += (i ? "," : "") + records[0][i];
  if (header != kHeader) throw std::invalid_argument("unexpected CSV header '" + header + "'");
  SweepReport report;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r];
    if (f.size() != 8) throw std::invalid_argument("CSV record " + std::to_string(r) + " has wrong field count");
    SweepRow row;
    row.r_ratio = parse_double(f[0]);
    row.t_max = parse_double(f[1]);
    row.method = f[2];
    if (!f[3].empty()) row.objective = std::stoi(f[3]);
    if (!f[4].empty()) row.ep = parse_double(f[4]);
    if (!f[5].empty()) row.atd = parse_double(f[5]);
    row.status = f[6];
    row.seconds = parse_double(f[7]);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string report_svg(const SweepReport& report) {
  if (report.rows.empty()) throw EmptyReport("report has no rows");

  // One series per (method, ratio), in order of first appearance.
  std::vector<Series> series;
  std::map<std::pair<std::string, double>, std::size_t> index;
  for (const auto& row : report.rows) {
    auto [it, inserted] = index.try_emplace({row.method, row.r_ratio}, series.size());
    if (inserted) series.push_back({row.method + " r=" + format_number(row.r_ratio), {}});
    series[it->second].rows.push_back(&row);
  }
  for (auto& s : series) {
    std::stable_sort(s.rows.begin(), s.rows.end(),
                     [](const SweepRow* a, const SweepRow* b) { return a->t_max < b->t_max; });
  }

  double t_lo = report.rows.front().t_max, t_hi = t_lo, atd_hi = 0.0;
  for (const auto& row : report.rows) {
    t_lo = std::min(t_lo, row.t_max);
    t_hi = std::max(t_hi, row.t_max);
    if (row.atd) atd_hi = std::max(atd_hi, *row.atd);
  }
  if (t_hi == t_lo) t_hi = t_lo + 1.0;
  if (atd_hi <= 0.0) atd_hi = 1.0;

  const double width = 420, height = 300, margin = 50, gap = 40;
  const double legend_h = 18.0 * static_cast<double>(series.size()) + 20;
  const double total_w = 2 * width + gap + 2 * margin;
  const double total_h = height + 2 * margin + legend_h;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed(total_w) << "\" height=\""
      << fixed(total_h) << "\" viewBox=\"0 0 " << fixed(total_w) << ' ' << fixed(total_h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto chart = [&](double x0, const std::string& title, double y_hi, bool use_ep) {
    const double y0 = margin;
    out << "<g>\n";
    out << "<text x=\"" << fixed(x0 + width / 2) << "\" y=\"" << fixed(y0 - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << xml_escape(title) << "</text>\n";
    out << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(width) << "\" height=\""
        << fixed(height) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
      const double frac = tick / 4.0;
      const double ty = y0 + height - frac * height;
      out << "<text x=\"" << fixed(x0 - 5) << "\" y=\"" << fixed(ty + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fixed(frac * y_hi) << "</text>\n";
      const double tx = x0 + frac * width;
      out << "<text x=\"" << fixed(tx) << "\" y=\"" << fixed(y0 + height + 14)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
          << fixed(t_lo + frac * (t_hi - t_lo)) << "</text>\n";
    }
    out << "<text x=\"" << fixed(x0 + width / 2) << "\" y=\"" << fixed(y0 + height + 32)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t_max (minutes)</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
      std::string points;
      for (const SweepRow* row : series[s].rows) {
        const auto& value = use_ep ? row->ep : row->atd;
        if (!value) continue;
        const double px = x0 + (row->t_max - t_lo) / (t_hi - t_lo) * width;
        const double py = y0 + height - *value / y_hi * height;
        if (!points.empty()) points += ' ';
        points += fixed(px) + ',' + fixed(py);
      }
      out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % std::size(kPalette)]
          << "\" stroke-width=\"2\" points=\"" << points << "\"/>\n";
    }
    out << "</g>\n";
  };
  chart(margin, "EP vs t_max", 1.0, true);
  chart(margin + width + gap, "ATD (miles) vs t_max", atd_hi, false);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = margin + height + 50 + 18.0 * static_cast<double>(s);
    out << "<line x1=\"" << fixed(margin) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(margin + 24) << "\" y2=\""
        << fixed(ly) << "\" stroke=\"" << kPalette[s % std::size(kPalette)] << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fixed(margin + 30) << "\" y=\"" << fixed(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(series[s].label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace evacshare
