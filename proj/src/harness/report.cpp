#include "acm/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "acm/errors.hpp"
#include "acm/harness/stats.hpp"

namespace acm::harness {
namespace {

namespace fs = std::filesystem;

std::string num(double v, const char* format = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string opt_num(const std::optional<double>& v, const char* format = "%.9g") {
  return v ? num(*v, format) : std::string();
}

void write_file(const fs::path& path, const std::string& content, std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
  written.push_back(path);
}

std::size_t query_count(const RunReport& report) {
  if (report.baseline) {
    return report.baseline->queries.size();
  }
  return report.acm ? report.acm->queries.size() : 0;
}

std::string latency_csv(const RunReport& report) {
  std::ostringstream out;
  out << "query,baseline_ms,acm_ms\n";
  const std::size_t n = query_count(report);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& label = report.baseline ? report.baseline->queries[i].label : report.acm->queries[i].label;
    out << label << ',';
    if (report.baseline) {
      out << num(report.baseline->queries[i].latency_ms);
    }
    out << ',';
    if (report.acm) {
      out << num(report.acm->queries[i].latency_ms);
    }
    out << '\n';
  }
  return out.str();
}

std::string correlation_csv(const RunReport& report) {
  std::ostringstream out;
  out << "mode,nodes,pearson\n";
  for (const auto* run : {report.baseline ? &*report.baseline : nullptr, report.acm ? &*report.acm : nullptr}) {
    if (run != nullptr) {
      out << to_string(run->mode) << ',' << run->nodes.size() << ',' << opt_num(run->correlation, "%.6f") << '\n';
    }
  }
  return out.str();
}

std::string nodes_csv(const RunReport& report) {
  std::ostringstream out;
  out << "mode,query,op_type,table,cost,time_ms\n";
  for (const auto* run : {report.baseline ? &*report.baseline : nullptr, report.acm ? &*report.acm : nullptr}) {
    if (run == nullptr) {
      continue;
    }
    for (const auto& n : run->nodes) {
      out << to_string(run->mode) << ',' << run->queries[n.query].label << ',' << to_string(n.op_type) << ','
          << n.table_id << ',' << num(n.cost) << ',' << num(n.time_ms) << '\n';
    }
  }
  return out.str();
}

std::string trajectory_csv(const RunReport& report) {
  std::ostringstream out;
  out << "model,key,pass,step,c_t,c_o,c_i,smoothed_c_t,smoothed_c_o,smoothed_c_i,n_samples,"
         "qc,predicted_hit_ratio,observed_hit_ratio,random_page_cost\n";
  if (!report.acm) {
    return out.str();
  }
  for (const auto& h : report.acm->cpu_history) {
    out << "cpu," << to_string(h.op_type) << ",," << h.step << ',' << opt_num(h.fit.cpu_tuple_cost) << ','
        << opt_num(h.fit.cpu_operator_cost) << ',' << opt_num(h.fit.cpu_index_tuple_cost) << ','
        << num(h.smoothed.cpu_tuple_cost, "%.9g") << ',' << num(h.smoothed.cpu_operator_cost, "%.9g") << ','
        << num(h.smoothed.cpu_index_tuple_cost, "%.9g") << ',' << h.fit.n_samples << ",,,,\n";
  }
  for (const auto& p : report.acm->disk_trajectory) {
    out << "disk," << p.table_id << ',' << p.pass << ',' << p.query << ",,,,,,,," << p.qc << ','
        << opt_num(p.predicted_hit_ratio) << ',' << opt_num(p.observed_hit_ratio) << ','
        << num(p.random_page_cost, "%.9g") << '\n';
  }
  return out.str();
}

std::string join_labels(const std::vector<PlanFlip>& flips) {
  std::string out;
  for (const auto& f : flips) {
    if (!out.empty()) {
      out += ' ';
    }
    out += f.label + "(" + std::string(to_string(f.baseline_path)) + "->" + std::string(to_string(f.acm_path)) + ")";
  }
  return out;
}

struct Panel {
  std::string title;
  const ModeRun* run;
};

void render_panel(std::ostringstream& svg, const Panel& panel, double x0, double y0, double w, double h) {
  const double pad = 50.0;
  svg << "<g>\n";
  svg << "<rect x=\"" << num(x0, "%.1f") << "\" y=\"" << num(y0, "%.1f") << "\" width=\"" << num(w, "%.1f")
      << "\" height=\"" << num(h, "%.1f") << "\" fill=\"white\" stroke=\"#888\"/>\n";
  std::string title = panel.title;
  if (panel.run != nullptr && panel.run->correlation) {
    title += " (r = " + num(*panel.run->correlation, "%.3f") + ")";
  }
  svg << "<text x=\"" << num(x0 + w / 2, "%.1f") << "\" y=\"" << num(y0 + 20, "%.1f")
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "<text x=\"" << num(x0 + w / 2, "%.1f") << "\" y=\"" << num(y0 + h - 10, "%.1f")
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">node cost</text>\n";
  svg << "<text x=\"" << num(x0 + 14, "%.1f") << "\" y=\"" << num(y0 + h / 2, "%.1f")
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 "
      << num(x0 + 14, "%.1f") << ' ' << num(y0 + h / 2, "%.1f") << ")\">time (ms)</text>\n";
  const double px0 = x0 + pad;
  const double py0 = y0 + h - pad;
  const double pw = w - 1.5 * pad;
  const double ph = h - 2.0 * pad;
  svg << "<line x1=\"" << num(px0, "%.1f") << "\" y1=\"" << num(py0, "%.1f") << "\" x2=\"" << num(px0 + pw, "%.1f")
      << "\" y2=\"" << num(py0, "%.1f") << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << num(px0, "%.1f") << "\" y1=\"" << num(py0, "%.1f") << "\" x2=\"" << num(px0, "%.1f")
      << "\" y2=\"" << num(py0 - ph, "%.1f") << "\" stroke=\"black\"/>\n";
  if (panel.run != nullptr && !panel.run->nodes.empty()) {
    double max_cost = 0.0;
    double max_time = 0.0;
    for (const auto& n : panel.run->nodes) {
      max_cost = std::max(max_cost, n.cost);
      max_time = std::max(max_time, n.time_ms);
    }
    max_cost = max_cost > 0.0 ? max_cost : 1.0;
    max_time = max_time > 0.0 ? max_time : 1.0;
    svg << "<text x=\"" << num(px0 + pw, "%.1f") << "\" y=\"" << num(py0 + 15, "%.1f")
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(max_cost, "%.4g")
        << "</text>\n";
    svg << "<text x=\"" << num(px0 - 4, "%.1f") << "\" y=\"" << num(py0 - ph + 4, "%.1f")
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(max_time, "%.4g")
        << "</text>\n";
    for (const auto& n : panel.run->nodes) {
      const char* colour = n.op_type == OperatorType::SeqScan     ? "#1f77b4"
                           : n.op_type == OperatorType::IndexScan ? "#d62728"
                                                                  : "#2ca02c";
      svg << "<circle cx=\"" << num(px0 + pw * n.cost / max_cost, "%.2f") << "\" cy=\""
          << num(py0 - ph * n.time_ms / max_time, "%.2f") << "\" r=\"2.5\" fill=\"" << colour
          << "\" fill-opacity=\"0.6\"/>\n";
    }
  }
  svg << "</g>\n";
}

}  // namespace

std::string render_scatter_svg(const RunReport& report) {
  const double panel_w = 440.0;
  const double panel_h = 380.0;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(2 * panel_w + 30, "%.0f") << "\" height=\""
      << num(panel_h + 40, "%.0f") << "\">\n";
  render_panel(svg, {"baseline", report.baseline ? &*report.baseline : nullptr}, 10, 10, panel_w, panel_h);
  render_panel(svg, {"acm", report.acm ? &*report.acm : nullptr}, 20 + panel_w, 10, panel_w, panel_h);
  svg << "<text x=\"20\" y=\"" << num(panel_h + 32, "%.0f")
      << "\" font-family=\"sans-serif\" font-size=\"11\">blue: SeqScan, red: IndexScan, green: Agg</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string render_summary(const RunReport& report) {
  std::ostringstream out;
  out << "queries: " << query_count(report) << '\n';
  const ModeRun* any = report.baseline ? &*report.baseline : (report.acm ? &*report.acm : nullptr);
  if (any != nullptr) {
    out << "warmup_passes: " << any->warmup << '\n';
  }
  if (report.baseline) {
    out << "baseline_total_ms: " << num(report.baseline->total_latency_ms()) << '\n';
    out << "baseline_correlation: " << opt_num(report.baseline->correlation, "%.6f") << '\n';
  }
  if (report.acm) {
    out << "acm_total_ms: " << num(report.acm->total_latency_ms()) << '\n';
    out << "acm_correlation: " << opt_num(report.acm->correlation, "%.6f") << '\n';
  }
  if (report.baseline && report.acm) {
    std::vector<double> b;
    std::vector<double> a;
    for (std::size_t i = 0; i < report.baseline->queries.size(); ++i) {
      b.push_back(report.baseline->queries[i].latency_ms);
      a.push_back(report.acm->queries[i].latency_ms);
    }
    if (report.baseline->total_latency_ms() > 0.0) {
      out << "improvement_pct: " << num(100.0 * latency_improvement(b, a), "%.4f") << '\n';
    } else {
      out << "improvement_pct: \n";
    }
    out << "plan_flips: " << report.flips.size() << '\n';
    out << "flipped_queries: " << join_labels(report.flips) << '\n';
    if (!report.flips.empty()) {
      std::vector<double> fb;
      std::vector<double> fa;
      for (const auto& f : report.flips) {
        fb.push_back(f.baseline_ms);
        fa.push_back(f.acm_ms);
      }
      double total = 0.0;
      for (double v : fb) {
        total += v;
      }
      if (total > 0.0) {
        out << "flipped_improvement_pct: " << num(100.0 * latency_improvement(fb, fa), "%.4f") << '\n';
      }
    }
  }
  return out.str();
}

std::vector<fs::path> write_report(const RunReport& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError(out_dir.string(), ec.message());
  }
  std::vector<fs::path> written;
  write_file(out_dir / "latency.csv", latency_csv(report), written);
  write_file(out_dir / "correlation.csv", correlation_csv(report), written);
  write_file(out_dir / "nodes.csv", nodes_csv(report), written);
  write_file(out_dir / "params_trajectory.csv", trajectory_csv(report), written);
  write_file(out_dir / "scatter_cost_time.svg", render_scatter_svg(report), written);
  write_file(out_dir / "summary.txt", render_summary(report), written);
  return written;
}

}  // namespace acm::harness
