#include "tweetpol/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "tweetpol/errors.hpp"

namespace tweetpol {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string markdown_cell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string spoke_label(const ExperimentResult& r) {
  std::string label(representation_family(r.config.representation));
  if (const auto* g = std::get_if<NGramRepresentation>(&r.config.representation)) {
    label += std::to_string(g->n);
  } else if (const auto* g = std::get_if<NGramGraphRepresentation>(&r.config.representation)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu@%g", g->n, g->prune_threshold);
    label += buf;
  }
  return label + " " + method_name(r.config.method);
}

constexpr const char* kColumns[] = {"representation", "n", "prune_threshold", "method",
                                    "balanced", "confidence_ratio", "duration_ms"};

}  // namespace

ReportBundle::ReportBundle(std::vector<ExperimentResult> results) : results_(std::move(results)) {
  if (results_.empty()) throw ArgumentError("report bundle has no successful results");
}

ReportBundle ReportBundle::from_entries(const std::vector<MatrixEntry>& entries) {
  std::vector<ExperimentResult> ok;
  for (const MatrixEntry& e : entries) {
    if (e.ok()) ok.push_back(*e.result);
  }
  return ReportBundle(std::move(ok));
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  if (name == "markdown") return TableFormat::Markdown;
  throw ArgumentError("unknown table format '" + std::string(name) + "'");
}

std::vector<TableRow> table_rows(const ReportBundle& bundle) {
  std::vector<const ExperimentResult*> order;
  for (const auto& r : bundle.results()) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->confidence_ratio > b->confidence_ratio;
  });

  std::vector<TableRow> rows;
  for (const ExperimentResult* r : order) {
    TableRow row;
    row.representation = representation_family(r->config.representation);
    if (const auto* g = std::get_if<NGramRepresentation>(&r->config.representation)) {
      row.n = std::to_string(g->n);
    } else if (const auto* g =
                   std::get_if<NGramGraphRepresentation>(&r->config.representation)) {
      row.n = std::to_string(g->n);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%g", g->prune_threshold);
      row.prune_threshold = buf;
    }
    row.method = method_name(r->config.method);
    row.balanced = r->config.balanced;
    row.confidence_ratio = fixed(r->confidence_ratio, 4);
    if (r->duration_ms > 0.0) row.duration_ms = fixed(r->duration_ms, 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit_table(const ReportBundle& bundle, TableFormat format) {
  const auto rows = table_rows(bundle);
  std::ostringstream out;
  switch (format) {
    case TableFormat::Csv: {
      for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        out << (i ? "," : "") << kColumns[i];
      }
      out << '\n';
      for (const TableRow& r : rows) {
        out << csv_field(r.representation) << ',' << r.n << ',' << r.prune_threshold << ','
            << csv_field(r.method) << ',' << (r.balanced ? "true" : "false") << ','
            << r.confidence_ratio << ',' << r.duration_ms << '\n';
      }
      break;
    }
    case TableFormat::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const TableRow& r : rows) {
        arr.push_back({{"representation", r.representation},
                       {"n", r.n},
                       {"prune_threshold", r.prune_threshold},
                       {"method", r.method},
                       {"balanced", r.balanced},
                       {"confidence_ratio", r.confidence_ratio},
                       {"duration_ms", r.duration_ms}});
      }
      out << nlohmann::json{{"schema", "tweetpol-table"}, {"version", 1}, {"rows", arr}}.dump(2)
          << '\n';
      break;
    }
    case TableFormat::Markdown: {
      out << '|';
      for (const char* c : kColumns) out << ' ' << c << " |";
      out << "\n|";
      for (std::size_t i = 0; i < std::size(kColumns); ++i) out << (i >= 5 ? " ---: |" : " --- |");
      out << '\n';
      for (const TableRow& r : rows) {
        out << "| " << markdown_cell(r.representation) << " | " << r.n << " | "
            << r.prune_threshold << " | " << markdown_cell(r.method) << " | "
            << (r.balanced ? "yes" : "no") << " | " << r.confidence_ratio << " | "
            << r.duration_ms << " |\n";
      }
      break;
    }
  }
  return out.str();
}

std::vector<TableRow> parse_table_json(std::string_view document) {
  try {
    const auto doc = nlohmann::json::parse(document);
    if (doc.value("schema", "") != "tweetpol-table" || doc.value("version", 0) != 1) {
      throw ArgumentError("not a tweetpol table document");
    }
    std::vector<TableRow> rows;
    for (const auto& j : doc.at("rows")) {
      TableRow r;
      r.representation = j.at("representation").get<std::string>();
      r.n = j.at("n").get<std::string>();
      r.prune_threshold = j.at("prune_threshold").get<std::string>();
      r.method = j.at("method").get<std::string>();
      r.balanced = j.at("balanced").get<bool>();
      r.confidence_ratio = j.at("confidence_ratio").get<std::string>();
      r.duration_ms = j.at("duration_ms").get<std::string>();
      rows.push_back(std::move(r));
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed table document: ") + e.what());
  }
}

RadialLayout radial_layout(const ReportBundle& bundle, double max_radius) {
  RadialLayout layout;
  layout.max_radius = max_radius;
  for (std::string_view family : {"bow", "ngram", "graph"}) {
    for (const auto& r : bundle.results()) {
      if (representation_family(r.config.representation) == family) {
        layout.families.emplace_back(family);
        break;
      }
    }
  }

  const double sector = 2.0 * std::numbers::pi / static_cast<double>(layout.families.size());
  for (std::size_t s = 0; s < layout.families.size(); ++s) {
    std::vector<const ExperimentResult*> members;
    for (const auto& r : bundle.results()) {
      if (representation_family(r.config.representation) == layout.families[s]) {
        members.push_back(&r);
      }
    }
    const double step = sector / static_cast<double>(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      RadialPoint p;
      p.family = layout.families[s];
      p.label = spoke_label(*members[i]);
      p.confidence_ratio = members[i]->confidence_ratio;
      p.angle = static_cast<double>(s) * sector + (static_cast<double>(i) + 0.5) * step;
      p.radius = p.confidence_ratio * max_radius;
      p.x = p.radius * std::sin(p.angle);
      p.y = -p.radius * std::cos(p.angle);
      layout.points.push_back(std::move(p));
    }
  }
  return layout;
}

std::string emit_radial_chart(const ReportBundle& bundle) {
  const RadialLayout layout = radial_layout(bundle);
  const double r = layout.max_radius;
  const double margin = 120.0;
  const double c = r + margin;
  const char* colours[] = {"#1b9e77", "#d95f02", "#7570b3"};
  auto colour_of = [&](const std::string& family) {
    const auto it = std::find(layout.families.begin(), layout.families.end(), family);
    return colours[static_cast<std::size_t>(it - layout.families.begin()) % 3];
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << 2 * c
      << "\" height=\"" << 2 * c << "\" viewBox=\"0 0 " << 2 * c << ' ' << 2 * c << "\">\n"
      << "<g transform=\"translate(" << c << ',' << c << ")\" font-family=\"sans-serif\" "
      << "font-size=\"10\">\n";
  for (int ring = 1; ring <= 4; ++ring) {
    svg << "<circle cx=\"0\" cy=\"0\" r=\"" << r * ring / 4.0
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  }
  const double sector = 2.0 * std::numbers::pi / static_cast<double>(layout.families.size());
  for (std::size_t s = 0; s < layout.families.size(); ++s) {
    const double a = static_cast<double>(s) * sector;
    const double mid = a + sector / 2.0;
    if (layout.families.size() > 1) {
      svg << "<line x1=\"0\" y1=\"0\" x2=\"" << r * std::sin(a) << "\" y2=\"" << -r * std::cos(a)
          << "\" stroke=\"#999999\"/>\n";
    }
    svg << "<text x=\"" << (r + 60) * std::sin(mid) << "\" y=\"" << -(r + 60) * std::cos(mid)
        << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"" << colour_of(layout.families[s])
        << "\">" << xml_escape(layout.families[s]) << "</text>\n";
  }
  for (const RadialPoint& p : layout.points) {
    const char* colour = colour_of(p.family);
    svg << "<line class=\"spoke\" x1=\"0\" y1=\"0\" x2=\"" << p.x << "\" y2=\"" << p.y
        << "\" stroke=\"" << colour << "\"/>\n"
        << "<circle class=\"point\" cx=\"" << p.x << "\" cy=\"" << p.y
        << "\" r=\"3\" fill=\"" << colour << "\"><title>" << xml_escape(p.label) << ": "
        << fixed(p.confidence_ratio, 4) << "</title></circle>\n";
  }
  svg << "<text x=\"0\" y=\"" << -r - 4 << "\" text-anchor=\"middle\" fill=\"#666666\">100%</text>\n"
      << "</g>\n</svg>\n";
  return svg.str();
}

nlohmann::json timings_document(const std::vector<MatrixEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const MatrixEntry& e : entries) {
    arr.push_back(e.ok() ? nlohmann::json(e.result->duration_ms) : nlohmann::json(nullptr));
  }
  return {{"schema", "tweetpol-timings"}, {"version", 1}, {"duration_ms", arr}};
}

void apply_timings(std::vector<MatrixEntry>& entries, const nlohmann::json& timings) {
  if (!timings.is_object() || !timings.contains("duration_ms") ||
      !timings.at("duration_ms").is_array()) {
    throw ArgumentError("malformed timings document");
  }
  const auto& arr = timings.at("duration_ms");
  if (arr.size() != entries.size()) {
    throw ArgumentError("timings document does not match the results");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].ok() && arr[i].is_number()) entries[i].result->duration_ms = arr[i].get<double>();
  }
}

}  // namespace tweetpol
