#include "lgc/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lgc {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_value(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump_value(item, indent + 2, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Short arrays of scalars (points, segments) stay on one line.
      const bool flat = v.size() <= 4 && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += flat ? ", " : ",\n";
        if (!flat) out += pad;
        dump_value(v[i], indent + 2, out);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

Json point_json(const Point2d& p) { return Json::array({p.x(), p.y()}); }
Point2d point_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }
Json segment_json(const Segment2d& s) { return Json::array({point_json(s.p), point_json(s.q)}); }
Segment2d segment_from(const Json& j) { return {point_from(j.at(0)), point_from(j.at(1))}; }

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  return f;
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* suffix) {
  return std::filesystem::path(stem.string() + suffix);
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump_value(value, 0, out);
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream f = open_out(path, std::ios::out | std::ios::binary);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw IoError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

// ---------------------------------------------------------------------------

GeometryDocument build_geometry(int n) {
  if (n < 1 || n > kMaxBarrierDepth) throw std::invalid_argument("barriers are defined for 1 <= n <= 12");
  GeometryDocument doc;
  doc.depth = n;
  doc.components = barrier(n);
  for (const auto& c : doc.components) doc.arcs.push_back({c.address, c.segment.arc});
  return doc;
}

Json geometry_to_json(const GeometryDocument& doc) {
  Json j;
  j["format"] = "lgc-geometry";
  j["version"] = 1;
  j["depth"] = doc.depth;
  Json arcs = Json::array();
  for (const auto& a : doc.arcs) {
    arcs.push_back({{"address", a.address.str()},
                    {"start_offset", a.arc.start_offset},
                    {"end_offset", a.arc.end_offset},
                    {"length", a.arc.length()}});
  }
  j["arcs"] = std::move(arcs);
  Json comps = Json::array();
  for (const auto& c : doc.components) {
    Json cj;
    cj["address"] = c.address.str();
    cj["segment"] = {{"start_offset", c.segment.arc.start_offset},
                     {"end_offset", c.segment.arc.end_offset},
                     {"chord", segment_json(c.segment.chord)},
                     {"area", c.segment.area()}};
    Json polys = Json::array();
    for (const auto& p : c.polygons) {
      Json verts = Json::array();
      for (const auto& v : p.vertices()) verts.push_back(point_json(v));
      polys.push_back({{"vertices", std::move(verts)}, {"area", p.area()}});
    }
    cj["polygons"] = std::move(polys);
    Json links = Json::array();
    for (const auto& l : c.links) links.push_back(segment_json(l));
    cj["links"] = std::move(links);
    cj["bottom"] = {{"x_lo", c.bottom.x_lo},
                    {"x_hi", c.bottom.x_hi},
                    {"cut_height", c.bottom.cut_height},
                    {"area", c.bottom.area()}};
    cj["area"] = c.area();
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  return j;
}

GeometryDocument geometry_from_json(const Json& j) {
  try {
    if (j.at("format").get<std::string>() != "lgc-geometry") throw IoError("not a geometry document");
    GeometryDocument doc;
    doc.depth = j.at("depth").get<int>();
    for (const auto& a : j.at("arcs")) {
      doc.arcs.push_back({ArcAddress::parse(a.at("address").get<std::string>()),
                          Arc{a.at("start_offset").get<double>(), a.at("end_offset").get<double>()}});
    }
    for (const auto& cj : j.at("components")) {
      BarrierComponent c;
      c.address = ArcAddress::parse(cj.at("address").get<std::string>());
      const Json& s = cj.at("segment");
      c.segment = CircularSegment{Arc{s.at("start_offset").get<double>(), s.at("end_offset").get<double>()},
                                  segment_from(s.at("chord"))};
      for (const auto& p : cj.at("polygons")) {
        std::vector<Point2d> verts;
        for (const auto& v : p.at("vertices")) verts.push_back(point_from(v));
        c.polygons.emplace_back(std::move(verts));
      }
      for (const auto& l : cj.at("links")) c.links.push_back(segment_from(l));
      const Json& b = cj.at("bottom");
      c.bottom = BottomRegion{b.at("x_lo").get<double>(), b.at("x_hi").get<double>(),
                              b.at("cut_height").get<double>()};
      doc.components.push_back(std::move(c));
    }
    return doc;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed geometry document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

namespace {

class SvgCanvas {
 public:
  explicit SvgCanvas(double size) : size_(size) {}

  std::string point(const Point2d& p) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f,%.4f", px(p.x()), py(p.y()));
    return buf;
  }
  double px(double x) const { return (x + kExtent) / (2 * kExtent) * size_; }
  double py(double y) const { return (kExtent - y) / (2 * kExtent) * size_; }
  double scale() const { return size_ / (2 * kExtent); }

 private:
  static constexpr double kExtent = 1.1;
  double size_;
};

void arc_points(double start, double end, int steps, std::vector<Point2d>& out) {
  for (int i = 0; i <= steps; ++i) out.push_back(unit_circle_point(start + (end - start) * i / steps));
}

std::vector<Point2d> outline(const Region& region) {
  std::vector<Point2d> pts;
  if (const auto* w = std::get_if<CircularSegment>(&region)) {
    arc_points(w->arc.start(), w->arc.end(), 48, pts);
  } else if (const auto* p = std::get_if<Polygon>(&region)) {
    pts = p->vertices();
  } else {
    const auto& b = std::get<BottomRegion>(region);
    const CircleArcd arc = b.bottom_arc();
    arc_points(arc.start, arc.end, 96, pts);
    pts.push_back(b.top().q);
    pts.push_back(b.top().p);
  }
  return pts;
}

}  // namespace

std::string render_svg(int n, const SvgStyle& style) {
  if (n < 1 || n > 8) throw std::invalid_argument("rendering supports 1 <= n <= 8");
  const SvgCanvas canvas(style.size);
  const std::vector<BarrierComponent> comps = barrier(n);
  static constexpr const char* kFills[] = {"#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc"};

  std::ostringstream svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                style.size, style.size, style.size, style.size);
  svg << buf;
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g id=\"barrier\" stroke=\"#333333\" stroke-width=\"0.5\">\n";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    svg << "<g id=\"component-" << comps[c].address.str() << "\" fill=\"" << kFills[c % 4] << "\">\n";
    for (const Region& r : comps[c].chain()) {
      svg << "<polygon points=\"";
      const auto pts = outline(r);
      for (std::size_t i = 0; i < pts.size(); ++i) svg << (i ? " " : "") << canvas.point(pts[i]);
      svg << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</g>\n";

  std::snprintf(buf, sizeof buf,
                "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
                canvas.px(0.0), canvas.py(0.0), canvas.scale());
  svg << buf;
  svg << "<g id=\"cantor\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"3\">\n";
  for (const Arc& a : arcs(n)) {
    std::vector<Point2d> pts;
    arc_points(a.start(), a.end(), 24, pts);
    svg << "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) svg << (i ? " " : "") << canvas.point(pts[i]);
    svg << "\"/>\n";
  }
  svg << "</g>\n";

  if (style.labels) {
    const double font = std::max(4.0, 14.0 / n);
    svg << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"" << font << "\" text-anchor=\"middle\">\n";
    for (const auto& comp : comps) {
      const auto chain = comp.chain();
      for (std::size_t k = 0; k < chain.size(); ++k) {
        std::string name = k == 0 ? "W" : k + 1 == chain.size() ? "Bot" : "T" + std::to_string(k - 1);
        const auto pts = outline(chain[k]);
        Point2d centre = Point2d::Zero();
        for (const auto& p : pts) centre += p;
        centre /= static_cast<double>(pts.size());
        std::snprintf(buf, sizeof buf, "<text x=\"%.4f\" y=\"%.4f\">", canvas.px(centre.x()), canvas.py(centre.y()));
        svg << buf << name << "(" << comp.address.str() << ")</text>\n";
      }
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// ---------------------------------------------------------------------------

Json verify_report(const std::string& suite, const std::vector<VerifyEntry>& entries) {
  Json checks = Json::array();
  std::string fingerprint;
  std::size_t failed = 0;
  for (const auto& e : entries) {
    const Check& c = e.check;
    fingerprint += e.suite + "|" + c.name + "|" + c.inputs + "\n";
    if (!c.passed()) ++failed;
    checks.push_back({{"suite", e.suite},
                      {"name", c.name},
                      {"inputs", c.inputs},
                      {"relation", c.relation == Check::Relation::Equal ? "==" : ">="},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"margin", c.margin},
                      {"converged", c.converged},
                      {"passed", c.passed()}});
  }
  Json j;
  j["suite"] = suite;
  j["passed"] = failed == 0;
  j["check_count"] = entries.size();
  j["failed_count"] = failed;
  j["inputs_hash"] = hex64(fnv1a(fingerprint));
  j["checks"] = std::move(checks);
  return j;
}

namespace {
constexpr const char* kCsvHeader = "n,resolution,energy,chord_sum_reference,K_n,K_inf,l1_mass,iterations,converged";
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, std::string_view provenance) {
  std::string out;
  if (!provenance.empty()) out += "# " + std::string(provenance) + "\n";
  out += kCsvHeader;
  out += "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.resolution) + "," + format_double(r.energy) + "," +
           format_double(r.chord_sum_reference) + "," + format_double(r.K_n) + "," + format_double(r.K_inf) + "," +
           format_double(r.l1_mass) + "," + std::to_string(r.iterations) + "," + (r.converged ? "true" : "false") +
           "\n";
  }
  return out;
}

std::vector<ExperimentRow> parse_experiment_csv(std::string_view text) {
  std::vector<ExperimentRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw IoError("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (cells.size() != 9) throw IoError("CSV row has " + std::to_string(cells.size()) + " cells: " + line);
    try {
      rows.push_back({std::stoi(cells[0]), std::stoi(cells[1]), std::stod(cells[2]), std::stod(cells[3]),
                      std::stod(cells[4]), std::stod(cells[5]), std::stod(cells[6]), std::stoi(cells[7]),
                      cells[8] == "true"});
    } catch (const std::logic_error&) {
      throw IoError("malformed CSV row: " + line);
    }
  }
  if (!header_seen) throw IoError("CSV without header");
  return rows;
}

// ---------------------------------------------------------------------------

void write_field(const std::filesystem::path& stem, const GridField& field, const Json& meta) {
  if (field.values.size() != static_cast<std::size_t>(field.nx) * field.ny) {
    throw std::invalid_argument("field size does not match its dimensions");
  }
  {
    const auto path = with_suffix(stem, ".bin");
    std::ofstream f = open_out(path, std::ios::out | std::ios::binary);
    for (double v : field.values) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char bytes[8];
      std::memcpy(bytes, &bits, 8);
      f.write(bytes, 8);
    }
    if (!f) throw IoError("failed writing '" + path.string() + "'");
  }
  Json header;
  header["format"] = "lgc-field";
  header["dtype"] = "float64";
  header["byte_order"] = "little";
  header["layout"] = "row-major";
  header["nx"] = field.nx;
  header["ny"] = field.ny;
  header["h"] = field.h;
  header["x0"] = field.x0;
  header["y0"] = field.y0;
  header["data"] = with_suffix(stem, ".bin").filename().string();
  header["meta"] = meta;
  write_text(with_suffix(stem, ".json"), dump_json(header));
}

GridField read_field(const std::filesystem::path& stem) {
  const Json header = read_json(with_suffix(stem, ".json"));
  GridField field;
  try {
    if (header.at("format").get<std::string>() != "lgc-field") throw IoError("not a field header");
    field.nx = header.at("nx").get<int>();
    field.ny = header.at("ny").get<int>();
    field.h = header.at("h").get<double>();
    field.x0 = header.at("x0").get<double>();
    field.y0 = header.at("y0").get<double>();
  } catch (const Json::exception& e) {
    throw IoError("malformed field header '" + with_suffix(stem, ".json").string() + "': " + e.what());
  }
  const std::string bytes = read_text(with_suffix(stem, ".bin"));
  const std::size_t count = static_cast<std::size_t>(field.nx) * field.ny;
  if (bytes.size() != count * 8) throw IoError("field data size mismatch in '" + stem.string() + ".bin'");
  field.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, bytes.data() + 8 * i, 8);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    field.values[i] = std::bit_cast<double>(bits);
  }
  return field;
}

}  // namespace lgc
