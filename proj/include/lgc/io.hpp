#pragma once

// Persistence and figures: geometry JSON, SVG rendering, verification
// reports, experiment CSV and raw field dumps.
//
// Every number written by this module uses 17 significant digits, so equal
// inputs give byte-identical files and every double reads back unchanged.

#include "lgc/barrier.hpp"
#include "lgc/lemmas.hpp"
#include "lgc/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// JSON text with two-space indentation and %.17g numbers.
std::string dump_json(const Json& value);
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a, used to fingerprint report inputs.
std::uint64_t fnv1a(std::string_view text);
std::string hex64(std::uint64_t value);

// ---------------------------------------------------------------------------
// Geometry

struct ArcRecord {
  ArcAddress address;
  Arc arc;
};

struct GeometryDocument {
  int depth = 0;
  std::vector<ArcRecord> arcs;
  std::vector<BarrierComponent> components;
};

/// Arcs of C_n and components of B_n, n in [1, 12].
GeometryDocument build_geometry(int n);
Json geometry_to_json(const GeometryDocument& doc);
GeometryDocument geometry_from_json(const Json& json);

// ---------------------------------------------------------------------------
// SVG

struct SvgStyle {
  double size = 800.0;  // pixels per side
  bool labels = false;
};

/// Unit circle, highlighted arcs of C_n and filled components of B_n,
/// n in [1, 8]. Labels name the pieces W, T_k and Bot.
std::string render_svg(int n, const SvgStyle& style = {});

// ---------------------------------------------------------------------------
// Reports, CSV and fields

struct VerifyEntry {
  std::string suite;
  Check check;
};

Json verify_report(const std::string& suite, const std::vector<VerifyEntry>& entries);

/// Header plus one row per experiment row.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, std::string_view provenance = {});
std::vector<ExperimentRow> parse_experiment_csv(std::string_view text);

/// Writes `<stem>.bin` (row-major little-endian float64) and `<stem>.json`
/// (dimensions, spacing, origin and `meta`).
void write_field(const std::filesystem::path& stem, const GridField& field, const Json& meta = Json::object());
GridField read_field(const std::filesystem::path& stem);

}  // namespace lgc
