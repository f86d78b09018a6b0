#pragma once

#include "dp/admissible.hpp"
#include "dp/dynamics.hpp"
#include "dp/functionals.hpp"
#include "dp/grid.hpp"
#include "dp/stability.hpp"
#include "dp/waves.hpp"

#include <nlohmann/json_fwd.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace dp::io {

/// Doubles are rendered with 17 significant digits everywhere, so identical
/// runs produce byte-identical files.
std::string fmt17(double x);

void write_grid_csv(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_grid_csv(const std::filesystem::path& path);

void write_trace_csv(const EvolutionTrace& t, const std::filesystem::path& path);

nlohmann::json landmarks_json(const std::vector<Landmark>& table);
nlohmann::json energy_json(const EnergyPair& E, const EnergyPair& F);
nlohmann::json stability_report_json(const StabilityReport& r);
std::string stability_report_csv_row(const StabilityReport& r);

/// MeasureData as {atoms: [{pos, mass}], density_csv: path-or-null}; the
/// density grid is written alongside when nonzero.
void write_measure_json(const MeasureData& y, const std::filesystem::path& path);
MeasureData read_measure_json(const std::filesystem::path& path, const UniformGrid& grid);

/// Minimal SVG line plot: one polyline per series over a shared x axis.
struct SvgSeries {
    std::string label;
    std::string color = "#1f77b4";
    std::vector<double> x;
    std::vector<double> y;
};
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series);

} // namespace dp::io
