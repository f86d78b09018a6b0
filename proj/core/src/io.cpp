#include "dp/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dp::io {

using nlohmann::json;

namespace {

// std::stod raises out_of_range on subnormal results; strtod just returns
// the (possibly subnormal or zero) value, which is what a round trip needs.
double parse_double(const std::string& s, const std::string& where) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin) throw std::runtime_error("malformed number in " + where);
    return x;
}

} // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_grid_csv(const GridFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "x,value\n";
    for (int j = 0; j < f.size(); ++j)
        out << fmt17(f.grid.x(j)) << ',' << fmt17(f.values[j]) << '\n';
}

GridFunction read_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    std::getline(in, line); // header
    std::vector<double> xs, vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("malformed CSV row in " + path.string());
        xs.push_back(parse_double(line.substr(0, comma), path.string()));
        vals.push_back(parse_double(line.substr(comma + 1), path.string()));
    }
    if (xs.size() < 2) throw std::runtime_error("too few rows in " + path.string());
    const int n = static_cast<int>(xs.size());
    const double h = xs[1] - xs[0];
    UniformGrid g = UniformGrid::make(-xs[0], n);
    if (std::abs(g.spacing() - h) > 1e-12 * std::abs(h))
        throw std::runtime_error("non-uniform grid in " + path.string());
    return GridFunction{g, std::move(vals)};
}

void write_trace_csv(const EvolutionTrace& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "t,E,F,xi,M,delta,h_distance,min_y\n";
    for (size_t i = 0; i < t.times.size(); ++i) {
        out << fmt17(t.times[i]) << ',' << fmt17(t.E_series[i]) << ',' << fmt17(t.F_series[i])
            << ',' << fmt17(t.xi_series[i]) << ',' << fmt17(t.M_series[i]) << ','
            << fmt17(t.delta_series[i]) << ',' << fmt17(t.h_distance_series[i]) << ','
            << fmt17(t.min_y_series[i]) << '\n';
    }
}

json landmarks_json(const std::vector<Landmark>& table) {
    json arr = json::array();
    for (const Landmark& l : table)
        arr.push_back({{"name", l.name}, {"location", l.location}, {"value", l.value}});
    return arr;
}

json energy_json(const EnergyPair& E, const EnergyPair& F) {
    return json{{"E", {{"primary", E.primary}, {"alt", E.alt}, {"gap", E.gap()}}},
                {"F", {{"primary", F.primary}, {"alt", F.alt}, {"gap", F.gap()}}}};
}

json stability_report_json(const StabilityReport& r) {
    return json{{"E", r.E},
                {"F", r.F},
                {"xi", r.xi},
                {"M", r.M},
                {"delta", r.delta},
                {"h_distance_to_peakon_at_xi", r.h_distance_to_peakon_at_xi},
                {"quadratic_identity_res", r.quadratic_identity_res},
                {"g_identity_residual", r.g_identity_residual},
                {"h_identity_residual", r.h_identity_residual},
                {"h_sup_margin", r.h_sup_margin},
                {"cubic_value", r.cubic_value},
                {"local_max_count_on_theta", r.local_max_count_on_theta},
                {"tail_margin_v", r.tail_margins.v_margin},
                {"tail_margin_u", r.tail_margins.u_margin},
                {"pass", r.pass},
                {"fail_reasons", r.fail_reasons}};
}

std::string stability_report_csv_row(const StabilityReport& r) {
    std::ostringstream out;
    out << fmt17(r.E) << ',' << fmt17(r.F) << ',' << fmt17(r.xi) << ',' << fmt17(r.M) << ','
        << fmt17(r.delta) << ',' << fmt17(r.h_distance_to_peakon_at_xi) << ','
        << fmt17(r.quadratic_identity_res) << ',' << fmt17(r.g_identity_residual) << ','
        << fmt17(r.h_identity_residual) << ',' << fmt17(r.h_sup_margin) << ','
        << fmt17(r.cubic_value) << ',' << r.local_max_count_on_theta << ','
        << fmt17(r.tail_margins.v_margin) << ',' << fmt17(r.tail_margins.u_margin) << ','
        << (r.pass ? 1 : 0);
    return out.str();
}

void write_measure_json(const MeasureData& y, const std::filesystem::path& path) {
    json atoms = json::array();
    for (const Atom& a : y.atoms) atoms.push_back({{"pos", a.pos}, {"mass", a.mass}});
    bool has_density = false;
    for (double v : y.density.values)
        if (v != 0.0) { has_density = true; break; }
    json doc{{"atoms", atoms}, {"density_csv", nullptr}};
    if (has_density) {
        std::filesystem::path density_path = path;
        density_path.replace_extension(".density.csv");
        write_grid_csv(y.density, density_path);
        doc["density_csv"] = density_path.filename().string();
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

MeasureData read_measure_json(const std::filesystem::path& path, const UniformGrid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    json doc = json::parse(in);
    MeasureData y{{}, GridFunction::zero(grid)};
    for (const auto& a : doc.at("atoms"))
        y.atoms.push_back({a.at("pos").get<double>(), a.at("mass").get<double>()});
    if (!doc.at("density_csv").is_null()) {
        const auto density_path = path.parent_path() / doc["density_csv"].get<std::string>();
        y.density = read_grid_csv(density_path);
        if (!(y.density.grid == grid))
            throw std::runtime_error("density grid mismatch in " + path.string());
    }
    return y;
}

void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::vector<SvgSeries>& series) {
    const double W = 720, H = 420, ml = 70, mr = 20, mt = 40, mb = 40;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"" << H - mb + 16 << "\" font-size=\"11\">" << fmt17(xmin)
        << "</text>\n";
    out << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 16
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt17(xmax) << "</text>\n";
    out << "<text x=\"" << ml - 4 << "\" y=\"" << H - mb
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt17(ymin) << "</text>\n";
    out << "<text x=\"" << ml - 4 << "\" y=\"" << mt << "\" text-anchor=\"end\" font-size=\"11\">"
        << fmt17(ymax) << "</text>\n";
    int legend_y = mt;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i)
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 4 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
            << "</text>\n";
        legend_y += 14;
    }
    out << "</svg>\n";
}

} // namespace dp::io
