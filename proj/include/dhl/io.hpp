#pragma once

#include "dhl/dynamics.hpp"
#include "dhl/geometry.hpp"
#include "dhl/green.hpp"
#include "dhl/roots.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dhl::io {

using json = nlohmann::json;

std::string hexfloat(double x);
std::string decimal(double x);

json to_json(Complex z);
json to_json(const ProjPoint& p);
json to_json(const CPoly& p);
json to_json(const RationalSlice& s);

// re, im, weight and their hexfloat twins
void write_measure_csv(const std::string& path, const EmpiricalMeasure& m);
void write_points_csv(const std::string& path, const std::vector<Complex>& pts);
void write_poly_csv(const std::string& path, const CPoly& p, double logScale);
void write_histogram_csv(const std::string& path, const DensityTable& h);
void write_grid_csv(const std::string& path, const PotentialGrid& g);
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);
void write_json(const std::string& path, const json& j);

// gray value per class: ToE 255, ToEPrime 0, Unresolved 128, ToBeta0 200, ToBeta1 60
std::uint8_t gray_of(Outcome o);
void write_pgm(const std::string& path, int nx, int ny, const std::vector<std::uint8_t>& px);
void write_raster_pgm(const std::string& path, const Raster& r);
// raster in gray with overlay marks in red
void write_raster_ppm(const std::string& path, const Raster& r);
// linear ramp of grid values over [lo, hi]
void write_grid_pgm(const std::string& path, const PotentialGrid& g, double lo, double hi);

}  // namespace dhl::io
