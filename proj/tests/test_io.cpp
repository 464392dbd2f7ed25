#include "dhl/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dhl;

TEST_CASE("hexfloat round trips exactly") {
  for (const double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
    const std::string h = io::hexfloat(x);
    CHECK(std::strtod(h.c_str(), nullptr) == x);
    CHECK(std::strtod(io::decimal(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("csv and pgm writers") {
  const auto dir = std::filesystem::temp_directory_path() / "dhl_io_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "t.csv").string();
  io::write_table_csv(csv, {"a", "b"}, {{1.5, -2.0}});
  std::ifstream f(csv);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(header == "a,b,a_hex,b_hex");
  CHECK(row == "1.5,-2,0x1.8p+0,-0x1p+1");

  Raster r;
  r.nx = 2;
  r.ny = 1;
  r.cls = {static_cast<std::uint8_t>(Outcome::ToE), static_cast<std::uint8_t>(Outcome::ToEPrime)};
  const std::string pgm = (dir / "r.pgm").string();
  io::write_raster_pgm(pgm, r);
  std::ifstream g(pgm, std::ios::binary);
  std::stringstream ss;
  ss << g.rdbuf();
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 11) == "P5\n2 1\n255\n");
  CHECK(static_cast<unsigned char>(bytes[11]) == 255);
  CHECK(static_cast<unsigned char>(bytes[12]) == 0);
  CHECK(io::gray_of(Outcome::Unresolved) == 128);
  std::filesystem::remove_all(dir);
}

TEST_CASE("json of a projective point") {
  const auto j = io::to_json(normalize(1.0, 0.0, 0.0));
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
}
