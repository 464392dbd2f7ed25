#pragma once

#include "dhl/double_double.hpp"
#include "dhl/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace dhl {

struct EmpiricalMeasure {
  std::vector<Complex> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

struct RootReport {
  std::vector<Complex> roots;
  std::vector<double> residuals;  // |p(r)| over the coefficient-majorant at |r|
  double maxResidual = 0.0;
  int iterations = 0;
  std::vector<RootCluster> clusters;
};

struct AberthOptions {
  std::uint64_t seed = 0;
  int maxIter = 600;
  double stepTol = 1e-14;
  double clusterRadius = 1e-7;
};

// p(s)/p'(s) plus the relative residual at s
struct NewtonEval {
  Complex ratio;
  double relResidual = 0.0;
  bool ok = true;
};
using NewtonOracle = std::function<NewtonEval(Complex)>;

RootReport aberth_solve(const NewtonOracle& f, int degree, double ringRadius, const AberthOptions& opt = {});
RootReport aberth_solve(const CPoly& p, const AberthOptions& opt = {});

// roots of Y(R^n(slice(s))) through pointwise evaluation
RootReport slice_roots(const RationalSlice& initial, int n, const LinearForm& y, Precision prec,
                       const AberthOptions& opt = {});

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius);
EmpiricalMeasure measure_from_roots(const RootReport& rep);

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

struct ZerosResult {
  EmpiricalMeasure measure;
  RootReport report;
  double maxCircleDeviation = 0.0;  // max ||r|-1|
  double crossCheck = -1.0;         // Hausdorff distance to an independent set, if any
};

// double below level 5, double-double from 5 on unless forced
ZerosResult lee_yang_zeros(Complex t, int n, std::optional<Precision> prec = std::nullopt, std::uint64_t seed = 0);
ZerosResult fisher_zeros(int n, std::optional<Precision> prec = std::nullopt, std::uint64_t seed = 0);
ZerosResult slice_zeros(const SliceSpec& spec, int n, std::optional<Precision> prec = std::nullopt,
                        std::uint64_t seed = 0);
ZerosResult slice_zeros(const RationalSlice& initial, int n, std::optional<Precision> prec = std::nullopt,
                        std::uint64_t seed = 0);

// points t with f^n(t) = -1, with multiplicity
std::vector<Complex> fisher_pullback_set(int n);

double potential_of_measure(const EmpiricalMeasure& m, Complex s);

struct DensityTable {
  std::vector<double> binCenter, mass, density;
  int outsideAnnulus = 0;
};
// arguments binned over [0, 2pi)
DensityTable angular_histogram(const EmpiricalMeasure& m, int bins);

}  // namespace dhl
