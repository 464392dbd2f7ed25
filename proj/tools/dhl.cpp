// dhl: command-line front end; every command writes artifacts plus <command>.meta.json
#include "dhl/acceptance.hpp"
#include "dhl/dynamics.hpp"
#include "dhl/errors.hpp"
#include "dhl/green.hpp"
#include "dhl/io.hpp"
#include "dhl/random.hpp"
#include "dhl/roots.hpp"
#include "dhl/slice_engine.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <functional>
#include <map>

#ifndef DHL_GIT_DESCRIBE
#define DHL_GIT_DESCRIBE "unknown"
#endif

using namespace dhl;
using json = nlohmann::json;

namespace {

struct Args {
  int threads = 0;
  std::uint64_t seed = 0;
  std::string precision;  // empty = library default
  std::string out = "out";
};

struct SliceArgs {
  std::string kind = "fisher";  // fisher | lee-yang | line
  double t = 0.5, tIm = 0.0;
  std::vector<double> x0{1.0, 0.0, 0.0}, d{0.0, 0.0, 1.0}, x0Im{0.0, 0.0, 0.0}, dIm{0.0, 0.0, 0.0};

  SliceSpec spec() const {
    if (kind == "fisher") return SliceSpec::physical_z1_line();
    if (kind == "lee-yang") return SliceSpec::physical_t_line(Complex(t, tIm));
    auto v = [](const std::vector<double>& re, const std::vector<double>& im) {
      return ProjPoint::from_raw(Vec3(Complex(re[0], im[0]), Complex(re[1], im[1]), Complex(re[2], im[2])));
    };
    return SliceSpec::line(v(x0, x0Im), v(d, dIm));
  }
  json to_json() const {
    json j = {{"kind", kind}};
    if (kind == "lee-yang") j["t"] = {t, tIm};
    if (kind == "line") j["x0"] = {x0, x0Im}, j["d"] = {d, dIm};
    return j;
  }
};

void add_slice_options(CLI::App* c, SliceArgs& s) {
  c->add_option("--slice", s.kind, "fisher (z=1), lee-yang (fixed t) or line (X0 + s D)")
      ->check(CLI::IsMember({"fisher", "lee-yang", "line"}));
  c->add_option("--t", s.t, "temperature for the lee-yang slice");
  c->add_option("--t-im", s.tIm, "imaginary part of t");
  c->add_option("--x0", s.x0, "line base point, real parts")->expected(3);
  c->add_option("--x0-im", s.x0Im, "line base point, imaginary parts")->expected(3);
  c->add_option("--d", s.d, "line direction, real parts")->expected(3);
  c->add_option("--d-im", s.dIm, "line direction, imaginary parts")->expected(3);
}

Rect parse_rect(const std::vector<double>& v) {
  if (v.size() != 4 || !(v[0] < v[1]) || !(v[2] < v[3]))
    throw CLI::ValidationError("--rect", "expects xmin,xmax,ymin,ymax with min < max");
  return {v[0], v[1], v[2], v[3]};
}

std::optional<Precision> precision_of(const Args& a) {
  if (a.precision == "double") return Precision::Double;
  if (a.precision == "dd") return Precision::DoubleDouble;
  return std::nullopt;
}

json rect_json(const Rect& r) { return {r.xmin, r.xmax, r.ymin, r.ymax}; }

// command body: fills `meta` (tolerances, results summary) and writes artifacts into dir
using Body = std::function<int(const std::string& dir, json& meta)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diamond hierarchical lattice renormalization toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file (CLI11 INI syntax; [command] sections allowed)");
  Args a;
  app.add_option("--threads", a.threads, "worker threads (default: hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", a.seed, "seed; mandatory for stochastic commands");
  app.add_option("--precision", a.precision, "double or dd")->check(CLI::IsMember({"double", "dd"}));
  app.add_option("--out", a.out, "output directory");

  std::map<std::string, Body> bodies;
  std::set<std::string> stochastic;

  // ---- partition
  {
    auto* c = app.add_subcommand("partition", "renormalized partition polynomials on a slice");
    static SliceArgs s;
    static int n = 2;
    add_slice_options(c, s);
    c->add_option("--n", n, "level")->check(CLI::Range(0, kMaxLevel));
    bodies["partition"] = [&](const std::string& dir, json& meta) {
      const PartitionSlice ps = partition_slice(s.spec(), n);
      io::write_poly_csv(dir + "/partition_zhat.csv", ps.zhat, ps.logScale);
      io::write_json(dir + "/partition.json", {{"n", n}, {"slice", io::to_json(ps.slice)}, {"zhat", io::to_json(ps.zhat)},
                                               {"logScale", ps.logScale}});
      meta["slice"] = s.to_json();
      meta["result"] = {{"degree", ps.zhat.degree()}, {"logScale", ps.logScale}};
      return 0;
    };
  }

  // ---- zeros
  auto zeros_outputs = [](const std::string& dir, const std::string& stem, const ZerosResult& z, int bins, json& meta) {
    io::write_measure_csv(dir + "/" + stem + ".csv", z.measure);
    io::write_histogram_csv(dir + "/" + stem + "_angles.csv", angular_histogram(z.measure, bins));
    json rep = {{"roots", z.measure.size()},
                {"maxCircleDeviation", z.maxCircleDeviation},
                {"maxResidual", z.report.maxResidual},
                {"iterations", z.report.iterations},
                {"clusters", z.report.clusters.size()}};
    if (z.crossCheck >= 0.0) rep["crossCheckHausdorff"] = z.crossCheck;
    io::write_json(dir + "/" + stem + "_report.json", rep);
    meta["result"] = rep;
  };
  {
    auto* c = app.add_subcommand("ly-zeros", "Lee-Yang zeros at fixed temperature");
    static double t = 0.5, tIm = 0.0;
    static int n = 3, bins = 63;
    c->add_option("--t", t, "temperature variable");
    c->add_option("--t-im", tIm, "imaginary part of t");
    c->add_option("--n", n, "level")->check(CLI::Range(0, kMaxLevel));
    c->add_option("--bins", bins, "angular histogram bins")->check(CLI::PositiveNumber);
    bodies["ly-zeros"] = [&, zeros_outputs](const std::string& dir, json& meta) {
      const ZerosResult z = lee_yang_zeros(Complex(t, tIm), n, precision_of(a), a.seed);
      zeros_outputs(dir, "ly_zeros", z, bins, meta);
      meta["tolerances"] = {{"stepTol", AberthOptions{}.stepTol}, {"clusterRadius", AberthOptions{}.clusterRadius}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("fisher-zeros", "Fisher zeros, cross-checked against 1D pullbacks of -1");
    static int n = 3, bins = 63;
    c->add_option("--n", n, "level")->check(CLI::Range(0, kMaxLevel));
    c->add_option("--bins", bins, "angular histogram bins")->check(CLI::PositiveNumber);
    bodies["fisher-zeros"] = [&, zeros_outputs](const std::string& dir, json& meta) {
      const ZerosResult z = fisher_zeros(n, precision_of(a), a.seed);
      zeros_outputs(dir, "fisher_zeros", z, bins, meta);
      meta["tolerances"] = {{"stepTol", AberthOptions{}.stepTol}, {"clusterRadius", AberthOptions{}.clusterRadius}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("slice-zeros", "zeros of Y0 along a slice after n renormalizations");
    static SliceArgs s;
    static int n = 3, bins = 63;
    add_slice_options(c, s);
    c->add_option("--n", n, "level")->check(CLI::Range(0, kMaxLevel));
    c->add_option("--bins", bins, "angular histogram bins")->check(CLI::PositiveNumber);
    bodies["slice-zeros"] = [&, zeros_outputs](const std::string& dir, json& meta) {
      const ZerosResult z = slice_zeros(s.spec(), n, precision_of(a), a.seed);
      zeros_outputs(dir, "slice_zeros", z, bins, meta);
      meta["slice"] = s.to_json();
      return 0;
    };
  }

  // ---- Green potential
  {
    auto* c = app.add_subcommand("green-grid", "Green potential on a slice grid and its Laplacian density");
    static SliceArgs s;
    static std::vector<double> rect{-2, 2, -2, 2};
    static int res = 128;
    static double tol = 1e-10;
    add_slice_options(c, s);
    c->add_option("--rect", rect, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
    c->add_option("--res", res, "pixels per side")->check(CLI::Range(3, 8192));
    c->add_option("--tol", tol, "series tolerance")->check(CLI::PositiveNumber);
    bodies["green-grid"] = [&](const std::string& dir, json& meta) {
      const Rect r = parse_rect(rect);
      const PotentialGrid g = potential_grid(make_slice(s.spec()), r, res, res, tol);
      const DensityGrid dg = laplacian_density(g);
      io::write_grid_csv(dir + "/green_grid.csv", g);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& v : g.samples) lo = std::min(lo, v.value), hi = std::max(hi, v.value);
      io::write_grid_pgm(dir + "/green_grid.pgm", g, lo, hi);
      std::vector<std::vector<double>> rows;
      for (int j = 0; j < dg.ny; ++j)
        for (int i = 0; i < dg.nx; ++i) {
          const Complex p = g.param(i, j);
          rows.push_back({p.real(), p.imag(), dg.mass[static_cast<std::size_t>(j) * dg.nx + i]});
        }
      io::write_table_csv(dir + "/green_density.csv", {"re", "im", "mass"}, rows);
      meta["slice"] = s.to_json();
      meta["rect"] = rect_json(r);
      meta["tolerances"] = {{"tol", tol}};
      meta["result"] = {{"min", lo}, {"max", hi}, {"clippedNegative", dg.clippedNegative}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("equidist", "distance between normalized zero potential and G on a slice");
    static SliceArgs s;
    static int nMin = 1, nMax = 4;
    add_slice_options(c, s);
    c->add_option("--nmin", nMin, "first level")->check(CLI::Range(0, kMaxLevel));
    c->add_option("--nmax", nMax, "last level")->check(CLI::Range(0, kMaxLevel));
    bodies["equidist"] = [&](const std::string& dir, json& meta) {
      const RationalSlice sl = make_slice(s.spec());
      const auto probes = default_probe_set();
      std::vector<std::vector<double>> rows;
      for (int n = nMin; n <= nMax; ++n) {
        const EquidistResult e = equidistribution_distance(sl, n, probes, precision_of(a));
        rows.push_back({double(n), e.distance, double(e.used), double(e.dropped)});
      }
      io::write_table_csv(dir + "/equidist.csv", {"n", "distance", "used", "dropped"}, rows);
      meta["slice"] = s.to_json();
      meta["result"] = {{"levels", rows.size()}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("herm-decay", "decay of 4^-n log|Y(R^n x)| over random unit points");
    static int samples = 100000, nMax = 8;
    c->add_option("--samples", samples, "sample count")->check(CLI::PositiveNumber);
    c->add_option("--nmax", nMax, "last level")->check(CLI::Range(0, 30));
    stochastic.insert("herm-decay");
    bodies["herm-decay"] = [&](const std::string& dir, json& meta) {
      const HermDecayTable t = herm_norm_decay(samples, nMax, LinearForm::y0(), a.seed);
      std::vector<std::vector<double>> rows;
      for (const auto& r : t.rows) rows.push_back({double(r.n), r.meanAbs, r.stdErr, r.maxAbs, r.maxSigned, r.upperBound});
      io::write_table_csv(dir + "/herm_decay.csv", {"n", "mean_abs", "std_err", "max_abs", "max_signed", "upper_bound"}, rows);
      meta["result"] = {{"M", t.M}, {"fittedGamma", t.fittedGamma}, {"excluded", t.excluded}};
      return 0;
    };
  }

  // ---- rasters
  {
    auto* c = app.add_subcommand("julia1d", "basins of the Fisher map t -> (2t/(t^2+1))^2");
    static std::vector<double> rect{-2, 2, -2, 2};
    static int res = 512, budget = 200;
    c->add_option("--rect", rect, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
    c->add_option("--res", res, "pixels per side")->check(CLI::Range(2, 16384));
    c->add_option("--budget", budget, "iteration budget")->check(CLI::PositiveNumber);
    bodies["julia1d"] = [&](const std::string& dir, json& meta) {
      const Rect r = parse_rect(rect);
      const Raster ras = julia_1d(r, res, res, budget);
      io::write_raster_pgm(dir + "/julia1d.pgm", ras);
      meta["rect"] = rect_json(r);
      meta["palette"] = {{"ToBeta1", io::gray_of(Outcome::ToBeta1)}, {"ToBeta0", io::gray_of(Outcome::ToBeta0)},
                         {"Unresolved", io::gray_of(Outcome::Unresolved)}};
      meta["result"] = {{"tc", ras.tc}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("julia-slice", "basin classification of R along a slice");
    static SliceArgs s;
    static std::vector<double> rect{-2, 2, -2, 2};
    static int res = 256, budget = 60, overlay = -1;
    static bool lineAttractors = false;
    add_slice_options(c, s);
    c->add_option("--rect", rect, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
    c->add_option("--res", res, "pixels per side")->check(CLI::Range(2, 16384));
    c->add_option("--budget", budget, "iteration budget")->check(CLI::PositiveNumber);
    c->add_option("--overlay", overlay, "mark zeros of U - W after this many renormalizations (-1: none)");
    c->add_flag("--line-attractors", lineAttractors, "also detect beta0 and beta1");
    bodies["julia-slice"] = [&](const std::string& dir, json& meta) {
      const Rect r = parse_rect(rect);
      SliceRasterOptions opt;
      opt.overlayLevel = overlay;
      opt.classify.lineAttractors = lineAttractors || s.kind == "fisher";
      const Raster ras = julia_slice_2d(make_slice(s.spec()), r, res, res, budget, opt);
      io::write_raster_pgm(dir + "/julia_slice.pgm", ras);
      if (overlay >= 0) io::write_raster_ppm(dir + "/julia_slice_overlay.ppm", ras);
      meta["slice"] = s.to_json();
      meta["rect"] = rect_json(r);
      json res_ = {{"lineAttractors", opt.classify.lineAttractors}};
      if (overlay >= 0) res_["overlayHitFraction"] = overlay_hit_fraction(ras, 1), res_["overlayMarks"] = ras.overlay.size();
      meta["result"] = res_;
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("basins", "solid cylinder basin suite");
    static int samples = 10000, budget = 500;
    c->add_option("--samples", samples, "samples per set")->check(CLI::PositiveNumber);
    c->add_option("--budget", budget, "iteration budget")->check(CLI::PositiveNumber);
    stochastic.insert("basins");
    bodies["basins"] = [&](const std::string& dir, json& meta) {
      const CylinderReport rep = solid_cylinder_suite(samples, a.seed, budget);
      json sets = json::array();
      for (const auto& s : rep.sets)
        sets.push_back({{"set", s.name}, {"samples", s.samples}, {"toE", s.toE}, {"toEPrime", s.toEPrime},
                        {"unresolved", s.unresolved}, {"other", s.other}});
      io::write_json(dir + "/basins.json", {{"sets", sets}, {"mirrorExact", rep.mirrorExact}});
      meta["result"] = {{"mirrorExact", rep.mirrorExact}};
      return 0;
    };
  }

  // ---- dynamics
  {
    auto* c = app.add_subcommand("mme", "inverse-iteration sample of the maximal entropy measure");
    static int samples = 100000, burnIn = 20, chains = 16, budget = 20;
    c->add_option("--samples", samples, "cloud size")->check(CLI::PositiveNumber);
    c->add_option("--burn-in", burnIn, "burn-in steps (>= 20)")->check(CLI::Range(20, 1000000));
    c->add_option("--chains", chains, "independent chains")->check(CLI::PositiveNumber);
    c->add_option("--budget", budget, "classification budget for the Unresolved share")->check(CLI::PositiveNumber);
    stochastic.insert("mme");
    bodies["mme"] = [&](const std::string& dir, json& meta) {
      const MmeCloud cloud = mme_sample(samples, burnIn, a.seed, chains);
      std::vector<std::vector<double>> rows;
      rows.reserve(cloud.points.size());
      for (const auto& p : cloud.points)
        rows.push_back({p[0].real(), p[0].imag(), p[1].real(), p[1].imag(), p[2].real(), p[2].imag()});
      io::write_table_csv(dir + "/mme.csv", {"u_re", "u_im", "v_re", "v_im", "w_re", "w_im"}, rows);
      const json res = {{"lyapunovProxy", lyapunov_proxy(cloud)},
                        {"unresolvedFraction", unresolved_fraction(cloud, budget)},
                        {"forwardPushTv", forward_push_tv(cloud)},
                        {"infiniteFiberResamples", cloud.infiniteFiberResamples},
                        {"degenerateSteps", cloud.degenerateSteps}};
      io::write_json(dir + "/mme.json", res);
      meta["result"] = res;
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("critical", "tangent Jacobian determinant on the critical curves");
    static int samples = 100;
    c->add_option("--samples", samples, "samples per curve")->check(CLI::PositiveNumber);
    stochastic.insert("critical");
    bodies["critical"] = [&](const std::string& dir, json& meta) {
      const CriticalReport rep = critical_locus_residuals(samples, a.seed);
      json curves = json::array();
      for (const auto& cr : rep.curves)
        curves.push_back({{"curve", cr.name}, {"maxDet", cr.maxDet}, {"minControlDet", cr.minControlDet}, {"samples", cr.samples}});
      const json res = {{"curves", curves}, {"conicMinDet", rep.conicMinDet}};
      io::write_json(dir + "/critical.json", res);
      meta["result"] = res;
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("folds", "order of vanishing of det transverse to each critical curve");
    static double baseRe = 0.7, baseIm = 0.3;
    c->add_option("--base", baseRe, "curve parameter, real part");
    c->add_option("--base-im", baseIm, "curve parameter, imaginary part");
    bodies["folds"] = [&](const std::string& dir, json& meta) {
      std::vector<std::vector<double>> rows;
      json fits = json::array();
      for (const auto& cv : critical_curves()) {
        try {
          const FoldFit f = fold_exponent(cv, Complex(baseRe, baseIm));
          rows.push_back({double(static_cast<int>(cv.id)), f.slope, f.r2});
          fits.push_back({{"curve", cv.name}, {"slope", f.slope}, {"r2", f.r2}});
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::FitUnstable) throw;
          fits.push_back({{"curve", cv.name}, {"error", e.what()}});
        }
      }
      io::write_table_csv(dir + "/folds.csv", {"curve", "slope", "r2"}, rows);
      meta["result"] = fits;
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("volume-mc", "Monte Carlo check of area(Q^-1 X) <= area(X)^(1/d)");
    static int d = 2, disks = 3, unions = 20;
    static long samples = 1000000;
    c->add_option("--d", d, "power")->check(CLI::Range(2, 64));
    c->add_option("--disks", disks, "disks per union")->check(CLI::PositiveNumber);
    c->add_option("--unions", unions, "random unions")->check(CLI::PositiveNumber);
    c->add_option("--samples", samples, "MC samples")->check(CLI::PositiveNumber);
    stochastic.insert("volume-mc");
    bodies["volume-mc"] = [&](const std::string& dir, json& meta) {
      std::vector<std::vector<double>> rows;
      int fails = 0;
      for (int k = 0; k < unions; ++k) {
        auto rng = stream_rng(a.seed, static_cast<std::uint64_t>(k));
        const auto ds = random_disk_union(disks, rng);
        const AreaResult r = power_map_area_mc(d, ds, samples, a.seed + static_cast<std::uint64_t>(k));
        fails += !r.holds;
        rows.push_back({double(k), r.areaX, r.sigmaX, r.areaPre, r.sigmaPre, r.bound, r.holds ? 1.0 : 0.0});
      }
      io::write_table_csv(dir + "/volume_mc.csv", {"union", "area_x", "sigma_x", "area_pre", "sigma_pre", "bound", "holds"}, rows);
      meta["result"] = {{"failures", fails}, {"unions", unions}};
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("stability", "common roots of the composed lift on random lines");
    static std::string map = "mig";
    static int n = 2, lines = 3;
    c->add_option("--map", map, "mig or phys")->check(CLI::IsMember({"mig", "phys"}));
    c->add_option("--n", n, "compositions")->check(CLI::Range(1, 3));
    c->add_option("--lines", lines, "random lines")->check(CLI::PositiveNumber);
    stochastic.insert("stability");
    bodies["stability"] = [&](const std::string& dir, json& meta) {
      const StabilityReport rep = stability_check(map == "mig" ? MapKind::Mig : MapKind::Phys, n, a.seed, lines);
      json ls = json::array();
      for (const auto& l : rep.lines)
        ls.push_back({{"degree", l.degree}, {"commonRoots", l.commonRoots}, {"distinctCommon", l.uniqueCommon},
                      {"effectiveDegree", l.effectiveDegree}, {"inconclusive", l.inconclusive}});
      const json res = {{"map", map}, {"n", n}, {"lines", ls}, {"linesWithCommon", rep.linesWithCommon()}};
      io::write_json(dir + "/stability.json", res);
      meta["result"] = res;
      return 0;
    };
  }
  {
    auto* c = app.add_subcommand("report", "run the acceptance suite");
    static bool quick = false;
    c->add_flag("--quick", quick, "reduced sample sizes");
    bodies["report"] = [&](const std::string& dir, json& meta) {
      AcceptanceOptions opt;
      opt.quick = quick;
      if (app.count("--seed")) opt.seed = a.seed;
      const auto results = run_acceptance(opt);
      const json j = to_json(results);
      io::write_json(dir + "/report.json", j);
      json timing = json::object();
      for (const auto& r : results) timing[std::to_string(r.id)] = r.seconds;
      meta["criterionSeconds"] = timing;
      meta["result"] = {{"passed", j["passed"]}, {"total", j["total"]}};
      for (const auto& r : results) std::printf("%s  %2d %s: %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
      return j["passed"] == j["total"] ? 0 : 1;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (stochastic.count(cmd) && !app.count("--seed")) {
    std::fprintf(stderr, "error: %s is stochastic and needs --seed\n", cmd.c_str());
    return 2;
  }
  if (a.threads > 0) omp_set_num_threads(a.threads);

  const auto t0 = std::chrono::steady_clock::now();
  json meta = {{"command", cmd}, {"seed", a.seed}, {"precision", a.precision.empty() ? "default" : a.precision},
               {"threads", a.threads > 0 ? a.threads : omp_get_max_threads()}, {"gitDescribe", DHL_GIT_DESCRIBE}};
  json argvEcho = json::array();
  for (int k = 0; k < argc; ++k) argvEcho.push_back(argv[k]);
  meta["argv"] = argvEcho;
  {
    // effective configuration of the chosen command, one key=value per line
    std::istringstream all(app.config_to_str(true, false));
    std::string line, echo;
    while (std::getline(all, line)) {
      const auto dot = line.find('.'), eq = line.find('=');
      if (dot == std::string::npos || dot > eq || line.compare(0, dot, cmd) == 0) echo += line + "\n";
    }
    meta["config"] = echo;
  }
  if (const auto* cfg = app.get_config_ptr(); cfg && cfg->count()) {
    std::ifstream f(cfg->as<std::string>());
    meta["configFile"] = std::string(std::istreambuf_iterator<char>(f), {});
  }

  int code = 0;
  try {
    std::filesystem::create_directories(a.out);
    code = bodies.at(cmd)(a.out, meta);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s contract failed: %s\n", to_string(e.kind()), e.what());
    meta["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    code = 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  meta["wallSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  meta["finishedAt"] = static_cast<long long>(std::time(nullptr));
  meta["exitCode"] = code;
  io::write_json(a.out + "/" + cmd + ".meta.json", meta);
  return code;
}
