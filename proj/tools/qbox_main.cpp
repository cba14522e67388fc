/*
 * qbox: command-line front end.
 *
 *   simulate   build the outcome table of a finite-dimensional or atomic model
 *   certify    decide realizability of a table (exit 0/1/2 =
 *              CONSISTENT/VIOLATION/INCONCLUSIVE)
 *   gp-check   verify the canonical operational model reproduces a table
 *   region     test a rectangle of anchor candidates for region membership
 *   moments    convert between integer and half-odd moment tables
 *   bernstein  evaluate the degree-n approximant of the state functional
 *   scan       sample truncated statistics into CSV / SVG point clouds
 *   demo       small built-in demonstrations (three-box)
 *
 * All other errors exit with code 3.
 */

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qbox/certifier.hpp"
#include "qbox/gpmodel.hpp"
#include "qbox/json_io.hpp"
#include "qbox/moments.hpp"
#include "qbox/qmodel.hpp"
#include "qbox/region.hpp"
#include "qbox/truncation.hpp"

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_coeffs(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) out.push_back(0.0);
  return out;
}

double max_entry(const qbox::Triangular& t) {
  double m = 0.0;
  for (const auto& row : t.rows())
    for (double v : row) m = std::max(m, v);
  return m;
}

void print_verdict(const qbox::Verdict& v) {
  std::cout << qbox::to_string(v.status) << " (depth=" << v.depth_used
            << ", K=" << v.k_used << ", tol=" << fmt(v.tol) << ")\n";
  for (const qbox::CheckWitness& w : v.witnesses) {
    std::cout << "  " << (w.undecided ? "undecided " : "violated  ") << w.check;
    if (w.n >= 0) {
      std::cout << " at (n=" << w.n;
      if (w.s >= 0) std::cout << ", s=" << w.s;
      std::cout << ")";
    }
    std::cout << ": measured " << fmt(w.measured) << " vs bound "
              << fmt(w.bound) << " (margin " << fmt(w.margin) << ")\n";
    if (!w.detail.empty()) std::cout << "      " << w.detail << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterated dichotomic measurement tables: simulation, "
               "realizability certification, operational models"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---------------------------------------------------------------- simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Outcome-probability table of a model, as JSON");
  std::string sim_model, sim_atomic, sim_out = "-";
  int sim_depth = 0;
  double sim_tol = 1e-9;
  simulate->add_option("--model", sim_model, "finite-dimensional model JSON");
  simulate->add_option("--atomic", sim_atomic, "atomic state JSON");
  simulate->add_option("--depth", sim_depth, "maximal sequence length")
      ->required()
      ->check(CLI::Range(1, qbox::kMaxTableDepth));
  simulate->add_option("--tol", sim_tol, "model validation tolerance");
  simulate->add_option("--out", sim_out, "output path ('-' = stdout)");
  simulate->callback([&] {
    if (sim_model.empty() == sim_atomic.empty())
      throw std::invalid_argument("pass exactly one of --model / --atomic");
    qbox::ProbabilityTable t;
    if (!sim_model.empty()) {
      const qbox::FiniteDimModel m =
          qbox::model_from_json(qbox::load_json(sim_model));
      const qbox::ModelReport rep = qbox::validate_model(m, sim_tol);
      if (!rep.ok)
        throw std::invalid_argument(
            "model rejected: projection residual " + fmt(rep.proj_residual) +
            ", trace residual " + fmt(rep.trace_residual) +
            ", min eigenvalue " + fmt(rep.min_eigenvalue));
      t = qbox::simulate_table(m, sim_depth);
    } else {
      const qbox::AtomicState st =
          qbox::atomic_from_json(qbox::load_json(sim_atomic));
      const qbox::AtomicReport rep = qbox::validate_atomic(st, sim_tol);
      if (!rep.ok)
        throw std::invalid_argument("atomic state rejected: " + rep.detail);
      t = qbox::atomic_to_table(st, sim_depth);
    }
    qbox::save_json(qbox::table_to_json(t), sim_out);
  });

  // ----------------------------------------------------------------- certify
  auto* certify = app.add_subcommand(
      "certify", "Decide whether a table admits a quantum realisation");
  std::string cert_probs = "-", cert_report;
  double cert_tol = 1e-9;
  int cert_k = -1;
  certify->add_option("--probs", cert_probs, "table JSON ('-' = stdin)");
  certify->add_option("--tol", cert_tol, "data tolerance");
  certify->add_option("--K", cert_k, "series truncation (default depth-1)");
  certify->add_option("--report", cert_report, "write a JSON report here");
  certify->callback([&] {
    const qbox::ProbabilityTable t =
        qbox::table_from_json(qbox::load_json(cert_probs));
    const qbox::Verdict v = qbox::certify(t, cert_tol, cert_k);
    print_verdict(v);
    if (!cert_report.empty())
      qbox::save_json(qbox::verdict_to_json(v), cert_report);
    exit_code = v.status == qbox::Status::kConsistent     ? 0
                : v.status == qbox::Status::kViolation    ? 1
                                                          : 2;
  });

  // ---------------------------------------------------------------- gp-check
  auto* gp = app.add_subcommand(
      "gp-check", "Verify the canonical operational model of a table");
  std::string gp_probs = "-";
  int gp_depth = -1;
  double gp_tol = 1e-9;
  gp->add_option("--probs", gp_probs, "table JSON ('-' = stdin)");
  gp->add_option("--depth", gp_depth, "verification depth (default: table)");
  gp->add_option("--tol", gp_tol, "tolerance");
  gp->callback([&] {
    const qbox::ProbabilityTable t =
        qbox::table_from_json(qbox::load_json(gp_probs));
    const qbox::GpFunctional f = qbox::gp_from_table(t, gp_tol);
    const qbox::GpReport rep =
        qbox::gp_verify(f, gp_depth > 0 ? gp_depth : t.depth, gp_tol);
    for (const qbox::GpCheckResult& c : rep.checks)
      std::cout << (c.ok ? "[ok]   " : "[FAIL] ") << c.name
                << "  max residual " << fmt(c.max_residual) << "\n";
    std::cout << (rep.ok ? "MODEL OK" : "MODEL BROKEN") << " ("
              << rep.words_checked << " words)\n";
    exit_code = rep.ok ? 0 : 1;
  });

  // ------------------------------------------------------------------ region
  auto* region = app.add_subcommand(
      "region", "Membership of an anchor rectangle (x0 y0 x1 y1)");
  std::vector<double> reg_point;
  double reg_tol = 0.0;
  region->add_option("--point", reg_point, "x0 y0 x1 y1")
      ->required()
      ->expected(4);
  region->add_option("--tol", reg_tol,
                     "signed tolerance (>0 relaxes, <0 demands interior)");
  region->callback([&] {
    const qbox::RegionPoint p{reg_point[0], reg_point[1], reg_point[2],
                              reg_point[3]};
    if (qbox::in_region_clauses(p, reg_tol)) {
      std::cout << "MEMBER\n";
      if (const auto a = qbox::anchor_point(p))
        std::cout << "anchor: (" << fmt((*a)[0]) << ", " << fmt((*a)[1])
                  << ")\n";
      exit_code = 0;
    } else {
      std::cout << "NONMEMBER (clause " << qbox::first_failing_clause(p, reg_tol)
                << ")\n";
      exit_code = 1;
    }
  });

  // ----------------------------------------------------------------- moments
  auto* moments = app.add_subcommand("moments", "Moment-table utilities");
  moments->require_subcommand(1);
  auto* convert = moments->add_subcommand(
      "convert", "Convert between integer and half-odd moment tables");
  std::string conv_dir, conv_in = "-", conv_out = "-";
  int conv_k = -1;
  std::vector<double> conv_anchor{0.0, 0.0};
  convert->add_option("--dir", conv_dir, "int2half or half2int")
      ->required()
      ->check(CLI::IsMember({"int2half", "half2int"}));
  convert->add_option("--in", conv_in, "input table JSON");
  convert->add_option("--out", conv_out, "output table JSON");
  convert->add_option("--K", conv_k, "series truncation (default: depth-1)");
  convert->add_option("--anchor", conv_anchor,
                      "anchor moments Mx(0,0) Mz(0,0) for half2int")
      ->expected(2);
  convert->callback([&] {
    const nlohmann::json j = qbox::load_json(conv_in);
    if (conv_dir == "half2int") {
      const qbox::HalfMomentTable h = qbox::half_moments_from_json(j);
      const int K = conv_k >= 0 ? conv_k : std::max(h.n_max, 1);
      const qbox::IntConversion c =
          qbox::int_from_half(h, conv_anchor[0], conv_anchor[1], K);
      qbox::save_json(qbox::int_moments_to_json(c.table), conv_out);
      std::cerr << "max truncation bound: x " << fmt(max_entry(c.err_x))
                << ", z " << fmt(max_entry(c.err_z))
                << (c.depth_limited ? " (depth-limited)" : "") << "\n";
    } else {
      const qbox::IntMomentTable m = qbox::int_moments_from_json(j);
      const int K = conv_k >= 0 ? conv_k : std::max(m.n_max, 1);
      const qbox::HalfConversion c = qbox::half_from_int(m, K);
      qbox::save_json(qbox::half_moments_to_json(c.table), conv_out);
      std::cerr << "max truncation bound: x " << fmt(max_entry(c.err_x))
                << ", z " << fmt(max_entry(c.err_z))
                << (c.depth_limited ? " (depth-limited)" : "") << "\n";
    }
  });

  // --------------------------------------------------------------- bernstein
  auto* bern = app.add_subcommand(
      "bernstein", "Evaluate the degree-n approximant on a polynomial triple");
  std::string bern_moments = "-", bern_p1 = "0", bern_px = "0", bern_pz = "0";
  int bern_n = 0;
  bern->add_option("--moments", bern_moments, "integer moment table JSON");
  bern->add_option("--p1", bern_p1, "unit-part coefficients, ascending, comma-separated");
  bern->add_option("--px", bern_px, "x-part coefficients");
  bern->add_option("--pz", bern_pz, "z-part coefficients");
  bern->add_option("--n", bern_n, "approximant degree")->required();
  bern->callback([&] {
    const qbox::IntMomentTable m =
        qbox::int_moments_from_json(qbox::load_json(bern_moments));
    qbox::MatrixPolynomial p;
    p.p1 = parse_coeffs(bern_p1);
    p.px = parse_coeffs(bern_px);
    p.pz = parse_coeffs(bern_pz);
    std::cout << fmt(qbox::bernstein_rho_n(m, p, bern_n)) << "\n";
  });

  // -------------------------------------------------------------------- scan
  auto* scan = app.add_subcommand(
      "scan", "Sample truncated statistics into a point cloud");
  std::string scan_coords, scan_out = "-", scan_svg;
  std::vector<int> scan_grid;
  int scan_samples = 0, scan_mixtures = 1;
  std::uint64_t scan_seed = 0;
  bool scan_hull = false;
  scan->add_option("--coords", scan_coords,
                   "comma-separated coordinates, e.g. a:01,b:01")
      ->required();
  scan->add_option("--grid", scan_grid, "t0 theta lambda grid counts")
      ->expected(3);
  scan->add_option("--samples", scan_samples, "random-mode sample count");
  scan->add_option("--seed", scan_seed, "random-mode seed");
  scan->add_option("--mixtures", scan_mixtures, "atoms per random mixture");
  scan->add_flag("--hull", scan_hull, "overlay the convex hull in the SVG");
  scan->add_option("--out", scan_out, "CSV output path ('-' = stdout)");
  scan->add_option("--svg", scan_svg, "also write an SVG plot here");
  scan->callback([&] {
    qbox::SamplerSpec spec;
    std::stringstream ss(scan_coords);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.coords.push_back(qbox::parse_coordinate(item));
    if (scan_samples > 0) {
      spec.count = scan_samples;
      spec.seed = scan_seed;
      spec.mixture_atoms = scan_mixtures;
    } else if (scan_grid.size() == 3) {
      spec.grid = {scan_grid[0], scan_grid[1], scan_grid[2]};
    } else {
      spec.grid = {33, 33, 17};
    }
    const qbox::PointCloud cloud = qbox::scan(spec);
    if (scan_out == "-") {
      qbox::emit_csv(cloud, std::cout);
    } else {
      std::ofstream os(scan_out);
      if (!os) throw std::runtime_error("cannot open " + scan_out);
      qbox::emit_csv(cloud, os);
    }
    if (!scan_svg.empty()) {
      std::ofstream os(scan_svg);
      if (!os) throw std::runtime_error("cannot open " + scan_svg);
      qbox::emit_svg(cloud, os, scan_hull);
    }
  });

  // -------------------------------------------------------------------- demo
  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  std::string demo_which;
  demo->add_option("which", demo_which, "demo name (three-box)")->required();
  demo->callback([&] {
    if (demo_which != "three-box")
      throw std::invalid_argument("unknown demo '" + demo_which + "'");
    const qbox::ThreeBoxReport rep = qbox::three_box_demo();
    std::cout << "pre/post overlap |<pre|post>| = " << fmt(rep.overlap_abs)
              << "\n";
    for (int k = 0; k < 3; ++k)
      std::cout << "P(found in box " << k + 1 << " | post-selected) = "
                << fmt(rep.box_prob[static_cast<std::size_t>(k)]) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
