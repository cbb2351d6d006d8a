#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bubbles/certificates.hpp"
#include "bubbles/solver.hpp"
#include "bubbles/svg.hpp"
#include "bubbles/topology.hpp"

using namespace bubbles;

namespace {

int default_precision() {
  if (const char* env = std::getenv("BUBBLES_CERT_PRECISION")) {
    int p = std::atoi(env);
    if (p >= 1 && p <= 2) return p;
  }
  return 1;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream of(path);
  if (!of) throw Error("IoError", "cannot open " + path);
  of << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(int argc, char** argv) {
  CLI::App app{"planar minimal-cluster toolkit: exact arc geometry, stationary "
               "cluster constructors, certified inequality checks, topology "
               "enumeration and equal-area solving"};
  app.require_subcommand(1);

  // verify-constants
  auto* vc = app.add_subcommand("verify-constants",
                                "evaluate the built-in inequality ledger with "
                                "certified enclosures");
  bool vc_json = false;
  int vc_precision = default_precision();
  bool vc_serial = false;
  vc->add_flag("--json", vc_json, "emit the report as JSON");
  vc->add_option("--precision", vc_precision, "precision level: 1 = double, 2 = extended")
      ->check(CLI::Range(1, 2))
      ->capture_default_str();
  vc->add_flag("--serial", vc_serial, "use the serial reference evaluator");

  // construct
  auto* con = app.add_subcommand("construct", "build a cluster and emit its JSON");
  std::string con_out;
  con->require_subcommand(1);
  double db_r1 = 1.0, db_r2 = 1.0;
  auto* con_db = con->add_subcommand("double-bubble", "standard double bubble");
  con_db->add_option("--out", con_out, "output file (default stdout)");
  con_db->add_option("--r1", db_r1, "external radius of region 1")->capture_default_str();
  con_db->add_option("--r2", db_r2, "external radius of region 2")->capture_default_str();
  double tb_r = 1.0;
  auto* con_tb = con->add_subcommand("triple-bubble", "standard triple bubble");
  con_tb->add_option("--out", con_out, "output file (default stdout)");
  con_tb->add_option("--r", tb_r, "outer half-circle radius")->capture_default_str();
  double cp_x = 0.2707, cp_y = 0.394;
  auto* con_cp = con->add_subcommand("competitor", "four-region sandwich-shaped competitor");
  con_cp->add_option("--out", con_out, "output file (default stdout)");
  con_cp->add_option("--x", cp_x, "half length of the central segment")->capture_default_str();
  con_cp->add_option("--y", cp_y, "slant edge half length")->capture_default_str();
  double sw_r1 = 1.0, sw_r2 = 1.0, sw_r3 = 0.9, sw_r4 = 0.9;
  auto* con_sw = con->add_subcommand("sandwich", "double bubble with grown triangles");
  con_sw->add_option("--out", con_out, "output file (default stdout)");
  con_sw->add_option("--r1", sw_r1, "quad region 1 radius")->capture_default_str();
  con_sw->add_option("--r2", sw_r2, "quad region 2 radius")->capture_default_str();
  con_sw->add_option("--r3", sw_r3, "triangle region 3 radius")->capture_default_str();
  con_sw->add_option("--r4", sw_r4, "triangle region 4 radius")->capture_default_str();
  double fl_pc = 2.0, fl_po = 1.0;
  auto* con_fl = con->add_subcommand("flower", "three-fold symmetric flower");
  con_fl->add_option("--out", con_out, "output file (default stdout)");
  con_fl->add_option("--pc", fl_pc, "center region pressure")->capture_default_str();
  con_fl->add_option("--po", fl_po, "outer region pressure")->capture_default_str();

  // check
  auto* chk = app.add_subcommand("check", "stationarity / turning-angle / pressure-formula report");
  std::string chk_file;
  double chk_tol = 1e-9;
  chk->add_option("file", chk_file, "cluster JSON file")->required();
  chk->add_option("--tol", chk_tol, "stationarity tolerance")->capture_default_str();

  // solve
  auto* sol = app.add_subcommand("solve", "equal-area solving");
  sol->require_subcommand(1);
  std::string sol_csv;
  auto* sol_sw = sol->add_subcommand("sandwich", "equal-area sandwich at areas (1,1,1,1)");
  bool sol_symmetric = false;
  sol_sw->add_flag("--symmetric", sol_symmetric, "solve the mirror-symmetric family");
  auto* sol_fl = sol->add_subcommand("flower", "equal-area symmetric flower");
  auto* sol_scan = sol->add_subcommand("scan", "asymmetry scan over r1/r2 ratios");
  std::vector<double> scan_ratios{1.0, 1.05, 1.1, 1.2};
  sol_scan->add_option("--ratios", scan_ratios, "r1/r2 ratios, each >= 1")
      ->delimiter(',')
      ->capture_default_str();
  sol_scan->add_option("--csv", sol_csv, "write scan rows as CSV to this file");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "enumerate region-labeled trivalent planar maps");
  int en_regions = 4, en_components = 4;
  std::string en_preset = "paper", en_jsonl;
  bool en_serial = false;
  en->add_option("--regions", en_regions, "number of bounded regions N")->required();
  en->add_option("--components", en_components, "number of bounded faces M")->required();
  en->add_option("--preset", en_preset, "predicate preset")
      ->check(CLI::IsMember({"paper", "base"}))
      ->capture_default_str();
  en->add_option("--jsonl", en_jsonl, "write JSON lines to this file");
  en->add_flag("--serial", en_serial, "use the serial reference enumerator");

  // render
  auto* ren = app.add_subcommand("render", "render a cluster JSON file as SVG");
  std::string ren_file, ren_out;
  bool ren_labels = false;
  ren->add_option("file", ren_file, "cluster JSON file")->required();
  ren->add_option("--out", ren_out, "output SVG file")->required();
  ren->add_flag("--labels", ren_labels, "draw region / pressure labels");

  CLI11_PARSE(app, argc, argv);

  if (vc->parsed()) {
    CertReport rep = vc_serial ? check_ledger_serial(vc_precision)
                               : check_ledger(vc_precision, true);
    std::cout << (vc_json ? report_to_json(rep) : report_to_text(rep));
    if (!rep.all_essential_pass()) return 1;
    if (rep.fail > 0 || rep.marginal > 0) return 2;
    return 0;
  }

  if (con->parsed()) {
    Cluster c;
    if (con_db->parsed()) c = make_double_bubble(db_r1, db_r2);
    else if (con_tb->parsed()) c = make_triple_bubble(tb_r);
    else if (con_cp->parsed()) c = make_competitor(cp_x, cp_y);
    else if (con_sw->parsed()) c = make_sandwich(sw_r1, sw_r2, sw_r3, sw_r4);
    else c = make_flower_symmetric(fl_pc, fl_po);
    write_output(con_out, save_cluster_json(c));
    return 0;
  }

  if (chk->parsed()) {
    Cluster c = load_cluster_json(read_file(chk_file));
    StationarityReport rep = check_stationary(c, chk_tol);
    char buf[256];
    std::snprintf(buf, sizeof buf, "angle residual          %.12g\n", rep.max_angle_residual);
    std::cout << buf;
    std::snprintf(buf, sizeof buf, "curvature residual      %.12g\n", rep.max_curvature_residual);
    std::cout << buf;
    std::snprintf(buf, sizeof buf, "vertex curvature sum    %.12g\n", rep.max_vertex_curvature_sum);
    std::cout << buf;
    for (size_t i = 0; i < rep.turning_residuals.size(); ++i) {
      bool ext = i + 1 == rep.turning_residuals.size();
      std::snprintf(buf, sizeof buf, "turning residual %-6s %.12g\n",
                    ext ? "E0" : ("F" + std::to_string(i)).c_str(), rep.turning_residuals[i]);
      std::cout << buf;
    }
    std::snprintf(buf, sizeof buf, "pressure formula        %.12g\n", rep.pressure_formula_residual);
    std::cout << buf;
    std::cout << "stationary at tol " << chk_tol << ": " << (rep.pass(chk_tol) ? "PASS" : "FAIL")
              << "\n";
    return 0;
  }

  if (sol->parsed()) {
    if (sol_scan->parsed()) {
      std::vector<ScanRow> rows = asymmetry_scan(scan_ratios);
      std::string csv = scan_to_csv(rows);
      if (!sol_csv.empty()) write_output(sol_csv, csv);
      std::cout << csv;
      for (const auto& r : rows)
        if (!r.converged) return 1;
      return 0;
    }
    SolveResult r = sol_fl->parsed() ? solve_flower_equal_areas()
                                     : solve_sandwich_equal_areas(sol_symmetric);
    char buf[256];
    std::cout << "converged " << (r.converged ? "yes" : "no") << " in " << r.iterations
              << " iterations\n";
    std::cout << "radii";
    for (double v : r.radii) { std::snprintf(buf, sizeof buf, " %.12g", v); std::cout << buf; }
    std::cout << "\npressures";
    for (size_t i = 1; i < r.pressures.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %.12g", r.pressures[i]);
      std::cout << buf;
    }
    std::cout << "\nareas";
    for (double v : r.areas) { std::snprintf(buf, sizeof buf, " %.12g", v); std::cout << buf; }
    std::snprintf(buf, sizeof buf, "\nperimeter %.12g\n", r.perimeter);
    std::cout << buf;
    std::snprintf(buf, sizeof buf, "residuals: area %.3g stationarity %.3g pressure-formula %.3g\n",
                  r.area_residual, r.stationarity_residual, r.pressure_formula_residual);
    std::cout << buf;
    return r.converged ? 0 : 1;
  }

  if (en->parsed()) {
    PredicateSet preds = en_preset == "paper" ? PredicateSet::paper() : PredicateSet::base();
    EnumerationResult r = enumerate_topologies(en_regions, en_components, preds, !en_serial);
    if (!en_jsonl.empty()) write_output(en_jsonl, enumeration_to_jsonl(r, en_regions, en_components));
    std::cout << r.kept.size() << " signatures";
    if (!r.excluded_by.empty()) std::cout << " (" << r.excluded_by.size() << " excluded)";
    std::cout << "\n";
    for (const auto& s : r.kept) std::cout << s << "\n";
    for (const auto& [s, why] : r.excluded_by) std::cout << s << "  excluded-by " << why << "\n";
    return 0;
  }

  if (ren->parsed()) {
    Cluster c = load_cluster_json(read_file(ren_file));
    write_output(ren_out, render_svg(c, ren_labels));
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
