// Command-line front end: emits ground-state reports, spectra, phase
// diagrams and entanglement sweeps as CSV or JSON, and runs the
// self-validation suites. Identical invocations produce byte-identical
// output; exit codes are 0 (success), 1 (validation failure), 2 (usage or
// domain error).

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbh/qbh.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
}

qbh::GridSpec parse_grid(const std::string& text) {
  qbh::GridSpec g;
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw std::invalid_argument("grid must be min:max:steps, got '" + text + "'");
  try {
    std::size_t used = 0;
    g.min = std::stod(text.substr(0, first), &used);
    if (used != first) throw std::invalid_argument(text);
    g.max = std::stod(text.substr(first + 1, second - first - 1), &used);
    if (used != second - first - 1) throw std::invalid_argument(text);
    const std::string steps = text.substr(second + 1);
    g.steps = std::stoi(steps, &used);
    if (used != steps.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must be min:max:steps, got '" + text + "'");
  }
  g.validate();
  return g;
}

unsigned thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const char* env = std::getenv("QBH_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) throw std::invalid_argument("QBH_THREADS must be a nonnegative integer");
  return v == 0 ? hw : static_cast<unsigned>(v);
}

std::string degeneracy_signature(const std::vector<std::pair<double, int>>& classes) {
  std::string s;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0) s += ':';
    s += std::to_string(classes[i].second);
  }
  return s;
}

ordered_json report_to_json(const qbh::GroundStateReport& r, int lambda) {
  ordered_json j;
  j["lambda"] = lambda;
  j["theta"] = r.point.theta;
  j["h"] = r.point.h;
  j["sz"] = r.point.sz;
  j["energy"] = r.point.energy;
  j["magnetization"] = r.point.magnetization;
  j["degenerate"] = r.point.degenerate;
  j["amplitudes"] = r.amplitudes;
  j["entropy"] = r.entropy;
  j["k"] = r.k;
  j["f_s"] = r.f_s;
  j["f_t"] = r.f_t;
  j["ppm"] = r.ppm;
  j["p0"] = r.p0;
  return j;
}

int cmd_ground_state(int lambda, double theta, double h, const std::string& format,
                     const std::string& output) {
  const qbh::GroundStateReport r = qbh::ground_state_report({lambda, theta, h});
  std::string payload;
  if (format == "csv") {
    std::ostringstream os;
    os << "# entropy in bits (log2); energies in |J1| units\n";
    os << "lambda,theta,h,sz,energy,magnetization,degenerate";
    for (int i = 0; i < 9; ++i) os << ",amp" << i;
    os << ",entropy,k,f_s,f_t,ppm,p0\n";
    os << lambda << ',' << fmt(r.point.theta) << ',' << fmt(r.point.h) << ',' << r.point.sz << ','
       << fmt(r.point.energy) << ',' << fmt(r.point.magnetization) << ','
       << (r.point.degenerate ? 1 : 0);
    for (double a : r.amplitudes) os << ',' << fmt(a);
    os << ',' << fmt(r.entropy) << ',' << fmt(r.k) << ',' << fmt(r.f_s) << ',' << fmt(r.f_t) << ','
       << fmt(r.ppm) << ',' << fmt(r.p0) << '\n';
    payload = os.str();
  } else {
    payload = report_to_json(r, lambda).dump(2) + "\n";
  }
  write_output(output, payload);
  return 0;
}

int cmd_spectrum(int lambda, const std::string& axis, double fixed, const std::string& grid_text,
                 const std::string& format, const std::string& output) {
  const qbh::GridSpec grid = parse_grid(grid_text);
  const qbh::SweepAxis ax = (axis == "h") ? qbh::SweepAxis::h : qbh::SweepAxis::theta;
  const auto rows = qbh::spectrum_sweep(lambda, ax, fixed, grid);
  std::string payload;
  if (format == "json") {
    ordered_json j;
    j["lambda"] = lambda;
    j["axis"] = axis;
    j["fixed"] = fixed;
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r;
      r["x"] = row.x;
      r["energies"] = row.energies;
      r["degeneracy"] = degeneracy_signature(row.classes);
      out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# energies in |J1| units, ascending\n";
    os << axis;
    for (int i = 1; i <= 9; ++i) os << ",e" << i;
    os << ",degeneracy\n";
    for (const auto& row : rows) {
      os << fmt(row.x);
      for (double e : row.energies) os << ',' << fmt(e);
      os << ',' << degeneracy_signature(row.classes) << '\n';
    }
    payload = os.str();
  }
  write_output(output, payload);
  return 0;
}

int cmd_phase_diagram(int lambda, const std::string& theta_grid, const std::string& h_grid,
                      const std::string& format, const std::string& output) {
  qbh::SweepSpec spec;
  spec.lambda = lambda;
  spec.theta = parse_grid(theta_grid);
  spec.h = parse_grid(h_grid);
  const auto grid = qbh::sweep(spec, thread_count());
  std::string payload;
  if (format == "json") {
    ordered_json j;
    j["lambda"] = lambda;
    ordered_json pts = ordered_json::array();
    for (const auto& pt : grid) {
      ordered_json q;
      q["theta"] = pt.theta;
      q["h"] = pt.h;
      q["sz"] = pt.sz;
      q["energy"] = pt.energy;
      q["degenerate"] = pt.degenerate;
      pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# energies in |J1| units; row-major (theta outer, h inner)\n";
    os << "theta,h,sz,energy,degenerate\n";
    for (const auto& pt : grid)
      os << fmt(pt.theta) << ',' << fmt(pt.h) << ',' << pt.sz << ',' << fmt(pt.energy) << ','
         << (pt.degenerate ? 1 : 0) << '\n';
    payload = os.str();
  }
  write_output(output, payload);
  return 0;
}

int cmd_entanglement_sweep(int lambda, const std::string& theta_grid, const std::string& format,
                           const std::string& output) {
  const auto rows = qbh::entanglement_sweep(lambda, parse_grid(theta_grid));
  std::string payload;
  if (format == "json") {
    ordered_json j;
    j["lambda"] = lambda;
    ordered_json out_rows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r;
      r["theta"] = row.theta;
      r["entropy"] = row.entropy;
      r["k"] = row.k;
      r["p0"] = row.p0;
      r["ppm"] = row.ppm;
      r["f_s"] = row.f_s;
      r["f_t"] = row.f_t;
      r["is_global_ground"] = row.is_global_ground;
      out_rows.push_back(std::move(r));
    }
    j["rows"] = std::move(out_rows);
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# S^z=0 sector ground state; entropy in bits (log2)\n";
    os << "theta,entropy,k,p0,ppm,f_s,f_t,is_global_ground\n";
    for (const auto& row : rows)
      os << fmt(row.theta) << ',' << fmt(row.entropy) << ',' << fmt(row.k) << ',' << fmt(row.p0)
         << ',' << fmt(row.ppm) << ',' << fmt(row.f_s) << ',' << fmt(row.f_t) << ','
         << (row.is_global_ground ? 1 : 0) << '\n';
    payload = os.str();
  }
  write_output(output, payload);
  return 0;
}

int cmd_hubbard(const std::string& mode, const qbh::HubbardParams& p, const std::string& format,
                const std::string& output) {
  std::string payload;
  if (mode == "map") {
    const qbh::EffectiveCouplings c = qbh::map_to_effective(p);
    if (format == "csv") {
      std::ostringstream os;
      os << "t,u0,u2,field,j0,j1,j2,lambda_out,theta_out,h_out,perturbative_ok\n";
      os << fmt(p.t) << ',' << fmt(p.u0) << ',' << fmt(p.u2) << ',' << fmt(p.field) << ','
         << fmt(c.j0) << ',' << fmt(c.j1) << ',' << fmt(c.j2) << ',' << c.lambda_out << ','
         << fmt(c.theta_out) << ',' << fmt(c.h_out) << ',' << (c.perturbative_ok ? 1 : 0) << '\n';
      payload = os.str();
    } else {
      ordered_json j;
      j["t"] = p.t;
      j["u0"] = p.u0;
      j["u2"] = p.u2;
      j["field"] = p.field;
      j["j0"] = c.j0;
      j["j1"] = c.j1;
      j["j2"] = c.j2;
      j["lambda_out"] = c.lambda_out;
      j["theta_out"] = c.theta_out;
      j["h_out"] = c.h_out;
      j["perturbative_ok"] = c.perturbative_ok;
      payload = j.dump(2) + "\n";
    }
  } else if (mode == "compare") {
    const qbh::SpectrumComparison cmp = qbh::compare_spectra(p);
    if (format == "csv") {
      std::ostringstream os;
      os << "# max_deviation in |J1| units\n";
      os << "t,u0,u2,field,max_deviation,offset_used\n";
      os << fmt(p.t) << ',' << fmt(p.u0) << ',' << fmt(p.u2) << ',' << fmt(p.field) << ','
         << fmt(cmp.max_deviation) << ',' << fmt(cmp.offset_used) << '\n';
      payload = os.str();
    } else {
      ordered_json j;
      j["t"] = p.t;
      j["u0"] = p.u0;
      j["u2"] = p.u2;
      j["field"] = p.field;
      j["max_deviation"] = cmp.max_deviation;
      j["offset_used"] = cmp.offset_used;
      payload = j.dump(2) + "\n";
    }
  } else {  // spectrum
    const auto ev = qbh::eigh(qbh::build_hubbard_hamiltonian(p)).values;
    if (format == "csv") {
      std::ostringstream os;
      os << "# raw energy units\n";
      os << "index,energy\n";
      for (std::size_t i = 0; i < ev.size(); ++i) os << i << ',' << fmt(ev[i]) << '\n';
      payload = os.str();
    } else {
      ordered_json j;
      j["t"] = p.t;
      j["u0"] = p.u0;
      j["u2"] = p.u2;
      j["field"] = p.field;
      j["eigenvalues"] = ev;
      payload = j.dump(2) + "\n";
    }
  }
  write_output(output, payload);
  return 0;
}

int cmd_validate(unsigned seed, const std::string& format, const std::string& output) {
  qbh::ValidationOptions opt;
  opt.seed = seed;
  const auto results = qbh::run_validation(opt);

  ordered_json j;
  j["seed"] = seed;
  j["passed"] = qbh::all_passed(results);
  ordered_json suites = ordered_json::array();
  for (const auto& r : results) {
    ordered_json s;
    s["name"] = r.name;
    s["passed"] = r.passed;
    s["checks"] = r.checks;
    s["failures"] = r.failures;
    s["max_error"] = r.max_error;
    suites.push_back(std::move(s));
  }
  j["suites"] = std::move(suites);

  std::string payload;
  if (format != "json") {
    std::ostringstream os;
    for (const auto& r : results)
      os << (r.passed ? "ok  " : "FAIL") << "  " << r.name << "  checks=" << r.checks
         << "  failures=" << r.failures << "  max_error=" << fmt(r.max_error) << '\n';
    os << (qbh::all_passed(results) ? "all suites passed" : "validation FAILED") << '\n';
    payload = os.str() + j.dump(2) + "\n";
  } else {
    payload = j.dump(2) + "\n";
  }
  write_output(output, payload);
  return qbh::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-site spin-1 dimer laboratory: exact diagonalization, phase diagrams and "
               "ground-state entanglement"};
  // long-form help only; -h would shadow the field flag --h
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  int exit_code = 0;
  std::string format = "json";
  std::string output;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", output, "write to a file instead of stdout");

  // ground-state
  {
    auto* cmd = app.add_subcommand("ground-state", "global ground state with all measures");
    auto lambda = std::make_shared<int>(1);
    auto theta = std::make_shared<double>(0.0);
    auto theta_deg = std::make_shared<double>(0.0);
    auto h = std::make_shared<double>(0.0);
    cmd->add_option("--lambda", *lambda, "sign of the linear coupling (+1 or -1)")->required();
    auto* theta_opt = cmd->add_option("--theta", *theta, "biquadratic angle in radians");
    auto* deg_opt =
        cmd->add_option("--theta-deg", *theta_deg, "biquadratic angle in degrees")->excludes(theta_opt);
    cmd->add_option("--h", *h, "dimensionless magnetic field, >= 0");
    cmd->callback([&, lambda, theta, theta_deg, h, deg_opt] {
      const double th = (deg_opt->count() > 0) ? *theta_deg * std::numbers::pi / 180.0 : *theta;
      exit_code = cmd_ground_state(*lambda, th, *h, format, output);
    });
  }

  // spectrum
  {
    auto* cmd = app.add_subcommand("spectrum", "closed-form level sweep along theta or h");
    auto lambda = std::make_shared<int>(1);
    auto axis = std::make_shared<std::string>("theta");
    auto fixed = std::make_shared<double>(0.0);
    auto grid = std::make_shared<std::string>();
    cmd->add_option("--lambda", *lambda)->required();
    cmd->add_option("--axis", *axis, "sweep axis")->check(CLI::IsMember({"theta", "h"}));
    cmd->add_option("--fixed", *fixed, "value of the other coordinate");
    cmd->add_option("--grid", *grid, "min:max:steps (inclusive endpoints)");
    cmd->callback([&, lambda, axis, fixed, grid] {
      std::string g = *grid;
      if (g.empty()) g = (*axis == "h") ? "0:3:301" : "-1.5:1.5:301";
      const std::string fmt_used = (format == "json") ? "json" : "csv";
      exit_code = cmd_spectrum(*lambda, *axis, *fixed, g, fmt_used, output);
    });
  }

  // phase-diagram
  {
    auto* cmd = app.add_subcommand("phase-diagram", "ground-sector map over (theta, h)");
    auto lambda = std::make_shared<int>(1);
    auto theta_grid = std::make_shared<std::string>("-1.5:1.5:201");
    auto h_grid = std::make_shared<std::string>("0:3:201");
    cmd->add_option("--lambda", *lambda)->required();
    cmd->add_option("--theta-grid", *theta_grid, "min:max:steps");
    cmd->add_option("--h-grid", *h_grid, "min:max:steps");
    cmd->callback([&, lambda, theta_grid, h_grid] {
      const std::string fmt_used = (format == "json") ? "json" : "csv";
      exit_code = cmd_phase_diagram(*lambda, *theta_grid, *h_grid, fmt_used, output);
    });
  }

  // entanglement-sweep
  {
    auto* cmd = app.add_subcommand("entanglement-sweep",
                                   "S^z=0 sector entanglement measures along theta");
    auto lambda = std::make_shared<int>(1);
    auto theta_grid = std::make_shared<std::string>("-1.55:1.55:311");
    cmd->add_option("--lambda", *lambda)->required();
    cmd->add_option("--theta-grid", *theta_grid, "min:max:steps");
    cmd->callback([&, lambda, theta_grid] {
      const std::string fmt_used = (format == "json") ? "json" : "csv";
      exit_code = cmd_entanglement_sweep(*lambda, *theta_grid, fmt_used, output);
    });
  }

  // hubbard map|compare|spectrum
  {
    auto* cmd = app.add_subcommand("hubbard", "microscopic dimer model");
    cmd->require_subcommand(1);
    for (const std::string mode : {"map", "compare", "spectrum"}) {
      auto* sub = cmd->add_subcommand(
          mode, mode == "map"       ? "second-order exchange couplings"
                : mode == "compare" ? "deviation between the dimer and its exchange model"
                                    : "all 21 eigenvalues");
      auto p = std::make_shared<qbh::HubbardParams>();
      sub->add_option("--t", p->t, "tunneling amplitude")->required();
      sub->add_option("--u0", p->u0, "spin-0 channel pair energy")->required();
      sub->add_option("--u2", p->u2, "spin-2 channel pair energy")->required();
      sub->add_option("--field", p->field, "Zeeman energy");
      sub->callback([&, mode, p] { exit_code = cmd_hubbard(mode, *p, format, output); });
    }
  }

  // validate
  {
    auto* cmd = app.add_subcommand("validate", "run the self-validation suites");
    auto seed = std::make_shared<unsigned>(1);
    cmd->add_option("--seed", *seed, "seed for the randomized suites");
    cmd->callback([&, seed] { exit_code = cmd_validate(*seed, format, output); });
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
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
