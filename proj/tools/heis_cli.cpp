// Command-line surface for distance queries, geodesic/sphere export and
// convergence reports. Output is CSV (default) or JSON lines; every numeric
// field is printed with up to 17 significant digits so values round-trip.

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heis/heis.hpp"

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Row {
  std::vector<std::pair<std::string, std::string>> fields; // name -> serialized value
  std::vector<bool> quoted;

  void add(const std::string& name, double v) {
    fields.emplace_back(name, num(v));
    quoted.push_back(false);
  }
  void add(const std::string& name, const std::string& v) {
    fields.emplace_back(name, v);
    quoted.push_back(true);
  }
};

class Emitter {
public:
  explicit Emitter(bool json) : json_(json) {}

  void operator()(const Row& row) {
    if (json_) {
      std::string line = "{";
      for (size_t i = 0; i < row.fields.size(); ++i) {
        if (i) line += ",";
        line += "\"" + row.fields[i].first + "\":";
        const std::string& v = row.fields[i].second;
        // inf has no JSON literal; quote it (and all strings)
        if (row.quoted[i] || v == "inf" || v == "-inf" || v == "nan")
          line += "\"" + v + "\"";
        else
          line += v;
      }
      line += "}";
      std::puts(line.c_str());
    } else {
      if (!header_done_) {
        std::string h;
        for (size_t i = 0; i < row.fields.size(); ++i) {
          if (i) h += ",";
          h += row.fields[i].first;
        }
        std::puts(h.c_str());
        header_done_ = true;
      }
      std::string line;
      for (size_t i = 0; i < row.fields.size(); ++i) {
        if (i) line += ",";
        line += row.fields[i].second;
      }
      std::puts(line.c_str());
    }
  }

private:
  bool json_;
  bool header_done_{false};
};

heis::GroupPoint parse_point(const std::string& s) {
  std::stringstream ss(s);
  heis::GroupPoint q;
  char c1 = 0, c2 = 0;
  if (!(ss >> q.x >> c1 >> q.y >> c2 >> q.z) || c1 != ',' || c2 != ',')
    throw CLI::ValidationError("-q", "expected x,y,z");
  return q;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal synthesis for the Riemannian family P_eps on the "
               "Heisenberg group and its sub-Riemannian limit P_0"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // dist
  auto* dist = app.add_subcommand("dist", "Distance from the identity to a point");
  double d_eps = 1.0, d_tol = 1e-12;
  std::string d_q;
  dist->add_option("--eps", d_eps, "Metric parameter (> 0)")->required();
  dist->add_option("-q", d_q, "Target point x,y,z")->required();
  dist->add_option("--tol", d_tol, "Solver tolerance")->capture_default_str();

  // geodesic
  auto* geo = app.add_subcommand("geodesic", "Export a geodesic polyline");
  double g_eps = 1.0, g_theta = 0.0, g_phi = 0.0, g_t = 1.0;
  int g_n = 100;
  geo->add_option("--eps", g_eps, "Metric parameter (0 selects P_0)")->required();
  geo->add_option("--theta", g_theta, "Covector theta (momentum c when eps = 0)")->required();
  geo->add_option("--phi", g_phi, "Covector phi")->capture_default_str();
  geo->add_option("--t", g_t, "Endpoint time")->required();
  geo->add_option("-n", g_n, "Number of segments")->capture_default_str();

  // sphere
  auto* sph = app.add_subcommand("sphere", "Sample the sphere S(r)");
  double s_eps = 1.0, s_r = 1.0;
  int s_nt = 65, s_np = 64;
  bool s_section = false;
  sph->add_option("--eps", s_eps, "Metric parameter (0 selects P_0)")->required();
  sph->add_option("--r", s_r, "Sphere radius")->required();
  sph->add_option("--n-theta", s_nt, "Samples across the band")->capture_default_str();
  sph->add_option("--n-phi", s_np, "Samples around the axis")->capture_default_str();
  sph->add_flag("--section", s_section, "Emit the meridian section (theta,rho,z)");

  // cut-locus
  auto* cut = app.add_subcommand("cut-locus", "Axis samples with cut-locus membership");
  double c_eps = 1.0, c_zmax = 10.0;
  int c_n = 101;
  cut->add_option("--eps", c_eps, "Metric parameter (>= 0)")->required();
  cut->add_option("--zmax", c_zmax, "Half-width of the z range")->capture_default_str();
  cut->add_option("-n", c_n, "Number of samples")->capture_default_str();

  // converge
  auto* cnv = app.add_subcommand("converge", "eps -> 0 convergence diagnostics");
  std::string v_point, v_eps_list;
  double v_r = 0.0;
  int v_n_probe = 129, v_n_sample = 257;
  cnv->add_option("--point", v_point, "Point mode: theta,phi,t (exp map residual)");
  cnv->add_option("--r", v_r, "Sphere mode: radius (liminf gap)");
  cnv->add_option("--eps-list", v_eps_list, "Comma-separated eps sequence");
  cnv->add_option("--n-probe", v_n_probe, "S_0 probe count (sphere mode)")->capture_default_str();
  cnv->add_option("--n-sample", v_n_sample, "S_eps sample count (sphere mode)")->capture_default_str();

  // let the global --format appear after a subcommand as well
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  Emitter emit(format == "json");

  try {
    if (*dist) {
      const heis::GroupPoint q = parse_point(d_q);
      const heis::SolveReport rep = heis::solve_point(heis::Metric(d_eps), q, d_tol);
      Row row;
      row.add("eps", d_eps);
      row.add("x", q.x);
      row.add("y", q.y);
      row.add("z", q.z);
      row.add("distance", rep.time);
      row.add("branch", heis::to_string(rep.branch));
      row.add("theta", rep.momentum.theta);
      row.add("phi", rep.momentum.phi);
      row.add("t", rep.time);
      row.add("residual", rep.residual);
      emit(row);
    } else if (*geo) {
      for (int i = 0; i <= g_n; ++i) {
        const double ti = g_t * i / g_n;
        const heis::GroupPoint p =
            g_eps == 0.0 ? heis::exp_sr({g_theta, g_phi}, ti)
                         : heis::exp_riemann(heis::Metric(g_eps), {g_theta, g_phi}, ti);
        Row row;
        row.add("t", ti);
        row.add("x", p.x);
        row.add("y", p.y);
        row.add("z", p.z);
        emit(row);
      }
    } else if (*sph) {
      const auto set = heis::sample_sphere(heis::Metric(s_eps), s_r, s_nt, s_np);
      if (s_section) {
        for (const auto& mp : heis::cross_section(set)) {
          Row row;
          row.add("theta", mp.theta);
          row.add("rho", mp.rho);
          row.add("z", mp.z);
          emit(row);
        }
      } else {
        for (const auto& s : set.samples) {
          Row row;
          row.add("theta", s.theta);
          row.add("phi", s.phi);
          row.add("x", s.point.x);
          row.add("y", s.point.y);
          row.add("z", s.point.z);
          emit(row);
        }
      }
    } else if (*cut) {
      for (int i = 0; i < c_n; ++i) {
        const double z = c_n == 1 ? 0.0 : -c_zmax + 2.0 * c_zmax * i / (c_n - 1.0);
        Row row;
        row.add("z", z);
        row.add("chi", static_cast<double>(heis::cut_chi(c_eps, {0.0, 0.0, z})));
        emit(row);
      }
    } else if (*cnv) {
      if (v_point.empty() == (v_r <= 0.0))
        throw CLI::ValidationError("converge", "exactly one of --point or --r required");
      std::vector<double> eps_seq =
          v_eps_list.empty() ? heis::default_eps_sequence() : parse_list(v_eps_list);
      std::vector<double> residuals;
      double threshold;
      if (!v_point.empty()) {
        const auto p = parse_list(v_point);
        if (p.size() != 3) throw CLI::ValidationError("--point", "expected theta,phi,t");
        for (double e : eps_seq)
          residuals.push_back(heis::exp_residual(p[0], p[1], p[2], e).max_norm);
        threshold = 1e-3;
      } else {
        for (double e : eps_seq)
          residuals.push_back(heis::sphere_liminf_gap(v_r, e, v_n_probe, v_n_sample));
        threshold = 10.0 * heis::sphere_sampling_resolution(v_r, v_n_probe);
      }
      const auto rep = heis::make_convergence_report(eps_seq, residuals, threshold);
      for (size_t i = 0; i < rep.eps_sequence.size(); ++i) {
        Row row;
        row.add("eps", rep.eps_sequence[i]);
        row.add("residual_or_gap", rep.residuals[i]);
        row.add("verdict", heis::to_string(rep.verdict));
        emit(row);
      }
    }
  } catch (const heis::NoConvergence& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
