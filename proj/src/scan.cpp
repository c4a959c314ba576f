#include "vdwshape/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "vdwshape/bem.hpp"
#include "vdwshape/constants.hpp"
#include "vdwshape/mesh.hpp"
#include "vdwshape/multipole.hpp"
#include "vdwshape/pfa.hpp"

namespace vdw {

namespace {

using Eigen::MatrixXd;
using Eigen::Vector3d;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse number '" + s + "'");
  }
}

// run fn(0..n-1) on `threads` workers; points must be independent
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::string sanitize_warn(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

// effective settings echoed into the output header
struct Echo {
  std::string section;
  std::vector<std::pair<std::string, std::string>> items;
  void add(const std::string& k, const std::string& v) { items.emplace_back(k, v); }
  void add_num(const std::string& k, double v) { items.emplace_back(k, fmt_g17(v)); }
};

ScanResult make_result(const Echo& echo, const std::string& units,
                       std::vector<std::string> columns) {
  ScanResult r;
  r.header.push_back(kVersion);
  r.header.push_back("subcommand: " + echo.section);
  r.header.push_back("units: " + units);
  r.header.push_back("sign convention: U < 0 binds; F > 0 is attraction");
  for (const auto& [k, v] : echo.items)
    r.header.push_back("config: " + echo.section + "." + k + " = " + v);
  std::string cols = "columns:";
  for (size_t i = 0; i < columns.size(); ++i)
    cols += (i ? ", " : " ") + columns[i];
  r.header.push_back(cols);
  r.columns = std::move(columns);
  return r;
}

void finish_result(ScanResult& r) {
  r.n_points = static_cast<int>(r.rows.size());
  r.n_failed = 0;
  for (const auto& row : r.rows)
    if (!row.empty() && row.back().rfind("error:", 0) == 0) ++r.n_failed;
}

int clampi(int v, int lo, int hi) { return std::max(lo, std::min(hi, v)); }

}  // namespace

//------------------------------------------------------------------------------
// Config

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + " line " + std::to_string(lineno) +
                          ": unterminated [section]");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError(origin + " line " + std::to_string(lineno) +
                          ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + " line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + " line " + std::to_string(lineno) +
                        ": empty key");
    if (section.empty())
      throw ConfigError(origin + " line " + std::to_string(lineno) +
                        ": key '" + key + "' outside any [section]");
    cfg.kv_[section + "." + key] = val;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_text(os.str(), path);
}

bool Config::has(const std::string& section, const std::string& key) const {
  return kv_.count(section + "." + key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  const auto it = kv_.find(section + "." + key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_num(const std::string& section, const std::string& key,
                       double fallback) const {
  const auto it = kv_.find(section + "." + key);
  if (it == kv_.end()) return fallback;
  return parse_double(it->second, section + "." + key);
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
  const auto it = kv_.find(section + "." + key);
  if (it == kv_.end()) return fallback;
  const double v = parse_double(it->second, section + "." + key);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-9)
    throw ConfigError(section + "." + key + ": expected an integer, got '" +
                      it->second + "'");
  return i;
}

std::vector<double> Config::get_grid(const std::string& section,
                                     const std::string& key,
                                     const std::string& fallback) const {
  const std::string what = section + "." + key;
  const std::string raw = get(section, key, fallback);
  const auto words = split_ws(raw);
  std::vector<double> g;
  if (words.size() == 1 && (words[0].rfind("log:", 0) == 0 ||
                            words[0].rfind("lin:", 0) == 0)) {
    const bool logspace = words[0][1] == 'o';
    std::string body = words[0].substr(4);
    for (char& c : body)
      if (c == ',') c = ' ';
    const auto parts = split_ws(body);
    if (parts.size() != 3)
      throw ConfigError(what + ": expected " +
                        (logspace ? "log:lo,hi,n" : "lin:lo,hi,n"));
    const double lo = parse_double(parts[0], what);
    const double hi = parse_double(parts[1], what);
    const int n = static_cast<int>(parse_double(parts[2], what));
    if (n < 1) throw ConfigError(what + ": grid needs n >= 1 points");
    if (logspace && !(lo > 0.0 && hi > 0.0))
      throw ConfigError(what + ": log grid needs positive endpoints");
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      g.push_back(logspace ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
  } else {
    for (const auto& w : words) g.push_back(parse_double(w, what));
  }
  if (g.empty()) throw ConfigError(what + ": empty grid");
  for (size_t i = 1; i < g.size(); ++i) {
    const bool up = g[1] > g[0];
    if ((up && g[i] <= g[i - 1]) || (!up && g[i] >= g[i - 1]))
      throw ConfigError(what + ": grid must be strictly monotone");
  }
  return g;
}

std::vector<std::string> Config::get_words(const std::string& section,
                                           const std::string& key,
                                           const std::string& fallback) const {
  auto words = split_ws(get(section, key, fallback));
  if (words.empty())
    throw ConfigError(section + "." + key + ": empty list");
  return words;
}

//------------------------------------------------------------------------------

Material material_from_name(const std::string& name) {
  if (name == "gold") return Material::gold();
  if (name == "gold_undamped") return Material::gold_undamped();
  if (name == "polystyrene") return Material::polystyrene();
  if (name == "vacuum") return Material::vacuum();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string head = name.substr(0, colon);
    const std::string body = name.substr(colon + 1);
    if (head == "constant")
      return Material::constant(parse_double(body, "material '" + name + "'"));
    if (head == "drude") {
      std::string b = body;
      for (char& c : b)
        if (c == ',') c = ' ';
      const auto parts = split_ws(b);
      if (parts.empty() || parts.size() > 2)
        throw ConfigError("material '" + name +
                          "': expected drude:<hbar_wp_eV>[,<hbar_gamma_eV>]");
      const double wp = parse_double(parts[0], "material '" + name + "'");
      const double ga =
          parts.size() > 1 ? parse_double(parts[1], "material '" + name + "'") : 0.0;
      return Material::drude(ev_to_rads(wp), ev_to_rads(ga));
    }
    if (head == "table") return load_tabulated(body);
  }
  throw ConfigError(
      "unknown material '" + name +
      "'; expected gold | gold_undamped | polystyrene | vacuum | constant:<eps> "
      "| drude:<eV>[,<eV>] | table:<path>");
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

//------------------------------------------------------------------------------

void ScanResult::write(std::ostream& os) const {
  for (const auto& h : header) os << "# " << h << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

void ScanResult::write_file(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  write(f);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

//------------------------------------------------------------------------------
// sphere-scan: multipolar shell/coated sphere above a substrate

ScanResult run_sphere_scan(const Config& cfg, int threads) {
  const std::string sec = "sphere-scan";
  const std::string core_n = cfg.get(sec, "core", "vacuum");
  const std::string coat_n = cfg.get(sec, "coat", "gold_undamped");
  const std::string sub_n = cfg.get(sec, "substrate", "gold_undamped");
  const std::string amb_n = cfg.get(sec, "ambient", "vacuum");
  SphereSystem sys;
  sys.R = 1.0;
  sys.core = material_from_name(core_n);
  sys.coat = material_from_name(coat_n);
  sys.substrate = material_from_name(sub_n);
  sys.ambient = material_from_name(amb_n);
  const double delta = cfg.get_num(sec, "delta_over_R", 0.01);
  if (delta < 0.0 || delta > 1.0)
    throw ConfigError("sphere-scan.delta_over_R: must be in [0, 1]");
  sys.delta = delta;
  const auto grid = cfg.get_grid(sec, "d_over_R", "log:0.05,30,13");
  for (double d : grid)
    if (!(d > 0.0)) throw ConfigError("sphere-scan.d_over_R: gaps must be positive");
  const double tol = cfg.get_num(sec, "tol_rel", 1e-4);
  if (!(tol > 0.0)) throw ConfigError("sphere-scan.tol_rel: must be positive");
  const int L_start = clampi(cfg.get_int(sec, "L_max_start", 8), 1, 4096);
  const int L_cap = clampi(cfg.get_int(sec, "L_max_cap", 128), L_start, 4096);
  const double h_rel = cfg.get_num(sec, "force_h_rel", 1e-3);
  if (!(h_rel > 0.0 && h_rel < 1.0))
    throw ConfigError("sphere-scan.force_h_rel: must be in (0, 1)");
  QuadSpec quad;
  quad.nodes = clampi(cfg.get_int(sec, "quad_nodes", 64), 4, 4096);
  quad.max_nodes = clampi(cfg.get_int(sec, "quad_max_nodes", 256), quad.nodes, 8192);
  const double R_SI = cfg.get_num(sec, "R_SI", 1e-8);

  const double w_ref =
      reference_omega(delta > 0.0 ? sys.coat : sys.core, sys.substrate);

  Echo echo;
  echo.section = sec;
  echo.add("core", core_n);
  echo.add("coat", coat_n);
  echo.add("substrate", sub_n);
  echo.add("ambient", amb_n);
  echo.add_num("delta_over_R", delta);
  echo.add("d_over_R", cfg.get(sec, "d_over_R", "log:0.05,30,13"));
  echo.add_num("tol_rel", tol);
  echo.add("L_max_start", std::to_string(L_start));
  echo.add("L_max_cap", std::to_string(L_cap));
  echo.add_num("force_h_rel", h_rel);
  echo.add("quad_nodes", std::to_string(quad.nodes));
  echo.add("quad_max_nodes", std::to_string(quad.max_nodes));
  echo.add_num("R_SI", R_SI);
  echo.add_num("omega_ref_rad_s", w_ref);

  ScanResult r = make_result(
      echo,
      "U_reduced, RF_reduced in hbar*omega_ref; U_J, RF_SI in joules; d in R",
      {"d_over_R", "U_reduced", "U_J", "RF_reduced", "RF_SI", "L_max_used",
       "warn"});
  r.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    std::vector<std::string>& row = r.rows[i];
    row.assign(7, "nan");
    row[0] = fmt_g17(grid[i]);
    row[6] = "";
    try {
      SphereSystem pt = sys;
      pt.z = grid[i];
      const EnergyResult er = converge_Lmax(pt, tol, L_start, L_cap, quad);
      const double F = force(pt, er.L_used, quad, h_rel);
      row[1] = fmt_g17(er.U / (hbar * w_ref));
      row[2] = fmt_g17(er.U);
      row[3] = fmt_g17(F / (hbar * w_ref));
      row[4] = fmt_g17(F);
      row[5] = std::to_string(er.L_used);
      if (!er.converged) row[6] = "Lmax";
    } catch (const std::exception& e) {
      row[5] = "0";
      row[6] = sanitize_warn(std::string("error: ") + e.what());
    }
  });
  finish_result(r);
  return r;
}

//------------------------------------------------------------------------------
// prism-scan: gold prisms above a substrate (cube, standing, lying) + PFA row

namespace {

Mesh prism_mesh(const std::string& shape, double d, int target) {
  double lx, ly, lz;
  if (shape == "cube") {
    lx = ly = lz = 1.0;
  } else if (shape == "standing") {
    lx = ly = 1.0;
    lz = 2.0;
  } else if (shape == "lying") {
    lx = 2.0;
    ly = lz = 1.0;
  } else {
    throw ConfigError("prism-scan: unknown shape '" + shape +
                      "' (cube | standing | lying)");
  }
  const double area = 2.0 * (lx * ly + ly * lz + lz * lx);
  const double h = std::sqrt(area / std::max(1, target));
  const double hb = std::min(h, std::max(d, 0.045));
  auto cnt = [](double dim, double hh) {
    return clampi(static_cast<int>(std::lround(dim / hh)), 1, 24);
  };
  BoxFaces f;
  f.zm = {cnt(lx, hb), cnt(ly, hb)};
  f.zp = {cnt(lx, h), cnt(ly, h)};
  f.xp = f.xm = FaceCounts{cnt(ly, h), cnt(lz, h)};
  f.yp = f.ym = FaceCounts{cnt(lx, h), cnt(lz, h)};
  Mesh m = gen_box_faces(lx, ly, lz, f);
  m.label = shape;
  return m;
}

}  // namespace

ScanResult run_prism_scan(const Config& cfg, int threads) {
  const std::string sec = "prism-scan";
  const std::string body_n = cfg.get(sec, "body", "gold_undamped");
  const std::string sub_n = cfg.get(sec, "substrate", "gold_undamped");
  const std::string amb_n = cfg.get(sec, "ambient", "vacuum");
  const Material body = material_from_name(body_n);
  const Material substrate = material_from_name(sub_n);
  const Material ambient = material_from_name(amb_n);
  const auto shapes = cfg.get_words(sec, "shapes", "cube standing lying");
  for (const auto& s : shapes) prism_mesh(s, 1.0, 100);  // validate names
  const auto grid = cfg.get_grid(sec, "d_over_L", "0.02 0.1 0.5 2 10");
  for (double d : grid)
    if (!(d > 0.0)) throw ConfigError("prism-scan.d_over_L: gaps must be positive");
  const int target = clampi(cfg.get_int(sec, "panel_target", 700), 24, kPanelBudget);
  const double h_rel = cfg.get_num(sec, "force_h_rel", 1e-3);
  if (!(h_rel > 0.0 && h_rel < 1.0))
    throw ConfigError("prism-scan.force_h_rel: must be in (0, 1)");
  QuadSpec quad;
  quad.nodes = clampi(cfg.get_int(sec, "quad_nodes", 24), 4, 512);
  quad.adaptive = cfg.get_int(sec, "quad_adaptive", 0) != 0;
  const double w_ref = reference_omega(body, substrate);

  Echo echo;
  echo.section = sec;
  echo.add("body", body_n);
  echo.add("substrate", sub_n);
  echo.add("ambient", amb_n);
  echo.add("shapes", cfg.get(sec, "shapes", "cube standing lying"));
  echo.add("d_over_L", cfg.get(sec, "d_over_L", "0.02 0.1 0.5 2 10"));
  echo.add("panel_target", std::to_string(target));
  echo.add_num("force_h_rel", h_rel);
  echo.add("quad_nodes", std::to_string(quad.nodes));
  echo.add("quad_adaptive", quad.adaptive ? "1" : "0");
  echo.add_num("omega_ref_rad_s", w_ref);

  ScanResult r = make_result(
      echo,
      "U_reduced, F_reduced, FppA_reduced in hbar*omega_ref (lengths in L); "
      "FppA = base area times the half-space PFA force",
      {"shape", "d_over_L", "N_panels", "U_reduced", "F_reduced", "FppA_reduced",
       "warn"});

  struct Pt {
    std::string shape;
    double d;
    double base_area;
  };
  std::vector<Pt> pts;
  for (const auto& s : shapes)
    for (double d : grid) pts.push_back({s, d, s == "lying" ? 2.0 : 1.0});
  r.rows.resize(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    std::vector<std::string>& row = r.rows[i];
    row.assign(7, "nan");
    row[0] = pts[i].shape;
    row[1] = fmt_g17(pts[i].d);
    row[6] = "";
    try {
      const Mesh m = prism_mesh(pts[i].shape, pts[i].d, target);
      const SubstrateEnergy en =
          energy_object_substrate(m, body, substrate, ambient, pts[i].d, {}, quad);
      const SubstrateForce fr = force_object_substrate(
          m, body, substrate, ambient, pts[i].d, h_rel, {}, quad);
      PlanarPair pp;
      pp.material_1 = body;
      pp.material_2 = substrate;
      pp.ambient = ambient;
      pp.d = pts[i].d;
      const double ep_red = halfspace_energy_per_area(pp, quad) / (hbar * w_ref);
      row[2] = std::to_string(m.size());
      row[3] = fmt_g17(en.U_reduced);
      row[4] = fmt_g17(fr.F_reduced);
      row[5] = fmt_g17(pts[i].base_area * 2.0 * std::abs(ep_red) / pts[i].d);
      if (en.gap_warning) row[6] = "gap";
    } catch (const std::exception& e) {
      row[6] = sanitize_warn(std::string("error: ") + e.what());
    }
  });
  finish_result(r);
  return r;
}

//------------------------------------------------------------------------------
// lateral-scan: two stacked prisms (base L x L, height L/2), displaced in-plane

ScanResult run_lateral_scan(const Config& cfg, int threads) {
  const std::string sec = "lateral-scan";
  const std::string metal_n = cfg.get(sec, "metal", "gold_undamped");
  const Material metal = material_from_name(metal_n);
  if (!metal.is_undamped_drude())
    throw ConfigError("lateral-scan: metal must be an undamped Drude model");
  const double d = cfg.get_num(sec, "d_over_L", 0.1);
  if (!(d > 0.0)) throw ConfigError("lateral-scan.d_over_L: must be positive");
  const auto dirs = cfg.get_words(sec, "directions", "side diagonal");
  for (const auto& s : dirs)
    if (s != "side" && s != "diagonal")
      throw ConfigError("lateral-scan.directions: expected side | diagonal");
  const auto offs = cfg.get_grid(sec, "offset_over_L", "lin:-1,1,17");
  const int nside = clampi(cfg.get_int(sec, "panel_side", 10), 2, 22);

  BoxFaces f;
  f.zp = f.zm = FaceCounts{nside, nside};
  const int nh = std::max(1, nside / 2);
  f.xp = f.xm = FaceCounts{nside, nh};
  f.yp = f.ym = FaceCounts{nside, nh};
  Mesh lower = gen_box_faces(1.0, 1.0, 0.5, f);
  lower.label = "prism-lower";
  Mesh upper0 = lower;
  upper0.label = "prism-upper";
  if (2 * lower.size() > kPanelBudget)
    throw ConfigError("lateral-scan: panel budget exceeded; reduce panel_side");

  Echo echo;
  echo.section = sec;
  echo.add("metal", metal_n);
  echo.add_num("d_over_L", d);
  echo.add("directions", cfg.get(sec, "directions", "side diagonal"));
  echo.add("offset_over_L", cfg.get(sec, "offset_over_L", "lin:-1,1,17"));
  echo.add("panel_side", std::to_string(nside));

  ScanResult r = make_result(
      echo, "U_reduced in hbar*omega_p; offsets in L",
      {"direction", "offset_over_L", "N_panels", "U_reduced", "warn"});

  // the isolated-pair reference is offset-independent; compute it once
  double ref = 0.0;
  bool ref_ok = true;
  std::string ref_err;
  try {
    const Mesh up = translate(upper0, Vector3d(0.0, 0.0, 0.5 + d));
    BemSystem sys = assemble({&lower, &up});
    sys.S.block(0, lower.size(), lower.size(), up.size()).setZero();
    sys.S.block(lower.size(), 0, up.size(), lower.size()).setZero();
    ref = mode_half_sum_pinned(sys.S, sys.n_closed);
  } catch (const std::exception& e) {
    ref_ok = false;
    ref_err = e.what();
  }

  struct Pt {
    std::string dir;
    double l;
  };
  std::vector<Pt> pts;
  for (const auto& dir : dirs)
    for (double l : offs) pts.push_back({dir, l});
  r.rows.resize(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    std::vector<std::string>& row = r.rows[i];
    row.assign(5, "nan");
    row[0] = pts[i].dir;
    row[1] = fmt_g17(pts[i].l);
    row[4] = "";
    try {
      if (!ref_ok) throw std::runtime_error(ref_err);
      const double s = 1.0 / std::sqrt(2.0);
      const Vector3d dirv = pts[i].dir == "side" ? Vector3d(1.0, 0.0, 0.0)
                                                 : Vector3d(s, s, 0.0);
      const Mesh up =
          translate(upper0, Vector3d(0.0, 0.0, 0.5 + d) + pts[i].l * dirv);
      const BemSystem sys = assemble({&lower, &up});
      row[2] = std::to_string(sys.size());
      row[3] = fmt_g17(mode_half_sum_pinned(sys.S, sys.n_closed) - ref);
    } catch (const std::exception& e) {
      row[4] = sanitize_warn(std::string("error: ") + e.what());
    }
  });
  finish_result(r);
  return r;
}

//------------------------------------------------------------------------------
// rotation-scan: two horizontal cylinders, the upper rotated about the
// vertical axis through its center; gap d between facing surfaces

namespace {

struct RotVariant {
  std::string cs;
  double len;
  Mesh lower, upper0;  // upper0 centered at the origin, axis along x
  double lift = 0.0;   // z translation placing the upper body at gap d
};

RotVariant make_rot_variant(const std::string& cs, double len, double d) {
  RotVariant v;
  v.cs = cs;
  v.len = len;
  if (cs == "circle") {
    const double R = 0.5;
    const int nphi = 24, ncap = 5;
    const int nx = std::max(8, static_cast<int>(std::lround(12.0 * len)));
    v.lower = gen_tube_axial(R, len, nphi, nx, ncap, +M_PI / 2.0, 1.5);
    v.upper0 = gen_tube_axial(R, len, nphi, nx, ncap, -M_PI / 2.0, 1.5);
    v.lift = 2.0 * R + d;
  } else if (cs == "square") {
    const int nf = 10, ns = 5;
    auto nlen = [&](int base) {
      return std::max(1, static_cast<int>(std::lround(base * len)));
    };
    BoxFaces f;
    f.zp = f.zm = FaceCounts{nlen(nf), nf};
    f.yp = f.ym = FaceCounts{nlen(ns), ns};
    f.xp = f.xm = FaceCounts{ns, ns};
    v.lower = gen_box_faces(len, 1.0, 1.0, f);
    v.upper0 = v.lower;
    v.lift = 1.0 + d;
  } else {
    throw ConfigError("rotation-scan.cross_sections: expected circle | square");
  }
  v.lower.label = cs + "-lower";
  v.upper0.label = cs + "-upper";
  return v;
}

}  // namespace

ScanResult run_rotation_scan(const Config& cfg, int threads) {
  const std::string sec = "rotation-scan";
  const std::string metal_n = cfg.get(sec, "metal", "gold_undamped");
  const Material metal = material_from_name(metal_n);
  if (!metal.is_undamped_drude())
    throw ConfigError("rotation-scan: metal must be an undamped Drude model");
  const double d = cfg.get_num(sec, "d_over_L", 0.3);
  if (!(d > 0.0)) throw ConfigError("rotation-scan.d_over_L: must be positive");
  const auto css = cfg.get_words(sec, "cross_sections", "circle square");
  const auto lens = cfg.get_grid(sec, "lengths_over_L", "1 2");
  for (double l : lens)
    if (!(l > 0.0))
      throw ConfigError("rotation-scan.lengths_over_L: must be positive");
  const auto thetas = cfg.get_grid(sec, "theta_over_pi", "lin:0,0.5,7");
  for (double t : thetas)
    if (t < 0.0 || t > 0.5)
      throw ConfigError("rotation-scan.theta_over_pi: range is [0, 0.5]");

  Echo echo;
  echo.section = sec;
  echo.add("metal", metal_n);
  echo.add_num("d_over_L", d);
  echo.add("cross_sections", cfg.get(sec, "cross_sections", "circle square"));
  echo.add("lengths_over_L", cfg.get(sec, "lengths_over_L", "1 2"));
  echo.add("theta_over_pi", cfg.get(sec, "theta_over_pi", "lin:0,0.5,7"));

  ScanResult r = make_result(
      echo, "U_reduced in hbar*omega_p; theta about the vertical axis",
      {"cross_section", "length_over_L", "theta_over_pi", "N_panels", "U_reduced",
       "warn"});

  struct Pt {
    int variant;
    double th;
  };
  std::vector<RotVariant> variants;
  std::vector<double> refs;
  std::vector<std::string> ref_err;
  std::vector<Pt> pts;
  for (const auto& cs : css) {
    for (double len : lens) {
      RotVariant v = make_rot_variant(cs, len, d);
      if (v.lower.size() + v.upper0.size() > kPanelBudget)
        throw ConfigError("rotation-scan: panel budget exceeded");
      const int vi = static_cast<int>(variants.size());
      variants.push_back(std::move(v));
      refs.push_back(0.0);
      ref_err.push_back("");
      for (double t : thetas) pts.push_back({vi, t});
    }
  }
  for (size_t vi = 0; vi < variants.size(); ++vi) {
    try {
      const RotVariant& v = variants[vi];
      const Mesh up = translate(v.upper0, Vector3d(0.0, 0.0, v.lift));
      BemSystem sys = assemble({&v.lower, &up});
      sys.S.block(0, v.lower.size(), v.lower.size(), up.size()).setZero();
      sys.S.block(v.lower.size(), 0, up.size(), v.lower.size()).setZero();
      refs[vi] = mode_half_sum_pinned(sys.S, sys.n_closed);
    } catch (const std::exception& e) {
      ref_err[vi] = e.what();
    }
  }
  r.rows.resize(pts.size());
  parallel_for(static_cast<int>(pts.size()), threads, [&](int i) {
    const RotVariant& v = variants[pts[i].variant];
    std::vector<std::string>& row = r.rows[i];
    row.assign(6, "nan");
    row[0] = v.cs;
    row[1] = fmt_g17(v.len);
    row[2] = fmt_g17(pts[i].th);
    row[5] = "";
    try {
      if (!ref_err[pts[i].variant].empty())
        throw std::runtime_error(ref_err[pts[i].variant]);
      const Mesh up = transform(v.upper0, Vector3d(0.0, 0.0, 1.0),
                                pts[i].th * M_PI, Vector3d(0.0, 0.0, v.lift));
      const BemSystem sys = assemble({&v.lower, &up});
      row[3] = std::to_string(sys.size());
      row[4] = fmt_g17(mode_half_sum_pinned(sys.S, sys.n_closed) -
                       refs[pts[i].variant]);
    } catch (const std::exception& e) {
      row[5] = sanitize_warn(std::string("error: ") + e.what());
    }
  });
  finish_result(r);
  return r;
}

//------------------------------------------------------------------------------
// pfa: planar curves, Hamaker constant, PFA sphere force

ScanResult run_pfa(const Config& cfg, int threads) {
  const std::string sec = "pfa";
  const std::string m1_n = cfg.get(sec, "material_1", "gold");
  const std::string m2_n = cfg.get(sec, "material_2", "gold");
  const std::string amb_n = cfg.get(sec, "ambient", "vacuum");
  const Material m1 = material_from_name(m1_n);
  const Material m2 = material_from_name(m2_n);
  const Material ambient = material_from_name(amb_n);
  const auto grid = cfg.get_grid(sec, "d_SI", "log:1e-9,1e-7,9");
  for (double d : grid)
    if (!(d > 0.0)) throw ConfigError("pfa.d_SI: gaps must be positive");
  const double film_delta = cfg.get_num(sec, "film_delta_SI", 2e-9);
  const double sphere_R = cfg.get_num(sec, "sphere_R_SI", 5e-8);
  const double film2d_delta = cfg.get_num(sec, "film2d_delta_SI", 5e-10);
  const double n_areal = cfg.get_num(sec, "film2d_n_areal_SI", -1.0);
  if (!(film_delta > 0.0 && sphere_R > 0.0 && film2d_delta > 0.0))
    throw ConfigError("pfa: film_delta_SI, sphere_R_SI, film2d_delta_SI must be positive");
  QuadSpec quad;
  quad.nodes = clampi(cfg.get_int(sec, "quad_nodes", 64), 4, 4096);

  const double A_H = hamaker_constant(m1, m2, ambient, quad);

  Echo echo;
  echo.section = sec;
  echo.add("material_1", m1_n);
  echo.add("material_2", m2_n);
  echo.add("ambient", amb_n);
  echo.add("d_SI", cfg.get(sec, "d_SI", "log:1e-9,1e-7,9"));
  echo.add_num("film_delta_SI", film_delta);
  echo.add_num("sphere_R_SI", sphere_R);
  echo.add_num("film2d_delta_SI", film2d_delta);
  echo.add_num("film2d_n_areal_SI", n_areal);
  echo.add("quad_nodes", std::to_string(quad.nodes));

  ScanResult r = make_result(
      echo,
      "SI: d in m, E_p in J/m^2, RF_2dfilm in J (R times force), sphere forces "
      "in N",
      {"d_SI", "Ep_halfspace_J_m2", "Ep_film_J_m2", "RF_2dfilm_J", "F_sphere_N",
       "F_sphere_corrected_N", "warn"});
  r.header.push_back("hamaker_A_J = " + fmt_g17(A_H));
  r.header.push_back("A12_J = " + fmt_g17(a12_from_hamaker(A_H)));

  auto ep_curve = [&](double h) {
    PlanarPair pp;
    pp.material_1 = m1;
    pp.material_2 = m2;
    pp.ambient = ambient;
    pp.d = h;
    return halfspace_energy_per_area(pp, quad);
  };

  r.rows.resize(grid.size());
  parallel_for(static_cast<int>(grid.size()), threads, [&](int i) {
    std::vector<std::string>& row = r.rows[i];
    row.assign(7, "nan");
    row[0] = fmt_g17(grid[i]);
    row[6] = "";
    try {
      const double d = grid[i];
      row[1] = fmt_g17(ep_curve(d));
      row[2] = fmt_g17(
          halfspace_film_energy_per_area(d, film_delta, m2, m1, quad));
      row[3] = fmt_g17(film2d_force(sphere_R, d, film2d_delta, n_areal, m2));
      row[4] = fmt_g17(pfa_sphere_force(sphere_R, d, ep_curve, false));
      row[5] = fmt_g17(pfa_sphere_force(sphere_R, d, ep_curve, true));
    } catch (const std::exception& e) {
      row[6] = sanitize_warn(std::string("error: ") + e.what());
    }
  });
  finish_result(r);
  return r;
}

//------------------------------------------------------------------------------

std::string default_config_text() {
  return
      "# vdwshape scan configuration (built-in defaults)\n"
      "# grids: explicit list \"0.1 0.2 0.5\" or log:lo,hi,n / lin:lo,hi,n\n"
      "# materials: gold | gold_undamped | polystyrene | vacuum | constant:<eps>\n"
      "#            | drude:<hbar_wp_eV>[,<hbar_gamma_eV>] | table:<path>\n"
      "\n"
      "[sphere-scan]\n"
      "core = vacuum\n"
      "coat = gold_undamped\n"
      "substrate = gold_undamped\n"
      "ambient = vacuum\n"
      "delta_over_R = 0.01\n"
      "d_over_R = log:0.05,30,13\n"
      "tol_rel = 1e-4\n"
      "L_max_start = 8\n"
      "L_max_cap = 128\n"
      "force_h_rel = 1e-3\n"
      "quad_nodes = 64\n"
      "quad_max_nodes = 256\n"
      "R_SI = 1e-8\n"
      "\n"
      "[prism-scan]\n"
      "body = gold_undamped\n"
      "substrate = gold_undamped\n"
      "ambient = vacuum\n"
      "shapes = cube standing lying\n"
      "d_over_L = 0.02 0.1 0.5 2 10\n"
      "panel_target = 700\n"
      "force_h_rel = 1e-3\n"
      "quad_nodes = 24\n"
      "quad_adaptive = 0\n"
      "\n"
      "[lateral-scan]\n"
      "metal = gold_undamped\n"
      "d_over_L = 0.1\n"
      "directions = side diagonal\n"
      "offset_over_L = lin:-1,1,17\n"
      "panel_side = 10\n"
      "\n"
      "[rotation-scan]\n"
      "metal = gold_undamped\n"
      "d_over_L = 0.3\n"
      "cross_sections = circle square\n"
      "lengths_over_L = 1 2\n"
      "theta_over_pi = lin:0,0.5,7\n"
      "\n"
      "[pfa]\n"
      "material_1 = gold\n"
      "material_2 = gold\n"
      "ambient = vacuum\n"
      "d_SI = log:1e-9,1e-7,9\n"
      "film_delta_SI = 2e-9\n"
      "sphere_R_SI = 5e-8\n"
      "film2d_delta_SI = 5e-10\n"
      "film2d_n_areal_SI = -1\n"
      "quad_nodes = 64\n";
}

}  // namespace vdw
