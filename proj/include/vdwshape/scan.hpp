#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdwshape/dielectric.hpp"

namespace vdw {

inline constexpr const char* kVersion = "vdwshape 1.0.0";

// Configuration and usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

//------------------------------------------------------------------------------
// Plain "key = value" configuration grouped in [section] blocks; '#' and ';'
// start comments.  Values are kept verbatim; typed access below.

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text,
                           const std::string& origin = "<config>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key,
                 double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;

  // grid values: explicit list "0.1 0.2 0.5", or log:lo,hi,n / lin:lo,hi,n;
  // must be strictly monotone and non-empty
  std::vector<double> get_grid(const std::string& section, const std::string& key,
                               const std::string& fallback) const;

  // whitespace-separated word list
  std::vector<std::string> get_words(const std::string& section,
                                     const std::string& key,
                                     const std::string& fallback) const;

 private:
  std::map<std::string, std::string> kv_;  // "section.key" -> value
  std::string origin_;
};

// gold | gold_undamped | polystyrene | vacuum | constant:<eps> |
// drude:<hbar_wp_eV>[,<hbar_gamma_eV>] | table:<path>
Material material_from_name(const std::string& name);

std::string fmt_g17(double v);

//------------------------------------------------------------------------------
// A finished scan: self-describing '#' header, one row per grid point.  Failed
// points keep their row (values "nan", warn set); they never abort the scan.

struct ScanResult {
  std::vector<std::string> header;  // comment lines, no leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  int n_points = 0;
  int n_failed = 0;

  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;
};

ScanResult run_sphere_scan(const Config& cfg, int threads);
ScanResult run_prism_scan(const Config& cfg, int threads);
ScanResult run_lateral_scan(const Config& cfg, int threads);
ScanResult run_rotation_scan(const Config& cfg, int threads);
ScanResult run_pfa(const Config& cfg, int threads);

// the built-in defaults for every subcommand, as parseable config text
std::string default_config_text();

}  // namespace vdw
