#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace parteq::cli {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;          // exact | ratio | sector | scan | emcheck
  std::string family = "T";
  int s = 1;
  int r = -1;                   // -1: all residues
  long N = -1;
  long stat_n = -1;             // exact: emit the statistic table at this n
  std::vector<long> n_grid;
  std::vector<double> z_abs;
  std::vector<double> z_arg{0.0};
  int a = 1, c = 1;
  std::string zeta = "1/2";     // "j/b"
  std::string a_shift = "1";    // rational "p/q" or decimal
  int order = 0;
  double A = 1.0;
  double x = 0.1;
  double M = 1.0;
  int samples = 64;
  double tol = 1e-9;
  std::string format = "json";  // json | csv
  std::string out;              // empty: stdout
};

/* Report: ordered rows (uniform keys) plus command metadata.  Bigint
 * columns are decimal strings. */
struct Report {
  Json meta;
  Json summary;
  std::vector<Json> rows;
};

Report cmd_exact(const RunConfig& cfg);
Report cmd_ratio(const RunConfig& cfg);
Report cmd_sector(const RunConfig& cfg);
Report cmd_scan(const RunConfig& cfg);
Report cmd_emcheck(const RunConfig& cfg);

Json report_to_json(const std::string& command, const Report& rep);
std::string report_to_csv(const Report& rep);  // RFC 4180, CRLF, header row

/* Dispatches, writes the report, maps errors to exit codes:
 * 0 success, 2 validation error, 3 numerical certification failure. */
int run(const RunConfig& cfg, std::ostream& diag);

}  // namespace parteq::cli
