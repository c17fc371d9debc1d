#include "parteq/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "parteq/asym.hpp"
#include "parteq/emachine.hpp"
#include "parteq/errors.hpp"
#include "parteq/qseries.hpp"
#include "parteq/specialfn.hpp"

namespace parteq::cli {

namespace {

using qseries::Count;
using qseries::FamilySpec;
using specialfn::RootOfUnity;

/* JSON has no non-finite numbers; fall back to their text names. */
Json json_num(double v) {
  if (std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return std::string(buf);
}

long double log_mpz(const mpz_class& v) {
  if (v <= 0) throw std::domain_error("log_mpz: positive value required");
  signed long e2 = 0;
  const double d = mpz_get_d_2exp(&e2, v.get_mpz_t());
  return logl(static_cast<long double>(d)) +
         static_cast<long double>(e2) * logl(2.0L);
}

std::pair<int, int> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
    throw std::invalid_argument("expected a fraction j/b, got '" + text + "'");
  try {
    const int j = std::stoi(text.substr(0, slash));
    const int b = std::stoi(text.substr(slash + 1));
    return {j, b};
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a fraction j/b, got '" + text + "'");
  }
}

double parse_shift(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    const auto [p, q] = parse_fraction(text);
    if (q <= 0) throw std::invalid_argument("shift denominator must be > 0");
    return static_cast<double>(p) / q;
  }
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a shift p/q or decimal, got '" +
                                text + "'");
  }
}

/* Least-squares slope of log(dev) against log(|z|); nullopt-like null when
 * a fit is impossible (fewer than two points or vanishing deviations). */
Json fit_log_slope(const std::vector<double>& absz,
                   const std::vector<double>& dev) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < absz.size(); ++i) {
    if (!(dev[i] > 0) || !std::isfinite(dev[i])) continue;
    const double lx = std::log(absz[i]);
    const double ly = std::log(dev[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double det = m * sxx - sx * sx;
  if (m < 2 || std::abs(det) < 1e-12) return nullptr;
  return (m * sxy - sx * sy) / det;
}

std::vector<std::complex<double>> z_grid(const RunConfig& cfg) {
  if (cfg.z_abs.empty())
    throw std::invalid_argument("at least one --z-abs value is required");
  if (cfg.z_arg.empty())
    throw std::invalid_argument("at least one --z-arg value is required");
  std::vector<std::complex<double>> zs;
  for (const double r : cfg.z_abs) {
    if (!(r > 0)) throw std::domain_error("|z| must be > 0");
    for (const double th : cfg.z_arg) zs.push_back(std::polar(r, th));
  }
  return zs;
}

}  // namespace

Report cmd_exact(const RunConfig& cfg) {
  const FamilySpec& fam = FamilySpec::by_name(cfg.family);
  if (cfg.s < 1) throw std::domain_error("exact: s must be >= 1");
  Report rep;
  rep.meta = {{"family", cfg.family}, {"s", cfg.s}};

  if (cfg.stat_n >= 0) {
    const auto table = qseries::statistic_table(fam, cfg.stat_n);
    rep.meta["n"] = cfg.stat_n;
    for (const auto& [m, cnt] : table.counts)
      rep.rows.push_back({{"m", m}, {"count", cnt.get_str()}});
    rep.summary = {{"n", cfg.stat_n}, {"total", table.total().get_str()}};
    return rep;
  }

  if (cfg.N < 0)
    throw std::invalid_argument("exact requires --N or --stat-n");
  if (cfg.r >= cfg.s)
    throw std::domain_error("exact: residue r out of [0, s)");
  const auto series = qseries::family_series(fam, cfg.s, cfg.N);
  rep.meta["N"] = cfg.N;
  for (long n = 0; n <= cfg.N; ++n) {
    Json row{{"n", n}, {"total", series.total(n).get_str()}};
    if (cfg.r >= 0) {
      row["r"] = cfg.r;
      row["count"] = series.at(n, cfg.r).get_str();
    } else {
      for (int r = 0; r < cfg.s; ++r)
        row["r" + std::to_string(r)] = series.at(n, r).get_str();
    }
    rep.rows.push_back(std::move(row));
  }
  rep.summary = {{"N", cfg.N}, {"s", cfg.s}};
  return rep;
}

Report cmd_ratio(const RunConfig& cfg) {
  const FamilySpec& fam = FamilySpec::by_name(cfg.family);
  if (cfg.s < 1) throw std::domain_error("ratio: s must be >= 1");
  if (cfg.n_grid.empty())
    throw std::invalid_argument("ratio requires at least one --n value");
  long maxn = 0;
  for (const long n : cfg.n_grid) {
    if (n < 1) throw std::domain_error("ratio: n must be >= 1");
    maxn = std::max(maxn, n);
  }
  if (cfg.r >= cfg.s)
    throw std::domain_error("ratio: residue r out of [0, s)");
  /* Fails early for a modulus outside the theorem's scope. */
  (void)asym::thm_leading_log(fam, cfg.s, 1.0);

  const auto series = qseries::family_series(fam, cfg.s, maxn);
  Report rep;
  rep.meta = {{"family", cfg.family}, {"s", cfg.s}, {"N", maxn}};
  double worst = 0;
  for (const long n : cfg.n_grid) {
    const long double lt = asym::thm_leading_log(fam, cfg.s, n);
    const int rlo = cfg.r >= 0 ? cfg.r : 0;
    const int rhi = cfg.r >= 0 ? cfg.r + 1 : cfg.s;
    for (int r = rlo; r < rhi; ++r) {
      const Count& d = series.at(n, r);
      const double ratio =
          d > 0 ? static_cast<double>(expl(log_mpz(d) - lt)) : 0.0;
      const double dev = std::abs(ratio - 1) * std::sqrt(static_cast<double>(n));
      worst = std::max(worst, dev);
      rep.rows.push_back({{"n", n},
                          {"r", r},
                          {"count", d.get_str()},
                          {"ratio", json_num(ratio)},
                          {"abs_dev_sqrt_n", json_num(dev)}});
    }
  }
  rep.summary = {{"max_abs_dev_sqrt_n", json_num(worst)}};
  return rep;
}

Report cmd_sector(const RunConfig& cfg) {
  const auto [j, b] = parse_fraction(cfg.zeta);
  if (b < 1) throw std::domain_error("sector: root order must be >= 1");
  const RootOfUnity zeta(j, b);
  const auto zs = z_grid(cfg);

  Report rep;
  rep.meta = {{"a", cfg.a},
              {"c", cfg.c},
              {"zeta", std::to_string(zeta.j) + "/" + std::to_string(zeta.b)},
              {"tol", cfg.tol}};
  std::vector<double> absz, devs;
  std::string form;
  for (const auto& z : zs) {
    const emachine::SectorPoint zp(z);
    const auto prod =
        asym::fac_product_numeric(cfg.a, cfg.c, zeta, zp, cfg.tol);
    const auto asymv = zeta.is_one() ? asym::fac_asym_one(cfg.a, cfg.c, zp)
                                     : asym::fac_asym_root(cfg.a, cfg.c, zeta, zp);
    form = asymv.form;
    const double dev = std::abs(prod / asymv.value - 1.0);
    absz.push_back(std::abs(z));
    devs.push_back(dev);
    rep.rows.push_back({{"abs_z", std::abs(z)},
                        {"arg_z", std::arg(z)},
                        {"re_prod", json_num(prod.real())},
                        {"im_prod", json_num(prod.imag())},
                        {"re_asym", json_num(asymv.value.real())},
                        {"im_asym", json_num(asymv.value.imag())},
                        {"deviation", json_num(dev)}});
  }
  rep.summary = {{"form", form}, {"slope", fit_log_slope(absz, devs)}};
  return rep;
}

Report cmd_scan(const RunConfig& cfg) {
  const FamilySpec& fam = FamilySpec::by_name(cfg.family);
  const auto scan = asym::circle_scan(fam, cfg.s, cfg.x, cfg.M, cfg.samples);
  Report rep;
  rep.meta = {{"family", scan.family},
              {"s", scan.s},
              {"x", scan.x},
              {"M", scan.M},
              {"A", scan.A}};
  for (const auto& smp : scan.grid) {
    rep.rows.push_back({{"j", smp.j},
                        {"y", smp.y},
                        {"abs_J", json_num(smp.abs_J)},
                        {"bound", json_num(smp.bound)},
                        {"ok", smp.ok},
                        {"note", smp.note}});
  }
  rep.summary = {{"kappa_hat", json_num(scan.kappa_hat)},
                 {"restriction_violated", scan.restriction_violated},
                 {"pass", scan.pass}};
  return rep;
}

Report cmd_emcheck(const RunConfig& cfg) {
  const double shift = parse_shift(cfg.a_shift);
  const int K = std::max(8, cfg.order);
  const auto spec = emachine::laurent_coeffs_f(cfg.a, cfg.c, K);
  const auto zs = z_grid(cfg);

  Report rep;
  rep.meta = {{"a", cfg.a},
              {"c", cfg.c},
              {"a_shift", shift},
              {"order", cfg.order},
              {"A", cfg.A},
              {"tol", cfg.tol}};
  std::vector<double> absz, errs;
  double psi_gamma = 0;
  for (const auto& z : zs) {
    const emachine::SectorPoint zp(z);
    const auto em = emachine::em_asymptotic_sum(spec, shift, zp, cfg.order, cfg.A);
    const qcomplex direct =
        emachine::direct_sum(spec, shift, zp, static_cast<qreal>(cfg.tol));
    psi_gamma = static_cast<double>(em.psi_plus_gamma);
    const qcomplex diff = em.value - direct;
    const double err = static_cast<double>(abs(diff));
    const auto dd = to_complex(direct);
    const auto ee = em.value_d();
    absz.push_back(std::abs(z));
    errs.push_back(err);
    rep.rows.push_back(
        {{"abs_z", std::abs(z)},
         {"arg_z", std::arg(z)},
         {"re_em", json_num(ee.real())},
         {"im_em", json_num(ee.imag())},
         {"re_direct", json_num(dd.real())},
         {"im_direct", json_num(dd.imag())},
         {"abs_err", json_num(err)},
         {"err_scaled", json_num(err / std::pow(std::abs(z), cfg.order + 1))}});
  }
  rep.summary = {{"psi_plus_gamma", json_num(psi_gamma)},
                 {"slope", fit_log_slope(absz, errs)}};
  return rep;
}

Json report_to_json(const std::string& command, const Report& rep) {
  Json out;
  out["command"] = command;
  out["meta"] = rep.meta;
  out["summary"] = rep.summary;
  out["rows"] = Json::array();
  for (const auto& row : rep.rows) out["rows"].push_back(row);
  return out;
}

namespace {

std::string csv_cell(const Json& v) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
    text = buf;
  } else if (v.is_null()) {
    text = "";
  } else {
    text = v.dump();
  }
  if (text.find_first_of(",\"\r\n") != std::string::npos) {
    std::string quoted = "\"";
    for (const char ch : text) {
      quoted += ch;
      if (ch == '"') quoted += '"';
    }
    quoted += '"';
    return quoted;
  }
  return text;
}

}  // namespace

std::string report_to_csv(const Report& rep) {
  std::string out;
  if (rep.rows.empty()) return out;
  bool first = true;
  for (const auto& [key, value] : rep.rows.front().items()) {
    (void)value;
    if (!first) out += ',';
    out += csv_cell(Json(key));
    first = false;
  }
  out += "\r\n";
  for (const auto& row : rep.rows) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      (void)key;
      if (!first) out += ',';
      out += csv_cell(value);
      first = false;
    }
    out += "\r\n";
  }
  return out;
}

int run(const RunConfig& cfg, std::ostream& diag) {
  try {
    Report rep;
    if (cfg.command == "exact")
      rep = cmd_exact(cfg);
    else if (cfg.command == "ratio")
      rep = cmd_ratio(cfg);
    else if (cfg.command == "sector")
      rep = cmd_sector(cfg);
    else if (cfg.command == "scan")
      rep = cmd_scan(cfg);
    else if (cfg.command == "emcheck")
      rep = cmd_emcheck(cfg);
    else
      throw std::invalid_argument("unknown command '" + cfg.command + "'");

    std::string payload;
    if (cfg.format == "json")
      payload = report_to_json(cfg.command, rep).dump(2) + "\n";
    else if (cfg.format == "csv")
      payload = report_to_csv(rep);
    else
      throw std::invalid_argument("unknown format '" + cfg.format + "'");

    if (cfg.out.empty()) {
      std::cout << payload;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file)
        throw std::invalid_argument("cannot open output file '" + cfg.out +
                                    "'");
      file << payload;
    }
    return 0;
  } catch (const certification_error& e) {
    diag << "certification failure: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    diag << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    diag << "invalid request: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    diag << "invalid request: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace parteq::cli
