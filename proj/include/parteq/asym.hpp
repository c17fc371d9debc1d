#pragma once

#include <complex>
#include <string>
#include <vector>

#include "parteq/emachine.hpp"
#include "parteq/qseries.hpp"
#include "parteq/specialfn.hpp"

namespace parteq::asym {

using emachine::SectorPoint;
using qseries::FamilySpec;
using specialfn::RootOfUnity;

/* Truncated infinite product (zeta q^a; q^c)_inf at q = e^{-z}, with a
 * certified relative tail bound <= tol. */
std::complex<double> fac_product_numeric(int a, int c, const RootOfUnity& zeta,
                                         const SectorPoint& z,
                                         double tol = 1e-12);

struct AsymValue {
  std::complex<double> value;
  std::complex<double> log_value;
  std::string form;  // human-readable shape of the formula used
};

/* z -> 0 leading forms of the same product (zeta q^a; q^c)_inf. */
AsymValue fac_asym_root(int a, int c, const RootOfUnity& zeta,
                        const SectorPoint& z);      // zeta != 1
AsymValue fac_asym_one(int a, int c, const SectorPoint& z);

/* Major-arc form of the full generating product J(zeta; e^{-z}), composed
 * from the factor asymptotics.  Requires the order b of zeta >= 2 and the
 * family admissibility (E: 3 does not divide b; G: 2 does not divide b). */
AsymValue major_arc_J(const FamilySpec& fam, const RootOfUnity& zeta,
                      const SectorPoint& z);

/* Major-arc form of the residue generating function H(r, s; e^{-z})
 * (r-independent to leading order).  Admissibility as for the theorem:
 * E: 3 does not divide s; G: 2 does not divide s. */
AsymValue major_arc_H(const FamilySpec& fam, int s, const SectorPoint& z);

/* Parameters of the expansion H ~ alpha_0 z^B e^{A/z} (alpha entries
 * beyond 0 are not derived for the built-in families). */
struct WrightParams {
  double A;
  double B;
  std::vector<std::complex<double>> alpha;
};

WrightParams family_wright_params(const FamilySpec& fam, int s);
double family_rate(const FamilySpec& fam);  // the constant A

/* Coefficient c_{j,r} of the circle-method expansion; the Gamma ratio
 * Gamma(u+r)/Gamma(u-r) is computed as a product of 2r linear factors,
 * which extends it across poles of the denominator. */
double wright_cjr(int j, int r, double A, double B);

/* n^{(-2B-3)/4} e^{2 sqrt(A n)} sum_{r <= order} p_r n^{-r/2} with
 * p_r = sum_j alpha_j c_{j,r-j}; order < alpha.size(). */
double wright_expansion(const WrightParams& p, double n, int order);

/* Closed-form leading term of the count of residue r mod s at size n
 * (independent of r); family admissibility as in major_arc_H. */
double thm_leading(const FamilySpec& fam, int r, int s, double n);
long double thm_leading_log(const FamilySpec& fam, int s, double n);

struct ScanSample {
  int j;                   // residue-root index, zeta_s^j
  double y;                // Im z
  std::complex<double> z;
  double abs_J;
  double bound;            // fitted envelope e^{(A - kappa_hat)/x}
  bool ok;
  std::string note;
};

struct ScanReport {
  std::string family;
  int s;
  double x, M, A;
  std::vector<ScanSample> grid;
  double kappa_hat;        // A - x * max log|J| over the minor arc
  bool restriction_violated;
  bool pass;               // kappa_hat > 0
};

/* Samples |J(zeta_s^j; e^{-(x+iy)})| for y in [Mx, pi], all j, and reports
 * the exponential-rate gap kappa_hat.  Inadmissible s runs but is flagged.
 * Per-sample numerical failures are recorded, not fatal. */
ScanReport circle_scan(const FamilySpec& fam, int s, double x, double M,
                       int samples);

}  // namespace parteq::asym
