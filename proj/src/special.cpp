#include "special.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <mutex>

#include "cmrp/errors.hpp"

namespace cmrp::special {

namespace {

void disable_gsl_abort() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

double check(const gsl_sf_result& r, int status, const char* what) {
  // Underflow means the value is indistinguishable from zero at double
  // precision, which is a valid answer for a tail probability.
  if (status == GSL_EUNDRFLW) return 0.0;
  if (status != GSL_SUCCESS) {
    throw DomainError(std::string("special function failure in ") + what + ": " +
                      gsl_strerror(status));
  }
  return r.val;
}

}  // namespace

double gamma_p(double a, double x) {
  disable_gsl_abort();
  if (x <= 0.0) return 0.0;
  gsl_sf_result r;
  int status = gsl_sf_gamma_inc_P_e(a, x, &r);
  return check(r, status, "gamma_inc_P");
}

double gamma_q(double a, double x) {
  disable_gsl_abort();
  if (x <= 0.0) return 1.0;
  gsl_sf_result r;
  int status = gsl_sf_gamma_inc_Q_e(a, x, &r);
  return check(r, status, "gamma_inc_Q");
}

double beta_inc(double a, double b, double x) {
  disable_gsl_abort();
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  gsl_sf_result r;
  int status = gsl_sf_beta_inc_e(a, b, x, &r);
  return check(r, status, "beta_inc");
}

}  // namespace cmrp::special
