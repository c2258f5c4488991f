#pragma once

#include <functional>

namespace cmrp {

/// Brent bracketed root find. Requires f(lo) and f(hi) of opposite sign
/// (infinities allowed on the bracket ends). Throws NoRoot otherwise.
double brent(const std::function<double(double)>& f, double lo, double hi,
             double xtol = 1e-14, int max_iter = 200);

}  // namespace cmrp
