#include "pdirac/regularization.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace pdirac
{

RegScalar RegScalar::box_power(double L, int n) { return {std::pow(L, n), n, 0}; }

std::string to_string(const RegScalar& r)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g [L^%d, (2pi delta_tau(0))^%d]", r.value, r.power_L, r.power_dtau);
    return buf;
}

std::ostream& operator<<(std::ostream& os, const RegScalar& r) { return os << to_string(r); }

}  // namespace pdirac
