#pragma once

#include <iosfwd>
#include <string>

namespace pdirac
{

/// Real number tagged with how many powers of the box edge L and of the proper-time
/// regulator 2πδ(0) it carries.
///
/// Factors of L are multiplied into value numerically and only audited by power_L.
/// The δ(0) regulator is never evaluated: it exists only as power_dtau.
struct RegScalar
{
    double value = 1.0;
    int power_L = 0;
    int power_dtau = 0;

    static RegScalar number(double v) { return {v, 0, 0}; }
    /// L^n, evaluated.
    static RegScalar box_power(double L, int n);
    /// (2π)⁴δ⁴(0) = L⁴ for a space-time box of edge L.
    static RegScalar four_volume(double L) { return box_power(L, 4); }
    /// (2πδ(0))^n in proper time; symbolic.
    static RegScalar tau_interval(int n = 1) { return {1.0, 0, n}; }

    bool regulator_free() const noexcept { return power_L == 0 && power_dtau == 0; }

    RegScalar& operator*=(const RegScalar& o) noexcept
    {
        value *= o.value;
        power_L += o.power_L;
        power_dtau += o.power_dtau;
        return *this;
    }
    RegScalar& operator/=(const RegScalar& o) noexcept
    {
        value /= o.value;
        power_L -= o.power_L;
        power_dtau -= o.power_dtau;
        return *this;
    }
    friend RegScalar operator*(RegScalar a, const RegScalar& b) noexcept { return a *= b; }
    friend RegScalar operator/(RegScalar a, const RegScalar& b) noexcept { return a /= b; }
    friend RegScalar operator*(RegScalar a, double s) noexcept
    {
        a.value *= s;
        return a;
    }
    friend RegScalar operator*(double s, RegScalar a) noexcept { return a * s; }
};

std::string to_string(const RegScalar& r);
std::ostream& operator<<(std::ostream& os, const RegScalar& r);

}  // namespace pdirac
