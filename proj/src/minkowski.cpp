#include "pdirac/minkowski.hpp"

#include <cmath>

namespace pdirac
{

double FourVector::spatial_norm() const noexcept
{
    return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]);
}

double mass(const FourVector& p)
{
    const double m2 = -dot(p, p);
    if (!(m2 > 0.0)) throw std::domain_error("not subluminal");
    return std::sqrt(m2);
}

int energy_sign(const FourVector& p)
{
    if (p[0] > 0.0) return +1;
    if (p[0] < 0.0) return -1;
    throw std::domain_error("energy sign undefined for p0 = 0");
}

OnShellMomentum::OnShellMomentum(const FourVector& p) : p_(p), m_(mass(p)), phi_(energy_sign(p)) {}

OnShellMomentum::OnShellMomentum(const FourVector& p, double m) : p_(p), m_(m), phi_(energy_sign(p))
{
    if (!(m > 0.0)) throw std::domain_error("mass must be positive");
    const double m2 = -dot(p, p);
    if (std::abs(m2 - m * m) > 1e-12 * std::max(m * m, p[0] * p[0]))
        throw std::domain_error("momentum is off the stated mass shell");
}

OnShellMomentum OnShellMomentum::from_three_momentum(double m, double px, double py, double pz, int sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("energy sign must be +1 or -1");
    const double e = std::sqrt(m * m + px * px + py * py + pz * pz);
    return OnShellMomentum{FourVector{sign * e, px, py, pz}, m};
}

LorentzTransform LorentzTransform::inverse() const
{
    // Λ⁻¹ = g Λᵀ g
    const Eigen::Matrix4d g = Eigen::Vector4d(kMetric[0], kMetric[1], kMetric[2], kMetric[3]).asDiagonal();
    return LorentzTransform{g * matrix_.transpose() * g};
}

double LorentzTransform::rapidity() const { return std::acosh(std::max(1.0, matrix_(0, 0))); }

double LorentzTransform::metric_defect() const
{
    const Eigen::Matrix4d g = Eigen::Vector4d(kMetric[0], kMetric[1], kMetric[2], kMetric[3]).asDiagonal();
    return (matrix_.transpose() * g * matrix_ - g).cwiseAbs().maxCoeff();
}

LorentzTransform boost_along(const std::array<double, 3>& n, double eta)
{
    const double ch = std::cosh(eta);
    const double sh = std::sinh(eta);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = ch;
    for (int i = 0; i < 3; ++i)
    {
        m(0, i + 1) = sh * n[static_cast<std::size_t>(i)];
        m(i + 1, 0) = sh * n[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j)
            m(i + 1, j + 1) += (ch - 1.0) * n[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(j)];
    }
    return LorentzTransform{m};
}

LorentzTransform boost_to(const OnShellMomentum& p)
{
    if (p.phi() < 0) throw std::domain_error("boost defined for positive-energy momenta only");
    const double pn = p.p().spatial_norm();
    if (pn == 0.0) return LorentzTransform{};
    const std::array<double, 3> n{p.p()[1] / pn, p.p()[2] / pn, p.p()[3] / pn};
    // asinh keeps full precision for small |p|/m where acosh(E/m) would not.
    return boost_along(n, std::asinh(pn / p.m()));
}

std::complex<double> position_momentum_commutator(const FourVector& k, const FourVector& x, int mu, int nu,
                                                  double h)
{
    using cd = std::complex<double>;
    const cd i{0.0, 1.0};
    auto mode = [&](const FourVector& y) { return std::exp(i * dot(k, y)); };
    auto x_mode = [&](const FourVector& y) { return y[mu] * mode(y); };

    // p^nu = (1/i) g^{nu nu} ∂/∂x^nu
    auto p_nu = [&](auto&& f) {
        FourVector up = x, dn = x;
        up[nu] += h;
        dn[nu] -= h;
        return metric(nu, nu) * (f(up) - f(dn)) / (2.0 * h) / i;
    };

    const cd xp = x[mu] * p_nu(mode);
    const cd px = p_nu(x_mode);
    return (xp - px) / mode(x);
}

}  // namespace pdirac
